import io
import sys
from typing import Iterable, Optional, TextIO

import numpy as np
import pandas as pd

# 17 significant digits, enough to round-trip an IEEE double.
CSV_FLOAT_FORMAT = "%.16e"


def frame_to_csv(frame: pd.DataFrame) -> str:
    """
    Render a report table as CSV text.

    The output depends only on the frame contents: header row, '.' decimal
    separator, scientific notation with 17 significant digits and '\\n' line
    endings, so two runs with the same inputs give byte-identical files.
    """
    buffer = io.StringIO()
    frame.to_csv(
        buffer,
        index=False,
        float_format=CSV_FLOAT_FORMAT,
        lineterminator="\n",
    )
    return buffer.getvalue()


def write_csv(frame: pd.DataFrame, path: Optional[str], stream: Optional[TextIO] = None) -> None:
    """Write `frame` to `path`, or to `stream` (stdout by default) when no path is given."""
    text = frame_to_csv(frame)
    if path is None:
        (stream or sys.stdout).write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def fit_loglog_slope(xs: Iterable[float], ys: Iterable[float]) -> float:
    """Least-squares slope of log(y) against log(x); NaN when any value is not positive."""
    x = np.asarray(list(xs), dtype=float)
    y = np.asarray(list(ys), dtype=float)
    if x.size < 2 or np.any(x <= 0) or np.any(y <= 0):
        return float("nan")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def geometric_sweep(points: int = 8, start_exponent: int = 1) -> np.ndarray:
    """Values 2^-start .. 2^-(start+points-1)."""
    return 2.0 ** -np.arange(start_exponent, start_exponent + points)


def seeded_rng(seed: Optional[int]) -> np.random.Generator:
    return np.random.default_rng(seed)


def numerical_rank(matrix: np.ndarray, tol: float = 1e-9, scale: float = 0.0) -> int:
    """
    Rank decided by singular values against ``tol * max(s_max, scale)``.

    ``scale`` is an absolute floor for matrices built from a larger object
    (the Killing form of a structure tensor c uses ||c||^2), so rounding
    noise in an all-but-zero matrix does not count as rank. The zero matrix
    (and an empty one) has rank 0.
    """
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0
    singular_values = np.linalg.svd(matrix, compute_uv=False)
    if singular_values.size == 0 or singular_values[0] == 0.0:
        return 0
    threshold = tol * max(float(singular_values[0]), float(scale))
    return int(np.sum(singular_values > threshold))
