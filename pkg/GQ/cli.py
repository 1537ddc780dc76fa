# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

"""
`gq` command line: algebra checks, contraction paths, the oscillator
correspondence, space-time residuals, quantification and Casimir reports.

Exit codes: 0 when every check passes, 1 when a mathematical invariant fails,
2 on usage, parse or IO errors.
"""

import logging
import sys
from itertools import product
from typing import Callable, Dict, List, Optional

import numpy as np
import pandas as pd
from scipy.linalg import expm

from GQ.algebra.core import adjoint_rep, classify, load_algebra
from GQ.algebra.homotopy import named_path, path_report
from GQ.quantification.fock import green_function, quantify, relation_defect, wick_expansion
from GQ.representation.core import rep_defect, so3_irrep
from GQ.representation.invariants import casimir_report, char_poly_invariants
from GQ.representation.oscillator import QuantumConstants, correspondence_table, strictly_decreasing
from GQ.stime.invariants import commuting_set_spectrum, lambda2_check, quantum_number_report, wave_report
from GQ.stime.operators import residual_scaling, stime_operators
from GQ.utils.config import RunConfig, check_config, config
from GQ.utils.logging import logger
from GQ.utils.misc import seeded_rng, write_csv

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2

ORDER_TOL = 0.05
WICK_TOL = 1e-9
CENTRALITY_TOL = 1e-8
CHAR_POLY_TOL = 1e-7
CONJUGATIONS = 10

QUANTIFY_COLUMNS = ["sigma", "cutoff", "indices", "re", "im"]


def _verdict(ok: bool) -> int:
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_check(cfg: RunConfig) -> int:
    L = load_algebra(cfg.input_path)
    report = classify(L)
    print(f"algebra: {L.name}")
    print(f"dim: {L.dim}")
    print(f"antisymmetry_defect: {report.defects['antisymmetry']:.3e}")
    print(f"jacobi_defect: {report.defects['jacobi']:.3e}")
    print(f"killing_rank: {report.killing_rank}")
    print(f"center: {report.center_dim}")
    print(f"derived_dim: {report.derived_dim}")
    print(f"semisimple: {str(report.semisimple).lower()}")
    if cfg.output_path:
        write_csv(pd.DataFrame([{"name": L.name, "dim": L.dim, **report.as_row()}]), cfg.output_path)
    return _verdict(max(report.defects.values()) <= cfg.tol)


def cmd_contract(cfg: RunConfig) -> int:
    path = named_path(cfg.path, cfg.signature, cfg.modes)
    frame = path_report(path, cfg.samples, progress=cfg.logging_info).to_frame()
    write_csv(frame, cfg.output_path)
    return _verdict(float(frame["jacobi_defect"].max()) <= cfg.tol)


def cmd_oscillator(cfg: RunConfig) -> int:
    frame = correspondence_table(cfg.two_ls, cfg.k)
    write_csv(frame, cfg.output_path)
    spacing_ok = bool(np.all(np.abs(frame["spacing"] - 1.0) <= 1e-8))
    return _verdict(strictly_decreasing(frame["err"].tolist()) and spacing_ok)


def cmd_stime(cfg: RunConfig) -> int:
    k = cfg.k
    rep_kind = "defining" if k == 1 else "sym_power"
    table = residual_scaling(cfg.signature, k, progress=cfg.logging_info)

    ok = True
    for _, row in table.iterrows():
        if row["declared_order"] == 0:
            ok &= row["norm"] <= cfg.tol
        else:
            ok &= abs(row["fitted_order"] - row["declared_order"]) <= ORDER_TOL

    ops = stime_operators(cfg.signature, QuantumConstants.for_stime(k), rep_kind, k)
    extra = []
    commuting = commuting_set_spectrum(ops)
    extra.append({"relation": "commuting_set", "norm": commuting.defect, "small_param": "exact", "declared_order": 0})
    ok &= commuting.defect <= cfg.tol
    numbers = quantum_number_report(ops)
    extra.append({"relation": "quantum_number_N", "norm": numbers["N"], "small_param": "report", "declared_order": float("nan")})
    if ops.signature == "compact":
        lam = lambda2_check(ops)
        extra.append({"relation": "lambda2_ratio", "norm": lam.ratio, "small_param": "report", "declared_order": float("nan")})
        extra.append({"relation": "lambda2_cross_term", "norm": lam.cross_term, "small_param": "report", "declared_order": float("nan")})
        extra.append({"relation": "lambda2_mixed_xy", "norm": lam.mixed_xy, "small_param": "exact", "declared_order": 0})
        ok &= lam.mixed_xy <= cfg.tol * max(1.0, abs(lam.value))
        wave = wave_report(ops)
        extra.append({"relation": "wave_anti_hermitian", "norm": wave.anti_hermitian_defect, "small_param": "exact", "declared_order": 0})
        ok &= wave.anti_hermitian_defect <= cfg.tol

    frame = pd.concat([table, pd.DataFrame(extra, columns=table.columns)], ignore_index=True)
    write_csv(frame, cfg.output_path)
    return _verdict(bool(ok))


def cmd_quantify(cfg: RunConfig) -> int:
    sys_ = quantify(cfg.sigma, cfg.modes, cfg.cutoff)
    defect = relation_defect(sys_)
    labels = list(sys_.io.labels)

    rows = []
    wick_gap = 0.0
    for n in (2, 4):
        for indices in product(labels, repeat=n):
            g = green_function(sys_, indices)
            rows.append({"sigma": cfg.sigma, "cutoff": cfg.cutoff, "indices": " ".join(indices), "re": g.real, "im": g.imag})
            if n == 4 and (cfg.sigma == "-" or cfg.cutoff >= 2):
                wick_gap = max(wick_gap, abs(g - wick_expansion(sys_, indices)))
    write_csv(pd.DataFrame(rows, columns=QUANTIFY_COLUMNS), cfg.output_path)
    logger.info(f"quantify sigma={cfg.sigma}: relation defect {defect:.3e}, wick gap {wick_gap:.3e}")
    return _verdict(defect <= cfg.tol and wick_gap <= WICK_TOL)


def cmd_casimir(cfg: RunConfig) -> int:
    L = load_algebra(cfg.input_path)
    rep = so3_irrep(cfg.two_l[0], L) if cfg.two_l else adjoint_rep(L)
    defect = rep_defect(rep)
    report = casimir_report(rep)

    rng = seeded_rng(cfg.seed)
    coeffs = rng.standard_normal(L.dim)
    base = np.array(char_poly_invariants(rep, coeffs))
    worst = 0.0
    for _ in range(CONJUGATIONS):
        g = expm(rep.element(rng.standard_normal(L.dim)))
        conjugated = g @ rep.element(coeffs) @ np.linalg.inv(g)
        p = np.poly(conjugated) * (-1) ** rep.dim_rep
        moved = np.array([p[rep.dim_rep - n] for n in range(rep.dim_rep + 1)])
        worst = max(worst, float(np.max(np.abs(moved - base)) / max(1.0, float(np.max(np.abs(base))))))

    print(f"rep_dim: {rep.dim_rep}")
    print(f"rep_defect: {defect:.3e}")
    print(f"centrality_defect: {report.centrality_defect:.3e}")
    print(f"char_poly_invariance: {worst:.3e}")
    rows = [
        {"quantity": "rep_dim", "value": float(rep.dim_rep)},
        {"quantity": "rep_defect", "value": defect},
        {"quantity": "centrality_defect", "value": report.centrality_defect},
        {"quantity": "scalar_defect", "value": report.scalar_defect},
        {"quantity": "char_poly_invariance", "value": worst},
    ]
    rows += [{"quantity": f"casimir_block_{j}", "value": value} for j, (value, _) in enumerate(report.blocks)]
    write_csv(pd.DataFrame(rows, columns=["quantity", "value"]), cfg.output_path)
    scale = max(1.0, rep.scale())
    return _verdict(
        defect <= cfg.tol * scale and report.relative_centrality <= CENTRALITY_TOL and worst <= CHAR_POLY_TOL
    )


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "check": cmd_check,
    "contract": cmd_contract,
    "oscillator": cmd_oscillator,
    "stime": cmd_stime,
    "quantify": cmd_quantify,
    "casimir": cmd_casimir,
}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        cfg = config(argv)
    except SystemExit as e:
        # --help
        return int(e.code or 0)
    except ValueError as e:
        print(f"gq: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        check_config(cfg)
        code = COMMANDS[cfg.command](cfg)
    except (ValueError, OSError) as e:
        print(f"gq {cfg.command}: error: {e}", file=sys.stderr)
        code = EXIT_USAGE

    events = logging.getLogger("GQ.event")
    if events.handlers and hasattr(events, "event"):
        events.event(f"{cfg.command} exit={code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
