# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

import os
import argparse
from typing import List, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .logging import logger, setup_console_logging, setup_events_logger

COMMANDS = ("check", "contract", "oscillator", "stime", "quantify", "casimir")
DEFAULT_TOL = 1e-10
DEFAULT_TWO_LS = (32, 64, 128, 256)
TOL_ENV = "GQ_TOL"


def default_tolerance() -> float:
    """GQ_TOL from the environment (or a .env file in the working directory), else 1e-10."""
    load_dotenv(dotenv_path=os.path.join(os.getcwd(), ".env"))
    raw = os.getenv(TOL_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{TOL_ENV}={raw!r} is not a number") from None
    if value <= 0:
        raise ValueError(f"{TOL_ENV} must be positive, got {value}")
    return value


class RunConfig(BaseModel):
    """Validated run configuration for one CLI command."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Literal["check", "contract", "oscillator", "stime", "quantify", "casimir"]
    input_path: Optional[str] = None
    path: Literal["segal", "stime", "boson"] = "segal"
    samples: int = Field(9, ge=2)
    signature: str = "compact"
    two_l: Optional[List[int]] = None
    k: int = Field(4, ge=1)
    modes: int = Field(2, ge=1)
    cutoff: int = Field(4, ge=1)
    sigma: Literal["+", "-", "0"] = "+"
    tol: float = Field(DEFAULT_TOL, gt=0)
    seed: int = 0
    output_path: Optional[str] = None
    logging_dir: str = "~/.gq/logs"
    logging_debug: bool = False
    logging_info: bool = False
    dont_save_events: bool = False
    events_retention_size: int = Field(16 * 1024 * 1024, gt=0)

    @property
    def two_ls(self) -> List[int]:
        return list(self.two_l) if self.two_l is not None else list(DEFAULT_TWO_LS)

    @field_validator("signature")
    @classmethod
    def _known_signature(cls, signature: str) -> str:
        from GQ.algebra.named import canonical_signature

        canonical_signature(signature)
        return signature

    @field_validator("two_l")
    @classmethod
    def _two_l_values(cls, two_l: Optional[List[int]]) -> Optional[List[int]]:
        if two_l is None:
            return two_l
        if not two_l:
            raise ValueError("--two-l needs at least one value")
        if any(v < 0 for v in two_l):
            raise ValueError(f"--two-l values must be non-negative, got {two_l}")
        return two_l

    @model_validator(mode="after")
    def _command_ranges(self) -> "RunConfig":
        if self.command == "oscillator" and 4 * self.k > min(self.two_ls):
            raise ValueError(f"oscillator needs k <= min(two_l)/4, got k={self.k}, two_l={self.two_ls}")
        if self.command in ("check", "casimir") and not self.input_path:
            raise ValueError(f"{self.command} needs --input")
        return self


def add_args(parser: argparse.ArgumentParser) -> None:
    """
    Adds the run arguments to the parser.
    """
    parser.add_argument("command", choices=COMMANDS, help="What to run.")

    parser.add_argument("--input", dest="input_path", type=str, help="Algebra definition file (JSON).", default=None)
    parser.add_argument("--path", type=str, help="Homotopy path: segal, stime or boson.", default="segal")
    parser.add_argument("--samples", type=int, help="Number of s samples along the path.", default=9)
    parser.add_argument(
        "--signature",
        type=str,
        help="Metric signature: compact, 5-1 (minkowski) or 3-3 (split).",
        default="compact",
    )
    parser.add_argument(
        "--two-l",
        dest="two_l",
        type=int,
        nargs="+",
        help="One or more values of 2l for so(3) irreps.",
        default=None,
    )
    parser.add_argument("--k", type=int, help="Corner size (oscillator) or symmetric power (stime).", default=4)
    parser.add_argument("--modes", type=int, help="Number of modes N (boson path, quantify).", default=2)
    parser.add_argument("--cutoff", type=int, help="Occupation or word-length cutoff for quantify.", default=4)
    parser.add_argument("--sigma", type=str, help="Quantification statistics: +, - or 0.", default="+")
    parser.add_argument("--tol", type=float, help=f"Tolerance; overrides {TOL_ENV}.", default=None)
    parser.add_argument("--seed", type=int, help="Seed for randomized checks.", default=0)
    parser.add_argument("--out", dest="output_path", type=str, help="CSV destination (stdout if omitted).", default=None)

    parser.add_argument("--logging.dir", dest="logging_dir", type=str, help="Directory for events.log.", default="~/.gq/logs")
    parser.add_argument("--logging.debug", dest="logging_debug", action="store_true", help="Debug console output.", default=False)
    parser.add_argument("--logging.info", dest="logging_info", action="store_true", help="Info console output.", default=False)
    parser.add_argument(
        "--logging.dont_save_events",
        dest="dont_save_events",
        action="store_true",
        help="If set, we dont save events to a log file.",
        default=False,
    )
    parser.add_argument(
        "--logging.events_retention_size",
        dest="events_retention_size",
        type=int,
        help="Events retention size in bytes.",
        default=16 * 1024 * 1024,
    )


class ArgumentError(ValueError):
    """Raised instead of exiting when the command line does not parse."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgumentError(message)


def parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gq", description="General quantization toolkit.")
    add_args(p)
    return p


def config(argv: Optional[List[str]] = None) -> RunConfig:
    """
    Parses `argv` into a validated RunConfig. Raises ValueError on any bad value.
    """
    namespace = vars(parser().parse_args(argv))
    if namespace["tol"] is None:
        namespace["tol"] = default_tolerance()
    return RunConfig(**namespace)


def check_config(config: RunConfig) -> None:
    r"""Sets up console logging and, unless disabled, the events log."""
    setup_console_logging(config.logging_debug, config.logging_info)

    if not config.dont_save_events:
        full_path = os.path.expanduser(config.logging_dir)
        os.makedirs(full_path, exist_ok=True)
        setup_events_logger(full_path, config.events_retention_size)
        logger.debug(f"events log in {full_path}")
