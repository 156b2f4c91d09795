"""TOML run configurations and matrix files for the command-line tools.

A census config holds one system instance plus enumeration controls::

    curve = "Q"                # or "Q(t)"
    alphas = ["1"]             # element strings
    S = ["inf"]                # place ids
    epsilon = 1.0
    A = "1/8"                  # exact rational ...
    # logA = -2.079441         # ... or give log A directly
    height_bound = 2.0794415416798357
    [theta]
    inf = 3.0

Optional keys: ``coefficient_cap`` (Q(t) enumeration, default 2),
``precision_bits`` (default 128), ``tolerance`` (default 1e-9),
``max_candidates`` (default 2000000), ``workers`` (default 1).

A matrix file for the standalone checkers holds rows of element strings::

    curve = "Q(t)"
    alphas = [["1", "1"]]      # n rows of N entries
    betas = ["t", "t^300"]
    [theta]
    t = 0.05
    [partition]
    1 = ["t"]                  # row index -> place ids
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from .curves import AdelicCurve, curve_by_name
from .errors import ParseError, SchemaError
from .gaps import GapMatrix
from .system import SystemSpec, make_spec

__all__ = ["RunConfig", "MatrixConfig", "load_config", "load_matrix"]

DEFAULT_PRECISION_BITS = 128
DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_CANDIDATES = 2_000_000


@dataclass
class RunConfig:
    curve: str
    alphas: List[str]
    places: List[str]
    theta: Dict[str, float]
    epsilon: float
    a_string: Optional[str]
    log_a: Optional[float]
    height_bound: float
    coefficient_cap: Optional[int] = None
    precision_bits: int = DEFAULT_PRECISION_BITS
    tolerance: float = DEFAULT_TOLERANCE
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    workers: int = 1

    def build_spec(self) -> Tuple[AdelicCurve, SystemSpec]:
        curve = curve_by_name(self.curve)
        spec = make_spec(
            curve,
            self.alphas,
            self.places,
            self.theta,
            epsilon=self.epsilon,
            A=self.a_string,
            log_A=self.log_a,
            tolerance=self.tolerance,
        )
        return curve, spec

    def echo(self) -> Dict:
        """Deterministic dictionary image for report bodies."""
        return {
            "curve": self.curve,
            "alphas": list(self.alphas),
            "S": list(self.places),
            "theta": {k: self.theta[k] for k in sorted(self.theta)},
            "epsilon": self.epsilon,
            "A": self.a_string,
            "logA": self.log_a,
            "height_bound": self.height_bound,
            "coefficient_cap": self.coefficient_cap,
            "precision_bits": self.precision_bits,
            "tolerance": self.tolerance,
            "max_candidates": self.max_candidates,
        }


def _load_toml(path: str) -> Dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ParseError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_config(path: str) -> RunConfig:
    """Parse and schema-check a census config; collects all field errors."""
    data = _load_toml(path)
    problems: List[str] = []

    def take(name, types, required=True, default=None):
        if name not in data:
            if required:
                problems.append(f"missing field {name!r}")
            return default
        value = data.pop(name)
        if not isinstance(value, types):
            problems.append(f"field {name!r} has invalid type {type(value).__name__}")
            return default
        return value

    curve = take("curve", str)
    alphas = take("alphas", list)
    places = take("S", list)
    theta = take("theta", dict)
    epsilon = take("epsilon", (int, float))
    height_bound = take("height_bound", (int, float))
    a_string = data.pop("A", None)
    log_a = data.pop("logA", None)
    coefficient_cap = take("coefficient_cap", int, required=False)
    precision_bits = take("precision_bits", int, required=False, default=DEFAULT_PRECISION_BITS)
    tolerance = take("tolerance", (int, float), required=False, default=DEFAULT_TOLERANCE)
    max_candidates = take("max_candidates", int, required=False, default=DEFAULT_MAX_CANDIDATES)
    workers = take("workers", int, required=False, default=1)
    for leftover in data:
        problems.append(f"unknown field {leftover!r}")

    if curve is not None and curve not in ("Q", "Q(t)"):
        problems.append("curve must be 'Q' or 'Q(t)'")
    if alphas is not None and (not alphas or not all(isinstance(a, str) for a in alphas)):
        problems.append("alphas must be a nonempty list of element strings")
    if places is not None and (not places or not all(isinstance(p, str) for p in places)):
        problems.append("S must be a nonempty list of place ids")
    if theta is not None and not all(isinstance(v, (int, float)) for v in theta.values()):
        problems.append("theta values must be numbers")
    if a_string is None and log_a is None:
        problems.append("one of 'A' or 'logA' is required")
    if a_string is not None and log_a is not None:
        problems.append("give only one of 'A' and 'logA'")
    if a_string is not None:
        if not isinstance(a_string, (str, int)):
            problems.append("A must be a rational string (e.g. \"1/8\") or an integer")
        else:
            try:
                if Fraction(str(a_string)) <= 0:
                    problems.append("A must be positive")
            except (ValueError, ZeroDivisionError):
                problems.append(f"A is not a rational: {a_string!r}")
    if log_a is not None and not isinstance(log_a, (int, float)):
        problems.append("logA must be a number")
    if height_bound is not None and height_bound < 0:
        problems.append("height_bound must be nonnegative")
    if workers is not None and workers < 1:
        problems.append("workers must be >= 1")

    if problems:
        raise SchemaError("; ".join(problems))
    return RunConfig(
        curve=curve,
        alphas=[str(a) for a in alphas],
        places=[str(p) for p in places],
        theta={str(k): float(v) for k, v in theta.items()},
        epsilon=float(epsilon),
        a_string=str(a_string) if a_string is not None else None,
        log_a=float(log_a) if log_a is not None else None,
        height_bound=float(height_bound),
        coefficient_cap=coefficient_cap,
        precision_bits=precision_bits,
        tolerance=float(tolerance),
        max_candidates=max_candidates,
        workers=workers,
    )


@dataclass
class MatrixConfig:
    curve: str
    alphas: List[List[str]]
    betas: List[str]
    theta: Dict[str, float]
    partition: Dict[int, List[str]]
    tolerance: float = DEFAULT_TOLERANCE

    def build_matrix(self) -> Tuple[AdelicCurve, GapMatrix]:
        curve = curve_by_name(self.curve)
        rows = tuple(tuple(curve.element(a) for a in row) for row in self.alphas)
        betas = tuple(curve.element(b) for b in self.betas)
        return curve, GapMatrix(curve, rows, betas)


def load_matrix(path: str) -> MatrixConfig:
    data = _load_toml(path)
    problems: List[str] = []
    curve = data.get("curve")
    if curve not in ("Q", "Q(t)"):
        problems.append("curve must be 'Q' or 'Q(t)'")
    alphas = data.get("alphas")
    betas = data.get("betas")
    if not isinstance(alphas, list) or not alphas or not all(isinstance(r, list) and r for r in alphas):
        problems.append("alphas must be a nonempty list of nonempty rows")
    if not isinstance(betas, list) or not betas:
        problems.append("betas must be a nonempty list")
    theta = data.get("theta", {})
    if not isinstance(theta, dict):
        problems.append("theta must be a table")
    partition_raw = data.get("partition", {})
    partition: Dict[int, List[str]] = {}
    if not isinstance(partition_raw, dict):
        problems.append("partition must be a table of row index -> place ids")
    else:
        for key, value in partition_raw.items():
            try:
                partition[int(key)] = [str(v) for v in value]
            except (TypeError, ValueError):
                problems.append(f"bad partition entry {key!r}")
    if problems:
        raise SchemaError("; ".join(problems))
    return MatrixConfig(
        curve=curve,
        alphas=[[str(a) for a in row] for row in alphas],
        betas=[str(b) for b in betas],
        theta={str(k): float(v) for k, v in theta.items()},
        partition=partition,
        tolerance=float(data.get("tolerance", DEFAULT_TOLERANCE)),
    )
