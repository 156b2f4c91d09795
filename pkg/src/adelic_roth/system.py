"""The system of simultaneous approximation inequalities and its censuses.

A ``SystemSpec`` fixes the data of the inequality system

    |beta - alpha_i|_w  <=  (A * H(beta))^(-theta(w)),   i = 1..n,  w in S,

in the unknown nonzero ``beta``: a curve, the targets ``alpha_i``, a finite
place set ``S`` with a nonnegative weight ``theta`` on it satisfying
``sum_S mass*theta >= 2 + epsilon``, and the constants ``A`` (kept in log
space) and ``epsilon``.  Membership is decided in log space:

    log|beta - alpha_i|_w  <=  -theta(w) * (log A + h(beta)),

with a three-valued verdict; candidates equal to some ``alpha_i`` are
*degenerate* (the left side is log 0) and are tracked separately, never as
solutions.

``enumerate_solutions`` realizes the solution set inside a height ball by
exhaustive search.  Over Q the ball is finite and the census is complete; over
Q(t) no height ball is finite (all the constants have height zero), so the
enumeration additionally caps the integer coefficients of the candidate
numerators and denominators and records that cap in the census.

``roth_defect`` evaluates the normalized approximation sum

    sum_S mass(w) * log|beta - alpha_w|_w / (log A + h(beta))

for a choice of one target per place; for any solution of the system with a
positive normalizer this quantity is at most ``-(2 + epsilon)``.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .curves import AdelicCurve, Element, Place, _house_from_height_bound
from .errors import (
    CapacityExceededError,
    DegenerateBetaError,
    NonpositiveDenominatorError,
    ZeroElementError,
)
from .logvalue import LogValue, Verdict
from .qpoly import QPoly, ratfunc

__all__ = [
    "SystemSpec",
    "SpecValidation",
    "Census",
    "make_spec",
    "validate_spec",
    "is_solution",
    "enumerate_solutions",
    "roth_defect",
    "roth_defect_check",
    "nearest_alpha_assignment",
]


@dataclass(frozen=True)
class SystemSpec:
    """Immutable data of one instance of the inequality system."""

    curve: AdelicCurve
    alphas: Tuple[Element, ...]
    places: Tuple[Place, ...]
    theta: Tuple[Tuple[str, Fraction], ...]  # place id -> exponent weight
    log_A: LogValue
    epsilon: Fraction
    tolerance: float = 1e-9
    a_display: str = ""

    @property
    def n(self) -> int:
        return len(self.alphas)

    def theta_of(self, place_id: str) -> Fraction:
        for pid, value in self.theta:
            if pid == place_id:
                return value
        raise KeyError(f"theta is not defined at place {place_id!r}")

    def theta_integral(self) -> Fraction:
        """``sum_S mass(w) * theta(w)``, exact."""
        by_id = dict(self.theta)
        return sum((p.mass * by_id[p.id] for p in self.places if p.id in by_id), Fraction(0))


def make_spec(
    curve: AdelicCurve,
    alphas: Sequence,
    place_ids: Sequence[str],
    theta: Mapping[str, object],
    epsilon,
    A=None,
    log_A: Optional[float] = None,
    tolerance: float = 1e-9,
) -> SystemSpec:
    """Build a SystemSpec from plain data; ``A`` may be a rational or ``log_A`` a real."""
    als = tuple(curve.element(a) if isinstance(a, str) else a for a in alphas)
    places = tuple(curve.place(pid) for pid in place_ids)
    th = tuple((str(pid), _fraction(v)) for pid, v in theta.items())
    if (A is None) == (log_A is None):
        raise ValueError("give exactly one of A and log_A")
    if A is not None:
        a_frac = _fraction(A)
        if a_frac <= 0:
            raise ValueError("A must be positive")
        lv = LogValue.log_of_rational(a_frac)
        display = str(a_frac)
    else:
        lv = LogValue.from_rational(_fraction(log_A))
        display = f"exp({float(log_A)!r})"
    return SystemSpec(
        curve=curve,
        alphas=als,
        places=places,
        theta=th,
        log_A=lv,
        epsilon=_fraction(epsilon),
        tolerance=tolerance,
        a_display=display,
    )


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float, str)):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as an exact number")


# -- validation -------------------------------------------------------------


@dataclass
class SpecValidation:
    ok: bool
    violations: List[str]
    n: int
    N: int
    theta_integral: Fraction
    log_A: float
    epsilon: Fraction


def validate_spec(spec: SystemSpec) -> SpecValidation:
    """Check every hypothesis the system places on its data; never raises."""
    from .gaps import gap2_params, log_rho_bound_for_A

    violations: List[str] = []
    curve = spec.curve
    n = spec.n
    if n < 1:
        violations.append("at least one target element is required")
    for i, a in enumerate(spec.alphas):
        if curve.is_zero(a):
            violations.append(f"alpha_{i + 1} is zero")
    for i in range(n):
        for j in range(i + 1, n):
            if spec.alphas[i] == spec.alphas[j]:
                violations.append(f"alpha_{i + 1} and alpha_{j + 1} are equal")
    ids = [p.id for p in spec.places]
    if len(set(ids)) != len(ids):
        violations.append("duplicate places in S")
    theta_ids = [pid for pid, _ in spec.theta]
    if sorted(theta_ids) != sorted(set(theta_ids)):
        violations.append("duplicate theta entries")
    for pid in ids:
        if pid not in theta_ids:
            violations.append(f"theta undefined at place {pid!r}")
    for pid in theta_ids:
        if pid not in ids:
            violations.append(f"theta defined at {pid!r} which is not in S")
    for pid, value in spec.theta:
        if value < 0:
            violations.append(f"theta({pid}) is negative")
    if spec.epsilon <= 0:
        violations.append("epsilon must be positive")
    integral = Fraction(0)
    N = 0
    if not violations:
        integral = spec.theta_integral()
        if integral < 2 + spec.epsilon:
            violations.append(
                f"theta integral {integral} is below 2 + epsilon = {2 + spec.epsilon}"
            )
        params = gap2_params(n, spec.epsilon)
        N = params.N
        bound = log_rho_bound_for_A(spec)
        if spec.log_A.compare_le(bound, spec.tolerance) == Verdict.FAIL:
            violations.append("log A exceeds the admissible bound for the counting theorem")
    return SpecValidation(
        ok=not violations,
        violations=violations,
        n=n,
        N=N,
        theta_integral=integral,
        log_A=float(spec.log_A),
        epsilon=spec.epsilon,
    )


# -- membership -------------------------------------------------------------


def is_solution(spec: SystemSpec, beta: Element) -> Verdict:
    """Three-valued membership of ``beta`` in the solution set (or DEGENERATE)."""
    curve = spec.curve
    if curve.is_zero(beta):
        raise ZeroElementError("candidates must be nonzero")
    diffs = []
    for a in spec.alphas:
        d = curve.sub(beta, a)
        if curve.is_zero(d):
            return Verdict.DEGENERATE
        diffs.append(d)
    scale = spec.log_A + curve.height(beta)
    uncertain = False
    for d in diffs:
        for place in spec.places:
            lhs = curve.local_log_abs(place, d)
            rhs = scale.scaled(-spec.theta_of(place.id))
            v = lhs.compare_le(rhs, spec.tolerance)
            if v == Verdict.FAIL:
                return Verdict.FAIL
            if v == Verdict.UNCERTAIN:
                uncertain = True
    return Verdict.UNCERTAIN if uncertain else Verdict.PASS


# -- the census ----------------------------------------------------------------


@dataclass
class Census:
    """All solutions found in a height ball, with the degenerate and borderline lists."""

    spec: SystemSpec
    height_bound: float
    solutions: Tuple[Tuple[Element, LogValue], ...]
    degenerate: Tuple[Element, ...]
    uncertain: Tuple[Element, ...]
    big_threshold: LogValue
    big_solutions: Tuple[Tuple[Element, LogValue], ...]
    candidate_count: int
    coefficient_cap: Optional[int]
    workers: int

    def solution_elements(self) -> List[Element]:
        return [e for e, _ in self.solutions]


def enumerate_solutions(
    spec: SystemSpec,
    height_bound: float,
    coefficient_cap: Optional[int] = None,
    max_candidates: int = 2_000_000,
    workers: int = 1,
) -> Census:
    """Exhaust the height ball and classify every candidate.

    Raises :class:`CapacityExceededError` before generating a candidate grid
    larger than ``max_candidates``.
    """
    from .gaps import big_solution_threshold

    if height_bound < 0:
        raise ValueError("height bound must be nonnegative")
    curve = spec.curve
    if curve.name == "Q":
        candidates = _rational_candidates(height_bound, max_candidates)
        cap = None
    else:
        cap = 2 if coefficient_cap is None else int(coefficient_cap)
        candidates = _function_field_candidates(height_bound, cap, max_candidates)

    chunks = _chunked(candidates, workers)
    if workers <= 1 or len(candidates) < 64:
        results = [_classify_many(spec, chunk) for chunk in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_classify_many, itertools.repeat(spec), chunks))

    solutions: List[Tuple[Element, LogValue]] = []
    degenerate: List[Element] = []
    uncertain: List[Element] = []
    for sols, degs, uncs in results:
        solutions.extend(sols)
        degenerate.extend(degs)
        uncertain.extend(uncs)
    solutions.sort(key=lambda eh: (float(eh[1]), curve.format_element(eh[0])))
    degenerate.sort(key=curve.format_element)
    uncertain.sort(key=curve.format_element)

    threshold = big_solution_threshold(spec)
    big = tuple(
        (e, h)
        for e, h in solutions
        if h.compare_ge(threshold, spec.tolerance) in (Verdict.PASS, Verdict.UNCERTAIN)
    )
    return Census(
        spec=spec,
        height_bound=float(height_bound),
        solutions=tuple(solutions),
        degenerate=tuple(degenerate),
        uncertain=tuple(uncertain),
        big_threshold=threshold,
        big_solutions=big,
        candidate_count=len(candidates),
        coefficient_cap=cap,
        workers=workers,
    )


def _classify_many(spec: SystemSpec, betas: Sequence[Element]):
    solutions = []
    degenerate = []
    uncertain = []
    for beta in betas:
        v = is_solution(spec, beta)
        if v == Verdict.PASS:
            solutions.append((beta, spec.curve.height(beta)))
        elif v == Verdict.DEGENERATE:
            degenerate.append(beta)
        elif v == Verdict.UNCERTAIN:
            uncertain.append(beta)
    return solutions, degenerate, uncertain


def _chunked(items: List, workers: int) -> List[List]:
    if not items:
        return [[]]
    pieces = max(1, min(len(items), 4 * max(1, workers)))
    size = math.ceil(len(items) / pieces)
    return [items[i : i + size] for i in range(0, len(items), size)]


def _rational_candidates(height_bound: float, max_candidates: int) -> List[Fraction]:
    house = _house_from_height_bound(height_bound)
    if 2 * house * house > max_candidates:
        raise CapacityExceededError(
            f"height bound admits ~{2 * house * house} candidates (limit {max_candidates})"
        )
    out: List[Fraction] = []
    for q in range(1, house + 1):
        for p in range(1, house + 1):
            if math.gcd(p, q) == 1:
                out.append(Fraction(p, q))
                out.append(Fraction(-p, q))
    return out


def _function_field_candidates(height_bound: float, cap: int, max_candidates: int):
    max_deg = int(height_bound + 1e-12)
    if cap < 1:
        raise ValueError("coefficient cap must be >= 1")
    per_poly = (2 * cap + 1) ** (max_deg + 1)
    if per_poly * per_poly > max_candidates:
        raise CapacityExceededError(
            f"coefficient grid admits ~{per_poly * per_poly} candidate pairs (limit {max_candidates})"
        )
    polys: List[QPoly] = []
    for coeffs in itertools.product(range(-cap, cap + 1), repeat=max_deg + 1):
        poly = QPoly.from_coeffs(coeffs)
        if not poly.is_zero:
            polys.append(poly)
    seen = set()
    out = []
    for num in polys:
        for den in polys:
            f = ratfunc(num, den)
            if f not in seen:
                seen.add(f)
                out.append(f)
    return out


# -- the normalized approximation sum -------------------------------------------


def nearest_alpha_assignment(spec: SystemSpec, beta: Element) -> Dict[str, Element]:
    """Assign to each place the target closest to ``beta`` there (ties: first)."""
    curve = spec.curve
    out: Dict[str, Element] = {}
    for place in spec.places:
        best = None
        best_val = None
        for a in spec.alphas:
            d = curve.sub(beta, a)
            if curve.is_zero(d):
                raise DegenerateBetaError("beta coincides with a target element")
            val = float(curve.local_log_abs(place, d))
            if best_val is None or val < best_val - 1e-15:
                best, best_val = a, val
        out[place.id] = best
    return out


def _defect_parts(spec: SystemSpec, beta: Element, assignment: Mapping[str, Element]):
    curve = spec.curve
    if curve.is_zero(beta):
        raise ZeroElementError("beta must be nonzero")
    for a in spec.alphas:
        if curve.is_zero(curve.sub(beta, a)):
            raise DegenerateBetaError("beta coincides with a target element")
    numerator = LogValue.zero()
    for place in spec.places:
        try:
            alpha = assignment[place.id]
        except KeyError:
            raise KeyError(f"assignment misses place {place.id!r}") from None
        if all(alpha != a for a in spec.alphas):
            raise ValueError(f"assignment at {place.id!r} is not one of the targets")
        numerator = numerator + curve.local_log_abs(place, curve.sub(beta, alpha)).scaled(place.mass)
    denominator = spec.log_A + curve.height(beta)
    sign = denominator.sign(spec.tolerance)
    if sign is None or sign <= 0:
        raise NonpositiveDenominatorError(
            f"log A + h(beta) = {float(denominator):.6g} is not certainly positive"
        )
    return numerator, denominator


def roth_defect(spec: SystemSpec, beta: Element, assignment: Mapping[str, Element]) -> LogValue:
    """``sum_S mass*log|beta - alpha_w|_w / (log A + h(beta))`` for one target per place."""
    numerator, denominator = _defect_parts(spec, beta, assignment)
    return numerator.div(denominator)


def roth_defect_check(spec: SystemSpec, beta: Element, assignment: Mapping[str, Element]) -> Verdict:
    """Exact three-valued check of ``defect <= -(2 + epsilon)``.

    Decided by cross-multiplication (the normalizer is certainly positive),
    so no quotient rounding is involved.
    """
    numerator, denominator = _defect_parts(spec, beta, assignment)
    bound = denominator.scaled(-(2 + spec.epsilon))
    return numerator.compare_le(bound, spec.tolerance)
