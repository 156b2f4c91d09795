"""Gap principles and the counting bound, in log space with exact factorials.

Two complementary constraints govern how many large solutions the inequality
system can have:

* a *ratio gap*: two distinct solutions whose heights clear an explicit
  threshold have height ratio at least ``1 + epsilon/2`` (a consequence of
  the Liouville lower bound), and
* an *interval cover*: all solutions with ``H(beta) >= A`` fit into at most
  ``N - 1`` height intervals of length ``log Gamma`` with
  ``Gamma = 8*n*N^2*N!`` (a consequence of a deep polynomial-method theorem
  that this module checks as a black-box certificate, never re-derives).

Combining both yields the headline bound

    count < (N - 1) * (1 + log(8*n*N^2*N!) / log(1 + epsilon/2)),

with ``N = max(ceil(441*log 2n), ceil(49*log 2n / epsilon^2))``.  Factorials
are exact big integers; every quantity that involves one lives in log space,
so nothing overflows even at ``N`` in the thousands.

On the ratio-gap applicability threshold: the chain of inequalities behind
the ratio gap needs

    h(beta) >= (2/eps) * (h(2) + log 2 - (2 + eps) * log A),

and that is the condition ``gap1_check`` applies (it is decreasing in ``A``,
as it must be: a larger ``A`` strengthens the system).  Pairs below the
threshold get no verdict.  The *big-solution* threshold of the counting
statement, ``max(log A, 2 log A + (4 log A - 2 h(2) - log 4)/eps)``, is a
different quantity and is kept verbatim in ``big_solution_threshold``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import mpmath

from .curves import AdelicCurve, Element
from .errors import (
    BadPartitionError,
    DegenerateMatrixError,
    EqualElementsError,
    NonpositiveLogRhoError,
    NotSolutionsError,
)
from .logvalue import LOG2, LOG4, LogValue, Verdict
from .system import Census, SystemSpec, is_solution

__all__ = [
    "GapMatrix",
    "Gap2Params",
    "IntervalCover",
    "Gap1Result",
    "HGapResult",
    "ColumnBoundingResult",
    "CertificateReport",
    "CoverResult",
    "big_solution_threshold",
    "gap1_check",
    "gap1_sweep",
    "log_rho",
    "h_gap_check",
    "column_bounding_check",
    "dyson_bound",
    "dyson_certificate",
    "gap2_params",
    "ratio_gap_capacity",
    "count_bound",
    "gap2_cover_check",
    "log_rho_bound_for_A",
]


# -- thresholds -------------------------------------------------------------


def big_solution_threshold(spec: SystemSpec) -> LogValue:
    """``max(log A, 2 log A + (4 log A - 2 h(2) - log 4)/epsilon)``.

    Solutions at or above this height are the "big" ones that the counting
    bound addresses; for ``A <= 1`` the threshold is nonpositive, so every
    solution is big.
    """
    log_a = spec.log_A
    h2 = spec.curve.h2()
    second = log_a.scaled(2) + (log_a.scaled(4) - h2.scaled(2) - LOG4).scaled(
        Fraction(1, 1) / spec.epsilon
    )
    if log_a.compare_ge(second, spec.tolerance) == Verdict.PASS:
        return log_a
    return second


def gap1_applicability_threshold(spec: SystemSpec) -> LogValue:
    """Height floor above which the ratio-gap conclusion is guaranteed."""
    log_a = spec.log_A
    h2 = spec.curve.h2()
    inner = h2 + LOG2 - log_a.scaled(2 + spec.epsilon)
    return inner.scaled(Fraction(2, 1) / spec.epsilon)


# -- first gap principle -------------------------------------------------------


@dataclass
class Gap1Result:
    beta_lo: Element
    beta_hi: Element
    h_lo: LogValue
    h_hi: LogValue
    threshold: LogValue
    applicable: bool
    ratio: Optional[float]
    verdict: Optional[Verdict]


def gap1_check(spec: SystemSpec, beta1: Element, beta2: Element) -> Gap1Result:
    """Ratio-gap check for two distinct solutions of the system.

    Orders the pair by height; when the smaller height clears the
    applicability threshold, verdicts ``h_hi/h_lo >= 1 + epsilon/2`` by exact
    cross-multiplication.  Raises when the elements are equal or are not both
    certified solutions.
    """
    if beta1 == beta2:
        raise EqualElementsError("the two solutions must be distinct")
    for beta in (beta1, beta2):
        v = is_solution(spec, beta)
        if v != Verdict.PASS:
            raise NotSolutionsError(f"{spec.curve.format_element(beta)} is not a certified solution ({v})")
    h1 = spec.curve.height(beta1)
    h2 = spec.curve.height(beta2)
    if float(h1) <= float(h2):
        return _gap1_result(spec, beta1, h1, beta2, h2)
    return _gap1_result(spec, beta2, h2, beta1, h1)


def _gap1_result(spec: SystemSpec, lo: Element, h_lo: LogValue, hi: Element, h_hi: LogValue) -> Gap1Result:
    threshold = gap1_applicability_threshold(spec)
    applicable = h_lo.compare_ge(threshold, spec.tolerance) == Verdict.PASS
    flo, fhi = float(h_lo), float(h_hi)
    if flo > 0:
        ratio: Optional[float] = fhi / flo
    elif fhi > 0:
        ratio = math.inf
    else:
        ratio = None
    verdict: Optional[Verdict] = None
    if applicable:
        verdict = _ratio_verdict(h_lo, h_hi, spec.epsilon, spec.tolerance)
    return Gap1Result(
        beta_lo=lo,
        beta_hi=hi,
        h_lo=h_lo,
        h_hi=h_hi,
        threshold=threshold,
        applicable=applicable,
        ratio=ratio,
        verdict=verdict,
    )


def _ratio_verdict(h_lo: LogValue, h_hi: LogValue, epsilon: Fraction, tol: float) -> Verdict:
    """``h_hi/h_lo >= 1 + epsilon/2`` as ``2*h_hi >= (2+epsilon)*h_lo``."""
    if h_lo.is_exact_zero:
        # the ratio is +inf (pass) unless both heights vanish, where it is undefined
        return Verdict.UNCERTAIN if h_hi.is_exact_zero else Verdict.PASS
    return h_hi.scaled(2).compare_ge(h_lo.scaled(2 + epsilon), tol)


def gap1_sweep(census: Census) -> List[Gap1Result]:
    """Ratio-gap results for every adjacent pair of big solutions of a census."""
    out: List[Gap1Result] = []
    big = census.big_solutions
    for (e1, h1), (e2, h2) in zip(big, big[1:]):
        out.append(_gap1_result(census.spec, e1, h1, e2, h2))
    return out


# -- the approximation matrix ----------------------------------------------------


@dataclass
class GapMatrix:
    """Targets and candidates arranged column by column, with cached heights.

    ``alphas`` has n rows of length N; ``betas`` is the extra row of length
    N.  In every column all n+1 entries must be pairwise distinct (the rows
    are componentwise different) and nonzero.
    """

    curve: AdelicCurve
    alphas: Tuple[Tuple[Element, ...], ...]
    betas: Tuple[Element, ...]
    _alpha_heights: Dict[Tuple[int, int], LogValue] = field(default_factory=dict, repr=False)
    _beta_heights: Dict[int, LogValue] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self.alphas = tuple(tuple(row) for row in self.alphas)
        self.betas = tuple(self.betas)
        if not self.betas or not self.alphas:
            raise ValueError("need at least one row of targets and one candidate row")
        width = len(self.betas)
        if any(len(row) != width for row in self.alphas):
            raise ValueError("all rows must have the same length")
        for j in range(width):
            column = [row[j] for row in self.alphas] + [self.betas[j]]
            for x in column:
                if self.curve.is_zero(x):
                    raise ValueError(f"zero entry in column {j + 1}")
            for a in range(len(column)):
                for b in range(a + 1, len(column)):
                    if column[a] == column[b]:
                        raise ValueError(f"column {j + 1} has equal entries (rows must be componentwise different)")

    @property
    def n(self) -> int:
        return len(self.alphas)

    @property
    def N(self) -> int:
        return len(self.betas)

    def alpha_height(self, h: int, j: int) -> LogValue:
        key = (h, j)
        if key not in self._alpha_heights:
            self._alpha_heights[key] = self.curve.height(self.alphas[h][j])
        return self._alpha_heights[key]

    def beta_height(self, j: int) -> LogValue:
        if j not in self._beta_heights:
            self._beta_heights[j] = self.curve.height(self.betas[j])
        return self._beta_heights[j]


def log_rho(matrix: GapMatrix, j: int) -> Tuple[LogValue, LogValue]:
    """Column weights ``log rho_j`` and ``log rho'_j`` (1-based column index).

    ``log rho_j  = 2*N!*log 4 + h(beta_j) + (2*N!/n) * sum_h h(alpha_hj)``
    ``log rho'_j =   N!*log 4 + h(beta_j) + (N!/(2n)) * sum_h h(alpha_hj)``
    """
    N = matrix.N
    if not 1 <= j <= N:
        raise IndexError(f"column index {j} out of range 1..{N}")
    jj = j - 1
    alpha_sum = LogValue.zero()
    for h in range(matrix.n):
        alpha_sum = alpha_sum + matrix.alpha_height(h, jj)
    hb = matrix.beta_height(jj)
    base2, base1, coeff2, coeff1 = _rho_constants(N, matrix.n)
    first = base2 + hb + alpha_sum.scaled(coeff2)
    second = base1 + hb + alpha_sum.scaled(coeff1)
    return first, second


@lru_cache(maxsize=64)
def _factorial(N: int) -> int:
    return math.factorial(N)


@lru_cache(maxsize=256)
def _rho_constants(N: int, n: int):
    fact = _factorial(N)
    return (
        LOG4.scaled(2 * fact),
        LOG4.scaled(fact),
        Fraction(2 * fact, n),
        Fraction(fact, 2 * n),
    )


# -- h-gap property ---------------------------------------------------------------


@dataclass
class HGapResult:
    verdict: Verdict
    ratios: Tuple[float, ...]
    threshold: Fraction
    column_verdicts: Tuple[Verdict, ...]


def h_gap_check(matrix: GapMatrix, tol: float = 1e-9) -> HGapResult:
    """Strict check ``log rho_j / log rho'_{j+1} < 1/(4*n*N^2*N!)`` for all j.

    Decided by exact cross-multiplication; a column exactly at the threshold
    is reported uncertain, never passed.
    """
    N = matrix.N
    if N < 2:
        raise DegenerateMatrixError("the h-gap property needs at least two columns")
    n = matrix.n
    inverse_threshold = 4 * n * N * N * _factorial(N)
    threshold = Fraction(1, inverse_threshold)
    rhos = [log_rho(matrix, j) for j in range(1, N + 1)]
    verdicts: List[Verdict] = []
    ratios: List[float] = []
    for j in range(N - 1):
        num = rhos[j][0]
        den = rhos[j + 1][1]
        if den.sign(tol) != 1:
            raise NonpositiveLogRhoError(f"log rho'_{j + 2} is not certainly positive")
        # ratio < 1/M  <=>  M*num < den
        verdicts.append(_scaled_verdict_lt(num, inverse_threshold, den, tol))
        ratios.append(_report_ratio(num, den))
    overall = _combine(verdicts)
    return HGapResult(
        verdict=overall,
        ratios=tuple(ratios),
        threshold=threshold,
        column_verdicts=tuple(verdicts),
    )


def _combine(verdicts: Sequence[Verdict]) -> Verdict:
    if any(v == Verdict.FAIL for v in verdicts):
        return Verdict.FAIL
    if any(v == Verdict.UNCERTAIN for v in verdicts):
        return Verdict.UNCERTAIN
    return Verdict.PASS


def _scaled_verdict_lt(num: LogValue, scale: int, den: LogValue, tol: float) -> Verdict:
    """Verdict for ``scale*num < den`` (scale a positive integer).

    A multiprecision enclosure separates the sides without materializing the
    exact product ``scale*num`` (which pairs a ~10^5-digit height with a
    ~10^3-digit factorial); only near-threshold instances fall back to the
    exact cross-multiplied comparison.
    """
    with mpmath.workprec(200):
        nv, ne = num.eval(160)
        dv, de = den.eval(160)
        s = mpmath.mpf(scale)
        lhs = s * nv
        lhs_err = s * ne + abs(lhs) * mpmath.mpf(2) ** -150
        if lhs + lhs_err < dv - de - tol:
            return Verdict.PASS
        if lhs - lhs_err > dv + de + tol:
            return Verdict.FAIL
    return num.scaled(scale).compare_lt(den, tol)


def _report_ratio(num: LogValue, den: LogValue) -> float:
    """Float image of num/den; detects deep underflow from bit lengths so the
    factorial-scale instances never pay for a multiprecision quotient."""
    nr, dr = num.rational, den.rational
    if num.is_exact and den.is_exact and nr > 0 and dr > 0:
        n_bits = nr.numerator.bit_length() - nr.denominator.bit_length()
        d_bits = dr.numerator.bit_length() - dr.denominator.bit_length()
        ns = sum((abs(c) * b.bit_length() for b, c in num.logs), Fraction(0))
        ds = sum((abs(c) * b.bit_length() for b, c in den.logs), Fraction(0))
        if ns <= nr and 2 * ds <= dr and d_bits - n_bits > 1100:
            return 0.0  # the true ratio is far below the smallest subnormal
    return float(num.div(den))


# -- column bounding ------------------------------------------------------------------


@dataclass
class ColumnBoundingResult:
    verdict: Verdict
    checks: int
    unit_bound_ok: bool


def column_bounding_check(
    matrix: GapMatrix,
    theta: Mapping[str, object],
    partition: Mapping[int, Sequence[str]],
    tol: float = 1e-9,
) -> ColumnBoundingResult:
    """Check that ``theta`` bounds every column of the matrix on its row's places.

    ``partition`` maps the 1-based row index h to the place ids of its cell
    S_h; the cells must be disjoint and exhaust the domain of ``theta``.  The
    inequality per column j, row h and place w in S_h is

        -log|alpha_hj - beta_j|_w / log rho_j  >=  theta(w),

    checked as ``log|alpha_hj - beta_j|_w <= -theta(w) * log rho_j`` (the
    weights log rho_j must be positive).  Also reports whether every checked
    local value satisfied ``|alpha_hj - beta_j|_w <= 1``, which the bounding
    property forces whenever theta is nonnegative.
    """
    theta_fr = {str(k): Fraction(v) for k, v in theta.items()}
    for pid, value in theta_fr.items():
        if value < 0:
            raise ValueError(f"theta({pid}) is negative")
    n = matrix.n
    seen: Dict[str, int] = {}
    for h, pids in partition.items():
        if not 1 <= int(h) <= n:
            raise BadPartitionError(f"row index {h} out of range 1..{n}")
        for pid in pids:
            if pid in seen:
                raise BadPartitionError(f"place {pid!r} appears in two cells")
            seen[pid] = int(h)
    if set(seen) != set(theta_fr):
        missing = set(theta_fr) ^ set(seen)
        raise BadPartitionError(f"partition does not match the place set (difference: {sorted(missing)})")

    curve = matrix.curve
    places = {pid: curve.place(pid) for pid in theta_fr}
    rhos = {}
    for j in range(1, matrix.N + 1):
        r = log_rho(matrix, j)[0]
        if r.sign(tol) != 1:
            raise NonpositiveLogRhoError(f"log rho_{j} is not certainly positive")
        rhos[j] = r

    verdicts: List[Verdict] = []
    unit_ok = True
    zero = LogValue.zero()
    for pid, h in seen.items():
        place = places[pid]
        th = theta_fr[pid]
        for j in range(1, matrix.N + 1):
            diff = curve.sub(matrix.alphas[h - 1][j - 1], matrix.betas[j - 1])
            local = curve.local_log_abs(place, diff)
            # local <= -th*rho  <=>  den(th)*local <= -num(th)*rho, integer-side
            lhs = local.scaled(th.denominator)
            rhs = rhos[j].scaled(-th.numerator)
            verdicts.append(lhs.compare_le(rhs, tol))
            if local.compare_le(zero, tol) == Verdict.FAIL:
                unit_ok = False
    return ColumnBoundingResult(verdict=_combine(verdicts), checks=len(verdicts), unit_bound_ok=unit_ok)


# -- the certificate ----------------------------------------------------------------------


def dyson_bound(n: int, N: int) -> float:
    """``2 + 7*sqrt(log 2n)/sqrt(N)``, the certified cap on the theta integral."""
    if n < 1 or N < 1:
        raise ValueError("n and N must be positive")
    return 2.0 + 7.0 * math.sqrt(math.log(2 * n)) / math.sqrt(N)


@dataclass
class CertificateReport:
    n: int
    N: int
    size_hypothesis: Verdict
    h_gap_hypothesis: Verdict
    bounding_hypothesis: Verdict
    hypotheses_met: bool
    theta_integral: Fraction
    bound: float
    conclusion: Optional[Verdict]
    violation: bool


def dyson_certificate(
    matrix: GapMatrix,
    theta: Mapping[str, object],
    partition: Mapping[int, Sequence[str]],
    n: Optional[int] = None,
    N: Optional[int] = None,
    tol: float = 1e-9,
) -> CertificateReport:
    """Evaluate the hypotheses and conclusion of the certified integral cap.

    Hypotheses: ``N > 441*log(2n)``, the h-gap property, and that ``theta``
    is column bounding.  Conclusion: ``sum theta*mass < 2 + 7*sqrt(log
    2n)/sqrt(N)``.  The conclusion is taken on faith from the underlying
    theorem, so an instance whose hypotheses all hold but whose conclusion
    fails is flagged as a VIOLATION — that can only mean a bug in this
    library (or a counterexample, which the theorem rules out).
    """
    n = matrix.n if n is None else n
    N = matrix.N if N is None else N
    if n != matrix.n or N != matrix.N:
        raise ValueError("n and N must match the matrix dimensions")

    size_v = LogValue.from_rational(N).compare_gt(LogValue.log_of_int(2 * n).scaled(441), tol)
    try:
        hgap_v = h_gap_check(matrix, tol).verdict
    except DegenerateMatrixError:
        hgap_v = Verdict.FAIL
    bounding_v = column_bounding_check(matrix, theta, partition, tol).verdict
    met = all(v == Verdict.PASS for v in (size_v, hgap_v, bounding_v))

    curve = matrix.curve
    integral = sum((curve.place(str(pid)).mass * Fraction(v) for pid, v in theta.items()), Fraction(0))
    bound = dyson_bound(n, N)
    conclusion: Optional[Verdict] = None
    if met:
        conclusion = _integral_below_bound(integral, n, N, tol)
    return CertificateReport(
        n=n,
        N=N,
        size_hypothesis=size_v,
        h_gap_hypothesis=hgap_v,
        bounding_hypothesis=bounding_v,
        hypotheses_met=met,
        theta_integral=integral,
        bound=bound,
        conclusion=conclusion,
        violation=met and conclusion == Verdict.FAIL,
    )


def _integral_below_bound(integral: Fraction, n: int, N: int, tol: float) -> Verdict:
    """Exact check of ``integral < 2 + 7*sqrt(log 2n)/sqrt(N)`` (square the excess)."""
    excess = integral - 2
    if excess <= 0:
        return Verdict.PASS
    lhs = LogValue.from_rational(excess * excess * N)
    rhs = LogValue.log_of_int(2 * n).scaled(49)
    return lhs.compare_lt(rhs, tol)


# -- parameters and the counting bound ---------------------------------------------------


@dataclass
class Gap2Params:
    n: int
    epsilon: Fraction
    N: int
    N_factorial: int
    log_Gamma: LogValue

    @property
    def gamma_display(self) -> str:
        return f"8*{self.n}*{self.N}^2*{self.N}!"


def gap2_params(n: int, epsilon) -> Gap2Params:
    """``N = max(ceil(441*log 2n), ceil(49*log 2n/eps^2))`` and ``log Gamma``.

    ``Gamma = 8*n*N^2*N!`` never gets materialized: its log is assembled from
    the prime factorization of ``8*n*N^2`` and the exact prime-power
    decomposition of ``N!``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    with mpmath.workprec(128):
        log2n = mpmath.log(2 * n)
        n1 = int(mpmath.ceil(441 * log2n))
        n2 = int(mpmath.ceil(49 * log2n * eps.denominator**2 / eps.numerator**2))
    N = max(n1, n2)
    fact = math.factorial(N)
    log_gamma = LogValue.log_of_int(8 * n * N * N) + _log_factorial(N)
    return Gap2Params(n=n, epsilon=eps, N=N, N_factorial=fact, log_Gamma=log_gamma)


def _log_factorial(N: int) -> LogValue:
    """Exact ``log N!`` from the prime-power decomposition of the factorial."""
    from .intfactor import primes

    terms = {}
    for p in primes():
        if p > N:
            break
        e = 0
        q = p
        while q <= N:
            e += N // q
            q *= p
        terms[p] = e
    return LogValue.from_log_terms(terms)


def ratio_gap_capacity(log_gamma, epsilon) -> float:
    """``1 + log Gamma / log(1 + epsilon/2)``: a strict cap on how many reals
    with pairwise ratio >= 1 + epsilon/2 fit in one interval of logarithmic
    length log Gamma."""
    lg = float(log_gamma)
    if lg <= 0:
        raise ValueError("log Gamma must be positive")
    eps = float(Fraction(epsilon))
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return 1.0 + lg / math.log1p(eps / 2.0)


def count_bound(spec: SystemSpec) -> Tuple[float, int]:
    """The headline cap on the number of big solutions, and the N it uses."""
    params = gap2_params(spec.n, spec.epsilon)
    bound = (params.N - 1) * ratio_gap_capacity(params.log_Gamma, spec.epsilon)
    return bound, params.N


def log_rho_bound_for_A(spec: SystemSpec) -> LogValue:
    """Admissible cap on ``log A``: ``2*N!*log 4 + (2*N!/n) * sum_i h(alpha_i)``."""
    params = gap2_params(spec.n, spec.epsilon)
    fact = params.N_factorial
    total = LogValue.zero()
    for a in spec.alphas:
        total = total + spec.curve.height(a)
    return LOG4.scaled(2 * fact) + total.scaled(Fraction(2 * fact, spec.n))


# -- interval cover ------------------------------------------------------------------------


@dataclass
class IntervalCover:
    intervals: Tuple[Tuple[float, float], ...]
    capacity_per_interval: float


@dataclass
class CoverResult:
    cover: IntervalCover
    point_count: int
    interval_count: int
    max_intervals: int
    verdict: Verdict


def gap2_cover_check(census: Census, params: Optional[Gap2Params] = None) -> CoverResult:
    """Greedily cover the heights of the census solutions with ``H >= A``.

    Greedy left-to-right covering is optimal for fixed-length 1-d intervals,
    so the interval count is the true minimum; it must not exceed ``N - 1``.
    """
    spec = census.spec
    if params is None:
        params = gap2_params(spec.n, spec.epsilon)
    log_gamma = float(params.log_Gamma)
    heights = sorted(
        float(h)
        for _, h in census.solutions
        if h.compare_ge(spec.log_A, spec.tolerance) in (Verdict.PASS, Verdict.UNCERTAIN)
    )
    intervals: List[Tuple[float, float]] = []
    upper = -math.inf
    for h in heights:
        if h > upper + 1e-12:
            intervals.append((h, h + log_gamma))
            upper = h + log_gamma
    count = len(intervals)
    verdict = Verdict.PASS if count <= params.N - 1 else Verdict.FAIL
    cover = IntervalCover(
        intervals=tuple(intervals),
        capacity_per_interval=ratio_gap_capacity(params.log_Gamma, spec.epsilon),
    )
    return CoverResult(
        cover=cover,
        point_count=len(heights),
        interval_count=count,
        max_intervals=params.N - 1,
        verdict=verdict,
    )
