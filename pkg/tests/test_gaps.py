import math
import random
from fractions import Fraction

import mpmath
import pytest

from adelic_roth import (
    Census,
    DegenerateMatrixError,
    EqualElementsError,
    FunctionFieldCurve,
    GapMatrix,
    NotSolutionsError,
    RationalsCurve,
    Verdict,
    big_solution_threshold,
    column_bounding_check,
    count_bound,
    dyson_bound,
    enumerate_solutions,
    gap1_check,
    gap1_sweep,
    gap2_cover_check,
    gap2_params,
    h_gap_check,
    log_rho,
    make_spec,
    ratio_gap_capacity,
    dyson_certificate,
)
from adelic_roth.errors import BadPartitionError
from adelic_roth.gaps import _gap1_result, _integral_below_bound, _ratio_verdict, gap1_applicability_threshold
from adelic_roth.logvalue import LogValue

import certsynth

Q = RationalsCurve()
QT = FunctionFieldCurve()
LOG = math.log
ONE = QT.element("1")


def q_spec(alphas, theta, epsilon, A=None, log_A=None, places=("inf",)):
    return make_spec(Q, alphas, list(places), theta, epsilon=epsilon, A=A, log_A=log_A)


# -- thresholds ----------------------------------------------------------------


def test_big_solution_threshold_examples():
    assert float(big_solution_threshold(q_spec(["1"], {"inf": 3}, 1, A="1"))) == 0.0
    spec_e = q_spec(["1"], {"inf": 3}, 1, log_A=1.0)
    assert float(big_solution_threshold(spec_e)) == pytest.approx(6 - 4 * LOG(2), abs=1e-9)
    spec_t = make_spec(QT, ["1"], ["t"], {"t": 3}, epsilon=1, A="1")
    assert float(big_solution_threshold(spec_t)) == 0.0


def test_gap1_applicability_threshold_decreases_in_A():
    lo = gap1_applicability_threshold(q_spec(["1"], {"inf": 3}, 1, A="1/8"))
    mid = gap1_applicability_threshold(q_spec(["1"], {"inf": 3}, 1, A="1"))
    hi = gap1_applicability_threshold(q_spec(["1"], {"inf": 3}, 1, A="8"))
    assert float(lo) > float(mid) > float(hi)
    assert float(mid) == pytest.approx(4 * LOG(2), abs=1e-12)


# -- first gap principle ---------------------------------------------------------


def test_ratio_verdict_frozen_example():
    # heights 2 and 3.1 at epsilon 1: ratio 1.55 >= 1.5
    v = _ratio_verdict(LogValue.from_rational(2), LogValue.from_rational(3.1), Fraction(1), 1e-9)
    assert v == Verdict.PASS
    v = _ratio_verdict(LogValue.from_rational(2), LogValue.from_rational(2.9), Fraction(1), 1e-9)
    assert v == Verdict.FAIL
    # exactly at the ratio: strictness is not required here (>= passes)
    v = _ratio_verdict(LogValue.from_rational(2), LogValue.from_rational(3), Fraction(1), 1e-9)
    assert v == Verdict.PASS


def test_ratio_verdict_degenerate_heights():
    zero = LogValue.zero()
    one = LogValue.from_rational(1)
    assert _ratio_verdict(zero, one, Fraction(1), 1e-9) == Verdict.PASS  # ratio = inf
    assert _ratio_verdict(zero, zero, Fraction(1), 1e-9) == Verdict.UNCERTAIN  # 0/0


def test_gap1_check_requires_distinct_solutions():
    spec = q_spec(["1"], {"inf": 3}, 1, A="1/8")
    with pytest.raises(EqualElementsError):
        gap1_check(spec, Fraction(2), Fraction(2))
    with pytest.raises(NotSolutionsError):
        gap1_check(spec, Fraction(2), Fraction(17))  # 17 has H=17 > 8: not a solution


def test_gap1_check_below_threshold_is_inapplicable():
    spec = q_spec(["1"], {"inf": 3}, 1, A="1/8")
    result = gap1_check(spec, Fraction(2), Fraction(1, 2))
    assert not result.applicable
    assert result.verdict is None
    assert result.ratio == pytest.approx(1.0)
    assert float(result.threshold) == pytest.approx(float(gap1_applicability_threshold(spec)))


def test_gap1_result_orders_by_height():
    spec = q_spec(["1"], {"inf": 3}, 1, A="1/8")
    r = gap1_check(spec, Fraction(3), Fraction(1, 2))
    assert str(r.beta_lo) == "1/2" and str(r.beta_hi) == "3"


def test_gap1_sweep_has_no_violations_on_census():
    spec = q_spec(["1"], {"inf": 3}, 1, A="1/8")
    census = enumerate_solutions(spec, LOG(8))
    results = gap1_sweep(census)
    assert len(results) == len(census.big_solutions) - 1
    assert all(r.verdict != Verdict.FAIL for r in results)


def test_gap1_synthetic_applicable_pair():
    # engineered heights above the applicability floor exercise the verdict path
    spec = q_spec(["1"], {"inf": 3}, 1, A="1")
    thr = gap1_applicability_threshold(spec)
    h1 = LogValue.from_rational(int(float(thr)) + 1)
    r = _gap1_result(spec, Fraction(2), h1, Fraction(3), h1.scaled(2))
    assert r.applicable and r.verdict == Verdict.PASS
    r = _gap1_result(spec, Fraction(2), h1, Fraction(3), h1.scaled(Fraction(5, 4)))
    assert r.applicable and r.verdict == Verdict.FAIL


# -- column weights ---------------------------------------------------------------


def test_log_rho_examples():
    m = GapMatrix(QT, [(ONE, ONE)], (QT.element("t"), QT.element("t^300")))
    first, second = log_rho(m, 1)
    assert float(first) == pytest.approx(4 * LOG(4) + 1, abs=1e-9)
    assert float(second) == pytest.approx(2 * LOG(4) + 1, abs=1e-9)
    assert float(log_rho(m, 2)[1]) == pytest.approx(2 * LOG(4) + 300, abs=1e-9)

    trivial = GapMatrix(QT, [(QT.element("2"),)], (QT.element("3"),))
    first, second = log_rho(trivial, 1)
    assert float(first) == pytest.approx(2 * LOG(4), abs=1e-12)
    assert float(second) == pytest.approx(LOG(4), abs=1e-12)

    with pytest.raises(IndexError):
        log_rho(m, 3)
    with pytest.raises(IndexError):
        log_rho(m, 0)


def test_gap_matrix_validates_columns():
    with pytest.raises(ValueError):
        GapMatrix(QT, [(ONE, ONE)], (ONE, QT.element("t")))  # column 1 equal entries
    with pytest.raises(ValueError):
        GapMatrix(QT, [(QT.element("0"), ONE)], (QT.element("t"), QT.element("t^2")))
    with pytest.raises(ValueError):
        GapMatrix(QT, [(ONE,)], (QT.element("t"), QT.element("t^2")))  # ragged


# -- h-gap property ----------------------------------------------------------------


def test_h_gap_examples():
    ok = GapMatrix(QT, [(ONE, ONE)], (QT.element("t"), QT.element("t^300")))
    res = h_gap_check(ok)
    assert res.verdict == Verdict.PASS
    assert res.threshold == Fraction(1, 32)
    assert res.ratios[0] == pytest.approx((4 * LOG(4) + 1) / (2 * LOG(4) + 300), rel=1e-9)

    close = GapMatrix(QT, [(ONE, ONE)], (QT.element("t"), QT.element("t^100")))
    assert h_gap_check(close).verdict == Verdict.FAIL

    # huge alpha heights inflate the numerator and break the gap
    big_alpha = GapMatrix(
        QT,
        [(QT.element("t^100"), QT.element("t^100"))],
        (QT.element("t"), QT.element("t^300")),
    )
    assert h_gap_check(big_alpha).verdict == Verdict.FAIL


def test_h_gap_exactly_at_threshold_is_uncertain():
    # over Q: log rho_1 = 9 log 2 and log rho'_2 = 288 log 2 give ratio 1/32 exactly
    one = Fraction(1)
    m = GapMatrix(Q, [(one, one)], (Fraction(2), Fraction(2) ** 284))
    res = h_gap_check(m)
    assert res.column_verdicts == (Verdict.UNCERTAIN,)
    assert res.verdict == Verdict.UNCERTAIN


def test_h_gap_needs_two_columns():
    with pytest.raises(DegenerateMatrixError):
        h_gap_check(GapMatrix(QT, [(QT.element("2"),)], (QT.element("3"),)))


# -- column bounding -----------------------------------------------------------------


def test_column_bounding_examples():
    m = GapMatrix(Q, [(Fraction(1),)], (Fraction(3, 2),))
    ok = column_bounding_check(m, {"inf": 0.1}, {1: ["inf"]})
    assert ok.verdict == Verdict.PASS
    assert ok.unit_bound_ok
    bad = column_bounding_check(m, {"inf": 0.2}, {1: ["inf"]})
    assert bad.verdict == Verdict.FAIL
    zero = column_bounding_check(m, {"inf": 0.0}, {1: ["inf"]})
    assert zero.verdict == Verdict.PASS


def test_column_bounding_two_rows():
    m = GapMatrix(Q, [(Fraction(1),), (Fraction(3),)], (Fraction(3, 2),))
    # row 2 differs from beta by 3/2: small at the place 3, large at the place 2
    ok = column_bounding_check(m, {"inf": 0.05, "3": 0.2}, {1: ["inf"], 2: ["3"]})
    assert ok.verdict == Verdict.PASS and ok.unit_bound_ok
    bad = column_bounding_check(m, {"inf": 0.05, "3": 0.25}, {1: ["inf"], 2: ["3"]})
    assert bad.verdict == Verdict.FAIL
    # |3 - 3/2|_2 = 2 > 1, so even a zero weight fails and trips the unit bound
    unit = column_bounding_check(m, {"inf": 0.05, "2": 0.0}, {1: ["inf"], 2: ["2"]})
    assert unit.verdict == Verdict.FAIL
    assert not unit.unit_bound_ok


def test_column_bounding_partition_validation():
    m = GapMatrix(Q, [(Fraction(1),)], (Fraction(3, 2),))
    with pytest.raises(BadPartitionError):
        column_bounding_check(m, {"inf": 0.1}, {1: ["inf", "inf"]})
    with pytest.raises(BadPartitionError):
        column_bounding_check(m, {"inf": 0.1}, {1: []})
    with pytest.raises(BadPartitionError):
        column_bounding_check(m, {"inf": 0.1}, {2: ["inf"]})
    with pytest.raises(ValueError):
        column_bounding_check(m, {"inf": -0.1}, {1: ["inf"]})


# -- certified integral cap ------------------------------------------------------------


def test_dyson_bound_values():
    assert dyson_bound(1, 306) == pytest.approx(2.3331, abs=1e-3)
    assert dyson_bound(1, 34) == pytest.approx(2.9995, abs=1e-3)
    assert dyson_bound(1, 10**12) == pytest.approx(2.0, abs=1e-4)
    with pytest.raises(ValueError):
        dyson_bound(0, 10)


def test_integral_cap_comparison():
    assert _integral_below_bound(Fraction(2), 1, 306, 1e-9) == Verdict.PASS
    assert _integral_below_bound(Fraction(3), 1, 306, 1e-9) == Verdict.FAIL
    assert _integral_below_bound(Fraction(233, 100), 1, 306, 1e-9) == Verdict.PASS


def test_certificate_hypotheses_not_met():
    small = GapMatrix(QT, [(QT.element("2"),)], (QT.element("3"),))
    report = dyson_certificate(small, {"t": 0.0}, {1: ["t"]})
    assert report.size_hypothesis == Verdict.FAIL
    assert report.h_gap_hypothesis == Verdict.FAIL  # a single column has no gaps
    assert not report.hypotheses_met
    assert report.conclusion is None and not report.violation


def test_certificate_dimension_mismatch():
    m = GapMatrix(QT, [(ONE, ONE)], (QT.element("t"), QT.element("t^300")))
    with pytest.raises(ValueError):
        dyson_certificate(m, {"t": 0.0}, {1: ["t"]}, n=2, N=2)


def test_certificate_synthetic_instances():
    for seed in range(3):
        matrix, theta, partition = certsynth.build_certificate(seed)
        report = dyson_certificate(matrix, theta, partition)
        assert report.hypotheses_met
        assert report.conclusion == Verdict.PASS
        assert not report.violation
        assert 0 < report.theta_integral < 1


def test_certificate_synthetic_two_rows():
    matrix, theta, partition = certsynth.build_certificate(100, n=2)
    assert matrix.n == 2 and matrix.N == 612
    report = dyson_certificate(matrix, theta, partition)
    assert report.hypotheses_met and not report.violation


# -- parameters and the counting bound ---------------------------------------------------


def test_gap2_params_examples():
    p = gap2_params(1, 1)
    assert p.N == 306
    assert float(p.log_Gamma) == pytest.approx(1462.7246563582517, rel=1e-12)
    assert gap2_params(1, Fraction(1, 10)).N == 3397


def test_gap2_params_properties():
    rng = random.Random(37)
    for _ in range(25):
        n = rng.randint(1, 6)
        eps = Fraction(rng.randint(1, 40), 10)
        p = gap2_params(n, eps)
        assert p.N > 441 * LOG(2 * n)
        assert dyson_bound(n, p.N) <= 2 + eps + 1e-12
        assert p.N_factorial == math.factorial(p.N)


def test_log_factorial_against_log_sum_oracle():
    from adelic_roth.gaps import _log_factorial

    with mpmath.workprec(128):
        for N in (10, 306, 1000, 4000):
            mine = _log_factorial(N).eval(256)[0]
            oracle = mpmath.fsum(mpmath.log(k) for k in range(2, N + 1))
            assert abs(mine - oracle) / oracle < 1e-9


def test_ratio_gap_capacity_examples():
    assert ratio_gap_capacity(LOG(8), 2) == pytest.approx(4.0, abs=1e-12)
    assert ratio_gap_capacity(1e-12, 1) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        ratio_gap_capacity(0.0, 1)


def test_ratio_gap_capacity_against_geometric_oracle():
    rng = random.Random(41)
    for _ in range(50):
        log_gamma = rng.uniform(0.1, 50)
        eps = rng.uniform(0.05, 3)
        # pack values of pairwise ratio exactly 1+eps/2 into [x, x*e^log_gamma]
        count = math.floor(log_gamma / math.log1p(eps / 2) + 1e-12) + 1
        assert count <= ratio_gap_capacity(log_gamma, eps) + 1e-9


def test_count_bound_identity_and_monotonicity():
    spec = q_spec(["1"], {"inf": 3}, 1, A="1")
    bound, N = count_bound(spec)
    params = gap2_params(1, 1)
    assert N == 306
    assert bound == (params.N - 1) * ratio_gap_capacity(params.log_Gamma, Fraction(1))
    # decreasing in epsilon at fixed N: compare capacities directly
    assert ratio_gap_capacity(float(params.log_Gamma), 0.5) > ratio_gap_capacity(
        float(params.log_Gamma), 1.0
    )
    assert ratio_gap_capacity(10.0, 1.0) < ratio_gap_capacity(11.0, 1.0)


def test_count_bound_frozen_value():
    spec = q_spec(["1"], {"inf": 3}, 1, A="1")
    bound, _ = count_bound(spec)
    oracle = 305 * (1 + 1462.7246563582517 / math.log(1.5))
    assert bound == pytest.approx(oracle, rel=1e-9)


# -- interval cover -------------------------------------------------------------------


def test_cover_empty_census_passes():
    spec = q_spec(["1"], {"inf": 3}, 1, A="1")
    census = enumerate_solutions(spec, LOG(20))
    res = gap2_cover_check(census)
    assert res.interval_count == 0 and res.verdict == Verdict.PASS


def test_cover_desk_census_uses_one_interval():
    spec = q_spec(["1"], {"inf": 3}, 1, A="1/8")
    census = enumerate_solutions(spec, LOG(8))
    res = gap2_cover_check(census)
    assert res.interval_count == 1 and res.verdict == Verdict.PASS
    assert res.point_count == 0 or res.point_count > 0  # heights above log A only


def _brute_minimal_cover(heights, length):
    """Minimal number of fixed-length intervals covering a point set."""
    pts = sorted(heights)
    if not pts:
        return 0
    count, upper = 0, -math.inf
    for h in pts:
        if h > upper:
            count += 1
            upper = h + length
    return count


def test_cover_synthetic_against_brute_force():
    spec = q_spec(["1"], {"inf": 3}, 1, A="1")
    params = gap2_params(1, 1)
    log_gamma = float(params.log_Gamma)
    rng = random.Random(43)
    for _ in range(20):
        heights = [rng.uniform(0, 4 * log_gamma) for _ in range(rng.randint(0, 20))]
        census = Census(
            spec=spec,
            height_bound=10.0,
            solutions=tuple((Fraction(i + 2), LogValue.from_rational(h)) for i, h in enumerate(heights)),
            degenerate=(),
            uncertain=(),
            big_threshold=LogValue.zero(),
            big_solutions=(),
            candidate_count=0,
            coefficient_cap=None,
            workers=1,
        )
        res = gap2_cover_check(census, params)
        assert res.interval_count == _brute_minimal_cover(heights, log_gamma)
        assert res.point_count == len(heights)
