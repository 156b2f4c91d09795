"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a single PASS line once its criterion holds, so a verbose
run doubles as the acceptance protocol.  Run with::

    pytest tests/test_acceptance.py -v -s

The certificate sweep (criterion 8) checks a thousand factorial-scale
matrices and is the longest item, a few minutes of wall time on four workers.
"""

import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd, log

import mpmath
import pytest

import battery
import certsynth
from adelic_roth import (
    FunctionFieldCurve,
    RationalsCurve,
    Verdict,
    count_bound,
    dyson_bound,
    enumerate_solutions,
    gap1_sweep,
    gap2_cover_check,
    gap2_params,
    h_gap_check,
    is_solution,
    roth_defect,
    validate_spec,
)
from adelic_roth.cli import main as cli_main
from adelic_roth.logvalue import LOG2

Q = RationalsCurve()
QT = FunctionFieldCurve()


def _report(name: str, detail: str = "") -> None:
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {name}: PASS{suffix}")


@pytest.fixture(scope="module")
def battery_specs():
    return [battery.make_battery_spec(d) for d in battery.Q_SPECS] + [
        battery.make_battery_spec({**d, "curve": "Q(t)"}) for d in battery.QT_SPECS
    ]


@pytest.fixture(scope="module")
def battery_censuses(battery_specs):
    out = []
    for spec in battery_specs:
        if spec.curve.name == "Q":
            out.append(enumerate_solutions(spec, log(20)))
        else:
            out.append(enumerate_solutions(spec, 1.0, coefficient_cap=2))
    return out


def test_criterion_01_product_formula_random_elements():
    start = time.perf_counter()
    rng_q = __import__("random").Random(101)
    for _ in range(1000):
        defect = Q.product_formula_defect(Q.random_element(rng_q, max_size=10_000))
        assert defect.is_exact_zero or abs(float(defect)) <= 1e-9
    rng_t = __import__("random").Random(102)
    for _ in range(1000):
        defect = QT.product_formula_defect(QT.random_element(rng_t, max_deg=3, max_coeff=6))
        assert defect.is_exact_zero or abs(float(defect)) <= 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"product formula sweep took {elapsed:.2f}s"
    _report("product formula (2x1000 random elements)", f"{elapsed:.2f}s")


def test_criterion_02_normalization():
    dq = Q.h2() - LOG2
    assert dq.is_exact_zero  # h(2) = log 2 on Q, exactly
    assert QT.h2().is_exact_zero  # h(2) = 0 on Q(t), exactly
    for curve in (Q, QT):
        assert float(curve.h2()) <= log(2) + 1e-12
    _report("normalization h(2)")


def test_criterion_03_liouville_random_triples():
    import random

    rng = random.Random(103)
    q_places = [Q.place(p) for p in ["inf", "2", "3", "5", "7", "11", "13"]]
    violations = 0
    for _ in range(10_000):
        a = Q.random_element(rng, 500)
        b = Q.random_element(rng, 500)
        while b == a:
            b = Q.random_element(rng, 500)
        sub = rng.sample(q_places, rng.randint(0, len(q_places)))
        _, _, verdict = Q.liouville_check(a, b, sub)
        if verdict == Verdict.FAIL:
            violations += 1
    qt_places = [QT.place(p) for p in ["deg", "t", "t + 1", "t - 1", "t + 2", "t^2 + 1"]]
    for _ in range(10_000):
        a = QT.random_element(rng, max_deg=2, max_coeff=4)
        b = QT.random_element(rng, max_deg=2, max_coeff=4)
        while b == a:
            b = QT.random_element(rng, max_deg=2, max_coeff=4)
        sub = rng.sample(qt_places, rng.randint(0, len(qt_places)))
        _, _, verdict = QT.liouville_check(a, b, sub)
        if verdict == Verdict.FAIL:
            violations += 1
    assert violations == 0
    _report("Liouville inequality (2x10000 random triples)")


def _oracle_census(spec, height_bound):
    house = int(math.exp(height_bound) + 0.5)
    while math.log(house) > height_bound + 1e-12:
        house -= 1
    found = []
    for p in range(-house, house + 1):
        for q in range(1, house + 1):
            if p == 0 or gcd(abs(p), q) != 1 or max(abs(p), q) > house:
                continue
            beta = Fraction(p, q)
            if is_solution(spec, beta) == Verdict.PASS:
                found.append(beta)
    return sorted(found, key=lambda b: (float(spec.curve.height(b)), str(b)))


def test_criterion_04_oracle_equivalence():
    start = time.perf_counter()
    specs = [battery.make_battery_spec(d) for d in battery.Q_SPECS]
    assert len(specs) >= 20
    for spec in specs:
        census = enumerate_solutions(spec, log(20))
        assert census.solution_elements() == _oracle_census(spec, log(20))
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"oracle sweep took {elapsed:.2f}s"
    _report(f"oracle equivalence ({len(specs)} specs, bound log 20)", f"{elapsed:.2f}s")


def test_criterion_05_defect_sweep(battery_censuses):
    checked = 0
    for census in battery_censuses:
        spec = census.spec
        place_ids = [p.id for p in spec.places]
        for element, height in census.solutions:
            if (spec.log_A + height).sign(spec.tolerance) != 1:
                continue
            for combo in itertools.product(spec.alphas, repeat=len(place_ids)):
                assignment = dict(zip(place_ids, combo))
                defect = float(roth_defect(spec, element, assignment))
                assert defect <= -(2 + float(spec.epsilon)) + 1e-9
                checked += 1
    assert checked > 0
    _report("normalized-defect sweep", f"{checked} (solution, assignment) pairs")


def test_criterion_06_gap1_sweep(battery_censuses):
    a_values = {float(c.spec.log_A) for c in battery_censuses}
    assert any(a <= 0 for a in a_values) and any(a > 0 for a in a_values)
    pairs = violations = 0
    for census in battery_censuses:
        if float(census.big_threshold) <= 0:
            # A <= 1 regimes: the big-solution threshold is zero or below,
            # so the sweep runs over every solution
            assert len(census.big_solutions) == len(census.solutions)
        for result in gap1_sweep(census):
            pairs += 1
            if result.verdict == Verdict.FAIL:
                violations += 1
    assert violations == 0
    _report("ratio-gap sweep", f"{pairs} adjacent big pairs, 0 violations")


def test_criterion_07_constants_reproduction():
    params = gap2_params(1, 1)
    assert params.N == 306
    assert dyson_bound(1, 306) == pytest.approx(2.3331, abs=1e-3)

    one = QT.element("1")
    from adelic_roth import GapMatrix

    matrix = GapMatrix(QT, [(one, one)], (QT.element("t"), QT.element("t^300")))
    assert h_gap_check(matrix).threshold == Fraction(1, 32)

    # independent oracle: assemble the bound from a high-precision log sum
    with mpmath.workprec(128):
        log_gamma = mpmath.log(8) + 2 * mpmath.log(306) + mpmath.fsum(
            mpmath.log(k) for k in range(2, 307)
        )
        oracle = 305 * (1 + log_gamma / mpmath.log(mpmath.mpf(3) / 2))
    spec = battery.make_battery_spec(battery.Q_SPECS[0])
    bound, N = count_bound(spec)
    assert N == 306
    assert abs(bound - float(oracle)) / float(oracle) < 1e-6
    _report("closed-form constants", f"N=306, bound={bound:.6g}")


def test_criterion_08_certificate_sweep():
    seeds = list(range(1000))
    chunks = [seeds[i : i + 25] for i in range(0, len(seeds), 25)]
    with ProcessPoolExecutor(max_workers=4) as pool:
        tallies = list(pool.map(certsynth.run_certificates, chunks))
    total = sum(t["total"] for t in tallies)
    met = sum(t["hypotheses_met"] for t in tallies)
    violations = sum(t["violations"] for t in tallies)
    assert total == 1000
    assert met == 1000  # hypotheses hold by construction
    assert violations == 0
    _report("certificate sweep", "1000 matrices, all hypotheses met, 0 violations")


def test_criterion_09_counting_bound_end_to_end(tmp_path, capsys, battery_censuses):
    # library-level: count bound and interval cover on every battery census
    for census in battery_censuses:
        bound, _ = count_bound(census.spec)
        assert len(census.big_solutions) < bound
        cover = gap2_cover_check(census)
        assert cover.interval_count <= cover.max_intervals
        assert validate_spec(census.spec).ok

    # CLI-level: every battery config exits 0 with all verdicts passing
    definitions = [(d, log(8)) for d in battery.Q_SPECS]
    definitions += [({**d, "curve": "Q(t)"}, 1.0) for d in battery.QT_SPECS]
    for idx, (definition, bound) in enumerate(definitions):
        cfg = tmp_path / f"battery_{idx}.toml"
        cfg.write_text(battery.battery_toml(definition, bound))
        out = tmp_path / f"out_{idx}"
        code = cli_main(["census", "--config", str(cfg), "--out", str(out)])
        assert code == 0, f"battery config {idx} exited {code}"
        body = json.loads((out / "report.json").read_text())
        assert body["verdicts"]["overall"] == "pass"
        assert body["count_bound"]["big_count"] < body["count_bound"]["bound"]
        assert body["gap2"]["interval_count"] <= body["gap2"]["max_intervals"]
    capsys.readouterr()
    _report("counting bound end to end", f"{len(definitions)} configs, exit 0")


def test_criterion_10_determinism(tmp_path, capsys):
    cfg = tmp_path / "det.toml"
    cfg.write_text(battery.battery_toml(battery.Q_SPECS[1], log(8)))
    bodies = []
    for run, workers in enumerate((1, 1, 4, 4)):
        out = tmp_path / f"det_out_{run}"
        code = cli_main(
            ["census", "--config", str(cfg), "--workers", str(workers), "--out", str(out)]
        )
        assert code == 0
        bodies.append((out / "report.json").read_bytes() + (out / "solutions.csv").read_bytes())
    capsys.readouterr()
    assert len(set(bodies)) == 1
    _report("determinism", "byte-identical reports across runs and worker counts")
