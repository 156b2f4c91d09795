"""Census reports: one JSON body plus a CSV solutions table.

Reports carry every intermediate quantity a reviewer needs to hand-check a
verdict (h(2), thresholds, N, log Gamma, per-pair ratios), are free of
timestamps, and render with sorted keys so byte-identical inputs produce
byte-identical bodies regardless of worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Dict, List, Optional

from . import __version__
from .errors import DegenerateBetaError, NonpositiveDenominatorError
from .gaps import (
    CoverResult,
    Gap1Result,
    count_bound,
    gap1_sweep,
    gap2_cover_check,
    gap2_params,
)
from .logvalue import Verdict
from .system import Census, SpecValidation, nearest_alpha_assignment, roth_defect

__all__ = ["build_report", "render_json", "render_csv", "run_census_checks"]

CSV_HEADER = ["element", "height", "is_big", "defect"]


def _verdict_str(v: Optional[Verdict]) -> Optional[str]:
    return None if v is None else v.value


def _json_ratio(ratio: Optional[float]):
    if ratio is None or math.isfinite(ratio):
        return ratio
    return "inf"


def run_census_checks(census: Census) -> Dict:
    """All derived verdicts for a finished census (ratio sweep, cover, count)."""
    spec = census.spec
    params = gap2_params(spec.n, spec.epsilon)
    sweep = gap1_sweep(census)
    cover = gap2_cover_check(census, params)
    bound, n_param = count_bound(spec)
    big_count = len(census.big_solutions)
    return {
        "params": params,
        "sweep": sweep,
        "cover": cover,
        "bound": bound,
        "N": n_param,
        "count_ok": big_count < bound,
        "sweep_violations": sum(1 for r in sweep if r.verdict == Verdict.FAIL),
        "sweep_uncertain": sum(1 for r in sweep if r.verdict == Verdict.UNCERTAIN),
    }


def _solution_rows(census: Census) -> List[Dict]:
    spec = census.spec
    curve = spec.curve
    big = {curve.format_element(e) for e, _ in census.big_solutions}
    rows = []
    for element, height in census.solutions:
        name = curve.format_element(element)
        try:
            assignment = nearest_alpha_assignment(spec, element)
            defect: Optional[float] = float(roth_defect(spec, element, assignment))
        except (NonpositiveDenominatorError, DegenerateBetaError):
            defect = None
        rows.append(
            {
                "element": name,
                "height": float(height),
                "is_big": name in big,
                "defect": defect,
            }
        )
    return rows


def build_report(config_echo: Dict, validation: SpecValidation, census: Optional[Census]) -> Dict:
    """Assemble the full report body; census may be None when validation failed."""
    body: Dict = {
        "tool": {"name": "adelic-roth", "version": __version__},
        "config": config_echo,
        "validation": {
            "ok": validation.ok,
            "violations": list(validation.violations),
            "n": validation.n,
            "N": validation.N,
            "theta_integral": float(validation.theta_integral),
            "log_A": validation.log_A,
            "epsilon": float(validation.epsilon),
        },
    }
    if census is None:
        body["verdicts"] = {"validation": "fail", "overall": "fail"}
        return body

    spec = census.spec
    checks = run_census_checks(census)
    sweep: List[Gap1Result] = checks["sweep"]
    cover: CoverResult = checks["cover"]
    curve = spec.curve

    body["census"] = {
        "height_bound": census.height_bound,
        "candidates": census.candidate_count,
        "coefficient_cap": census.coefficient_cap,
        "h2": float(curve.h2()),
        "big_threshold": float(census.big_threshold),
        "solutions": _solution_rows(census),
        "degenerate": [curve.format_element(e) for e in census.degenerate],
        "uncertain": [curve.format_element(e) for e in census.uncertain],
        "solution_count": len(census.solutions),
        "big_count": len(census.big_solutions),
    }
    body["gap1"] = {
        "threshold": float(sweep[0].threshold) if sweep else None,
        "pairs": [
            {
                "lo": curve.format_element(r.beta_lo),
                "hi": curve.format_element(r.beta_hi),
                "h_lo": float(r.h_lo),
                "h_hi": float(r.h_hi),
                "ratio": _json_ratio(r.ratio),
                "applicable": r.applicable,
                "verdict": _verdict_str(r.verdict),
            }
            for r in sweep
        ],
        "violations": checks["sweep_violations"],
        "uncertain": checks["sweep_uncertain"],
    }
    body["gap2"] = {
        "log_gamma": float(checks["params"].log_Gamma),
        "intervals": [list(iv) for iv in cover.cover.intervals],
        "interval_count": cover.interval_count,
        "max_intervals": cover.max_intervals,
        "capacity_per_interval": cover.cover.capacity_per_interval,
        "points": cover.point_count,
        "verdict": cover.verdict.value,
    }
    body["count_bound"] = {
        "N": checks["N"],
        "bound": checks["bound"],
        "big_count": len(census.big_solutions),
        "verdict": "pass" if checks["count_ok"] else "fail",
    }
    verdicts = {
        "validation": "pass" if validation.ok else "fail",
        "gap1_sweep": "pass" if checks["sweep_violations"] == 0 else "fail",
        "gap2_cover": cover.verdict.value,
        "count_bound": "pass" if checks["count_ok"] else "fail",
    }
    verdicts["overall"] = "pass" if all(v == "pass" for v in verdicts.values()) else "fail"
    body["verdicts"] = verdicts
    return body


def render_json(body: Dict) -> str:
    return json.dumps(body, sort_keys=True, indent=2, allow_nan=False) + "\n"


def render_csv(body: Dict) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in body.get("census", {}).get("solutions", []):
        writer.writerow(
            [
                row["element"],
                repr(row["height"]),
                "1" if row["is_big"] else "0",
                "" if row["defect"] is None else repr(row["defect"]),
            ]
        )
    return out.getvalue()
