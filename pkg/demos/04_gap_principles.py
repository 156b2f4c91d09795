#!/usr/bin/env python3
"""Walkthrough: both gap principles on censuses and matrices.

The ratio gap says big-enough solutions have height ratio >= 1 + eps/2.
The h-gap property of a target/candidate matrix compares the column weights

    log rho_j  = 2 N! log 4 + h(beta_j) + (2 N!/n) sum_h h(alpha_hj)
    log rho'_j =   N! log 4 + h(beta_j) + (N!/(2n)) sum_h h(alpha_hj)

of consecutive columns against 1/(4 n N^2 N!), with exact factorials; a
column pair exactly at the threshold is reported uncertain, never passed.
"""

import math
from fractions import Fraction

from adelic_roth import (
    FunctionFieldCurve,
    GapMatrix,
    RationalsCurve,
    column_bounding_check,
    enumerate_solutions,
    gap1_sweep,
    h_gap_check,
    log_rho,
    make_spec,
)

Q = RationalsCurve()
QT = FunctionFieldCurve()

print("Ratio-gap sweep over a census (A = 1/8, bound log 8):")
spec = make_spec(Q, ["1"], ["inf"], {"inf": 3}, epsilon=1, A="1/8")
census = enumerate_solutions(spec, math.log(8))
results = gap1_sweep(census)
applicable = sum(r.applicable for r in results)
fails = sum(str(r.verdict) == "fail" for r in results)
print(f"  adjacent big pairs: {len(results)}, applicable: {applicable}, violations: {fails}")
print(f"  applicability floor here: h >= {float(results[0].threshold):.3f}"
      f" (desk censuses sit far below it)")

print("\nColumn weights of a 1x2 matrix over Q(t) with betas (t, t^300):")
one = QT.element("1")
matrix = GapMatrix(QT, [(one, one)], (QT.element("t"), QT.element("t^300")))
for j in (1, 2):
    first, second = log_rho(matrix, j)
    print(f"  column {j}: log rho = {float(first):9.4f}, log rho' = {float(second):9.4f}")
result = h_gap_check(matrix)
print(f"  h-gap threshold 1/{result.threshold.denominator}, ratio {result.ratios[0]:.5f}: {result.verdict}")

print("\nThe same with betas (t, t^100): the gap is too small:")
close = GapMatrix(QT, [(one, one)], (QT.element("t"), QT.element("t^100")))
print(f"  ratio {h_gap_check(close).ratios[0]:.5f}: {h_gap_check(close).verdict}")

print("\nA pair engineered to sit exactly at the threshold (over Q):")
tie = GapMatrix(Q, [(Fraction(1), Fraction(1))], (Fraction(2), Fraction(2) ** 284))
res = h_gap_check(tie)
print(f"  betas (2, 2^284): ratio = 1/32 exactly: {res.verdict} (strictness is never rounded away)")

print("\nColumn bounding for the 1x1 matrix alpha=1, beta=3/2 over Q:")
m = GapMatrix(Q, [(Fraction(1),)], (Fraction(3, 2),))
for theta in (0.1, 0.2):
    res = column_bounding_check(m, {"inf": theta}, {1: ["inf"]})
    print(f"  theta(inf) = {theta}: {res.verdict} (capacity is -log|1 - 3/2| / log 48 = 0.17905)")
