#!/usr/bin/env python3
"""Walkthrough: the inequality system, membership verdicts, and a census.

The system asks a nonzero beta to be simultaneously close to every target
alpha_i at every place of S:

    |beta - alpha_i|_w <= (A * H(beta))^(-theta(w)),

with sum(mass*theta) >= 2 + epsilon.  For A < 1 the right side is weak for
small heights and solutions abound; at A = 1 the system is a genuine
approximation constraint and desk-scale censuses come out empty or tiny.
"""

import math
from fractions import Fraction

from adelic_roth import (
    RationalsCurve,
    enumerate_solutions,
    is_solution,
    make_spec,
    nearest_alpha_assignment,
    roth_defect,
    validate_spec,
)

Q = RationalsCurve()

spec_strict = make_spec(Q, ["1"], ["inf"], {"inf": 3}, epsilon=1, A="1")
spec_loose = make_spec(Q, ["1"], ["inf"], {"inf": 3}, epsilon=1, A="1/8")

print("Validation of the A = 1 instance:")
report = validate_spec(spec_strict)
print(f"  ok={report.ok}, n={report.n}, N={report.N}, theta integral={report.theta_integral}")

print("\nMembership verdicts at A = 1/8:")
for text in ["3/2", "2", "1", "17"]:
    print(f"  beta = {text:>4}: {is_solution(spec_loose, Q.element(text))}")

print("\nCensus at A = 1, height bound log 20:")
census = enumerate_solutions(spec_strict, math.log(20))
print(f"  candidates={census.candidate_count}, solutions={len(census.solutions)} (empty: Roth regime)")

print("\nCensus at A = 1/8, height bound log 8:")
census = enumerate_solutions(spec_loose, math.log(8))
print(f"  candidates={census.candidate_count}, solutions={len(census.solutions)}")
smallest = [str(e) for e, _ in census.solutions[:8]]
print(f"  lowest-height solutions: {smallest}")
print(f"  big-solution threshold {float(census.big_threshold):+.4f} (negative: all are big)")

print("\nNormalized approximation sums (where the normalizer is positive):")
shown = 0
for beta, h in census.solutions:
    if float(spec_loose.log_A + h) <= 0:
        continue
    assignment = nearest_alpha_assignment(spec_loose, beta)
    defect = roth_defect(spec_loose, beta, assignment)
    print(f"  beta={str(beta):>6}  h={float(h):.4f}  defect={float(defect):+.4f}  (<= -3)")
    shown += 1
    if shown == 5:
        break
if shown == 0:
    print("  none at this height bound; raise it to log 20 to see defects")
    census20 = enumerate_solutions(spec_loose, math.log(20))
    for beta, h in census20.solutions:
        if float(spec_loose.log_A + h) > 0:
            assignment = nearest_alpha_assignment(spec_loose, beta)
            print(f"  beta={str(beta):>6}  defect={float(roth_defect(spec_loose, beta, assignment)):+.4f}")
            break
