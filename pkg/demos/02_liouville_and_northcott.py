#!/usr/bin/env python3
"""Walkthrough: the integral Liouville lower bound and the Northcott property.

Two distinct elements cannot be too close at too many places: over any
finite place set U,

    sum_{w in U} mass(w) * log|alpha - beta|_w  >=  -log 2 - h(alpha) - h(beta).

Q(t) shows why counting solutions by height alone is hopeless without extra
hypotheses: every rational constant has height zero, so height balls are
infinite (the Northcott property fails), yet the counting bound of the main
pipeline never uses Northcott.
"""

import random
from fractions import Fraction

from adelic_roth import FiniteHeightBallError, FunctionFieldCurve, RationalsCurve

Q = RationalsCurve()
QT = FunctionFieldCurve()

print("Liouville lower bound, a worked pair over Q:")
lhs, rhs, verdict = Q.liouville_check(Fraction(1), Fraction(3, 2), [Q.place("inf")])
print(f"  alpha=1, beta=3/2, U={{inf}}: lhs={float(lhs):+.6f} >= rhs={float(rhs):+.6f}: {verdict}")

print("\n2000 random pairs over each curve:")
rng = random.Random(2)
q_places = [Q.place(p) for p in ["inf", "2", "3", "5", "7"]]
worst = float("inf")
for _ in range(2000):
    a, b = Q.random_element(rng, 300), Q.random_element(rng, 300)
    if a == b:
        continue
    sub = rng.sample(q_places, rng.randint(0, 5))
    lhs, rhs, verdict = Q.liouville_check(a, b, sub)
    assert str(verdict) == "pass"
    worst = min(worst, float(lhs) - float(rhs))
print(f"  Q:    0 violations; smallest margin {worst:.4f}")

qt_places = [QT.place(p) for p in ["deg", "t", "t + 1", "t - 1"]]
worst = float("inf")
for _ in range(2000):
    a, b = QT.random_element(rng), QT.random_element(rng)
    if a == b:
        continue
    sub = rng.sample(qt_places, rng.randint(0, 4))
    lhs, rhs, verdict = QT.liouville_check(a, b, sub)
    assert str(verdict) == "pass"
    worst = min(worst, float(lhs) - float(rhs))
print(f"  Q(t): 0 violations; smallest margin {worst:.4f}")

print("\nHeight balls:")
print("  over Q, the ball h <= 0 holds exactly", len(Q.northcott_counterexample(0.0, 2)), "elements:")
print("   ", [str(e) for e in Q.northcott_counterexample(0.0, 2)])
try:
    Q.northcott_counterexample(0.0, 3)
except FiniteHeightBallError as exc:
    print(f"  asking Q for a third: {exc}")

consts = QT.northcott_counterexample(0.0, 10)
print("  over Q(t), ten of the infinitely many height-zero elements:")
print("   ", [str(c) for c in consts])
print("  (any count works; the height ball is infinite, Northcott fails)")
