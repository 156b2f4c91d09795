#!/usr/bin/env python3
"""Walkthrough: places, local log-values, heights, and the product formula.

Two proper adelic curves ship with the library:

* Q     -- the place "inf" plus one place per prime;
* Q(t)  -- the degree place "deg" plus one place per monic irreducible.

For every nonzero element, only finitely many places see it (its support),
and the mass-weighted local log-values over the support sum to zero exactly.
"""

import random
from fractions import Fraction

from adelic_roth import FunctionFieldCurve, RationalsCurve

Q = RationalsCurve()
QT = FunctionFieldCurve()


def banner(text):
    print("\n" + "=" * 72)
    print(text)
    print("=" * 72)


banner("Local log-values of 12/5 over Q")
a = Fraction(12, 5)
for place in Q.support(a):
    value = Q.local_log_abs(place, a)
    print(f"  place {place.id:>4}  mass {place.mass}  log|a|_w = {float(value):+.6f}")
defect = Q.product_formula_defect(a)
print(f"  sum over the support: {float(defect):+.6f}  (exactly zero: {defect.is_exact_zero})")

banner("The same bookkeeping for t/(t+1) over Q(t)")
f = QT.element("(t)/(t + 1)")
for place in QT.support(f):
    value = QT.local_log_abs(place, f)
    print(f"  place {place.id:>6}  log|f|_w = {float(value):+.6f}")
print(f"  defect exactly zero: {QT.product_formula_defect(f).is_exact_zero}")

banner("Heights")
for text in ["3/2", "12/5", "-7", "1"]:
    e = Q.element(text)
    print(f"  h({text:>5}) over Q    = {float(Q.height(e)):.6f}")
for text in ["t^3", "(t^2 + 1)/(t)", "5"]:
    e = QT.element(text)
    print(f"  h({text:>13}) over Q(t) = {float(QT.height(e)):.6f}")
print(f"  normalization: h(2) = {float(Q.h2()):.6f} on Q, {float(QT.h2()):.6f} on Q(t)")

banner("Randomized product-formula check (200 elements per curve)")
rng = random.Random(1)
exact = 0
for _ in range(200):
    if Q.product_formula_defect(Q.random_element(rng)).is_exact_zero:
        exact += 1
for _ in range(200):
    if QT.product_formula_defect(QT.random_element(rng)).is_exact_zero:
        exact += 1
print(f"  {exact}/400 defects are exactly zero")
