"""Proper adelic curves at desk scale: the rationals and rational functions.

A curve packages a field together with a measured family of absolute values
such that the product formula holds exactly:

* ``Q``      — the archimedean place "inf" plus one place per prime, all of
  mass 1.  At a prime p the local log-value of ``a`` is ``-v_p(a)*log(p)``;
  at "inf" it is ``log|a|``.
* ``Q(t)``   — the degree place "deg" plus one place per monic irreducible
  polynomial, all non-archimedean of mass 1.  At a finite place p the local
  log-value is ``-v_p(a)*deg(p)``; at "deg" it is ``deg(num) - deg(den)``.

Both normalizations make ``sum_w mass(w) * log|a|_w`` vanish identically for
every nonzero element, and give ``h(2) = log 2`` on Q and ``h(2) = 0`` on
Q(t), so the height of 2 never exceeds ``log 2``.

Heights integrate the positive part of the local log-value over the whole
place family (every element has finite support, so the integral is a finite
sum).  Elements are ``fractions.Fraction`` values on Q and
``RationalFunction`` values on Q(t); both are exact and immutable, as is
every curve and place, so all operations here are pure functions that can be
shared freely across workers.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple, Union

from .errors import (
    EqualElementsError,
    FiniteHeightBallError,
    UnknownPlaceError,
    ZeroElementError,
)
from .intfactor import factor_int, is_prime, primes
from .logvalue import LOG2, LogValue, Verdict
from .qpoly import QPoly, RationalFunction, ratfunc

__all__ = [
    "Place",
    "AdelicCurve",
    "RationalsCurve",
    "FunctionFieldCurve",
    "curve_by_name",
    "Element",
]

Element = Union[Fraction, RationalFunction]

ARCHIMEDEAN = "archimedean"
NON_ARCHIMEDEAN = "non-archimedean"


@dataclass(frozen=True)
class Place:
    """One absolute value: identifier, kind, measure mass and archimedean exponent."""

    id: str
    kind: str
    mass: Fraction
    arch_exp: Fraction
    prime: int | None = None
    poly: QPoly | None = None

    def __post_init__(self) -> None:
        if self.mass <= 0:
            raise ValueError("place mass must be positive")
        if (self.arch_exp == 0) != (self.kind == NON_ARCHIMEDEAN):
            raise ValueError("arch_exp must vanish exactly at non-archimedean places")

    def sort_key(self):
        if self.prime is not None:
            return (1, self.prime, self.id)
        if self.poly is not None:
            return (1, self.poly.degree(), self.id)
        return (0, 0, self.id)


def arch_exponent(place: Place) -> Fraction:
    """The exponent relating the place to the standard absolute value; 0 off the archimedean part."""
    return place.arch_exp


class AdelicCurve:
    """Shared behaviour of the concrete curves (height, defect, Liouville check)."""

    name: str

    # subclasses provide: element/format/parse, place lookup, local_log_abs,
    # support, height, h2, iter_places, random_element, northcott sampling.

    def element(self, text: str) -> Element:
        raise NotImplementedError

    def place(self, place_id: str) -> Place:
        raise NotImplementedError

    def iter_places(self) -> Iterator[Place]:
        raise NotImplementedError

    def local_log_abs(self, place: Place, a: Element) -> LogValue:
        raise NotImplementedError

    def support(self, a: Element) -> List[Place]:
        raise NotImplementedError

    def height(self, a: Element) -> LogValue:
        raise NotImplementedError

    def h2(self) -> LogValue:
        """Height of the element 2; fixes the normalization of the instance."""
        raise NotImplementedError

    def is_zero(self, a: Element) -> bool:
        raise NotImplementedError

    def format_element(self, a: Element) -> str:
        return str(a)

    def sub(self, a: Element, b: Element) -> Element:
        return a - b

    def product_formula_defect(self, a: Element) -> LogValue:
        """``sum_w mass(w)*log|a|_w`` over the support; zero on a proper curve."""
        self._require_nonzero(a)
        total = LogValue.zero()
        for place in self.support(a):
            total = total + self.local_log_abs(place, a).scaled(place.mass)
        return total

    def liouville_check(
        self,
        alpha: Element,
        beta: Element,
        places: Sequence[Place],
        tol: float = 1e-9,
    ) -> Tuple[LogValue, LogValue, Verdict]:
        """Lower bound for the partial log-distance integral of two distinct elements.

        Returns ``(lhs, rhs, verdict)`` where ``lhs = sum_{w in places}
        mass*log|alpha-beta|_w`` and ``rhs = -log 2 - h(alpha) - h(beta)``;
        the verdict checks ``lhs >= rhs``.
        """
        self._require_nonzero(alpha)
        self._require_nonzero(beta)
        diff = self.sub(alpha, beta)
        if self.is_zero(diff):
            raise EqualElementsError("alpha and beta must be distinct")
        seen = set()
        lhs = LogValue.zero()
        for place in places:
            if place.id in seen:
                continue
            seen.add(place.id)
            lhs = lhs + self.local_log_abs(place, diff).scaled(place.mass)
        rhs = -(LOG2 + self.height(alpha) + self.height(beta))
        return lhs, rhs, lhs.compare_ge(rhs, tol)

    def _require_nonzero(self, a: Element) -> None:
        if self.is_zero(a):
            raise ZeroElementError("operation requires a nonzero element")


class RationalsCurve(AdelicCurve):
    """The rational numbers with the counting measure on {inf} and the primes."""

    name = "Q"

    def __init__(self) -> None:
        self._inf = Place(id="inf", kind=ARCHIMEDEAN, mass=Fraction(1), arch_exp=Fraction(1))

    # -- elements ------------------------------------------------------

    def element(self, text: str) -> Fraction:
        return Fraction(str(text).strip())

    def is_zero(self, a: Element) -> bool:
        return a == 0

    def format_element(self, a: Element) -> str:
        return str(a)

    def random_element(self, rng: random.Random, max_size: int = 10_000) -> Fraction:
        num = 0
        while num == 0:
            num = rng.randint(-max_size, max_size)
        return Fraction(num, rng.randint(1, max_size))

    # -- places ----------------------------------------------------------

    def infinite_place(self) -> Place:
        return self._inf

    def place(self, place_id: str) -> Place:
        place_id = place_id.strip()
        if place_id == "inf":
            return self._inf
        if place_id.isdigit() and is_prime(int(place_id)):
            return self._finite_place(int(place_id))
        raise UnknownPlaceError(f"{place_id!r} is not a place of Q (use 'inf' or a prime)")

    def _finite_place(self, p: int) -> Place:
        return Place(id=str(p), kind=NON_ARCHIMEDEAN, mass=Fraction(1), arch_exp=Fraction(0), prime=p)

    def iter_places(self) -> Iterator[Place]:
        yield self._inf
        for p in primes():
            yield self._finite_place(p)

    # -- local arithmetic --------------------------------------------------

    def local_log_abs(self, place: Place, a: Fraction) -> LogValue:
        self._require_nonzero(a)
        if place.id == "inf":
            return LogValue.log_of_int(abs(a.numerator)) - LogValue.log_of_int(a.denominator)
        if place.prime is None:
            raise UnknownPlaceError(f"{place.id!r} does not belong to Q")
        v = _padic_valuation(a, place.prime)
        return LogValue.log_of_int(place.prime, -v)

    def support(self, a: Fraction) -> List[Place]:
        self._require_nonzero(a)
        ps = set(factor_int(abs(a.numerator))) | set(factor_int(a.denominator))
        out = [self._inf] + [self._finite_place(p) for p in sorted(ps)]
        return out

    def height(self, a: Fraction) -> LogValue:
        """``log max(|num|, den)``: the archimedean positive part plus the denominator primes."""
        self._require_nonzero(a)
        return LogValue.log_of_int(max(abs(a.numerator), a.denominator))

    def h2(self) -> LogValue:
        return LOG2

    def height_ball(self, max_house: int) -> Iterator[Fraction]:
        """All nonzero rationals with ``max(|num|, den) <= max_house``, reduced."""
        from math import gcd

        for q in range(1, max_house + 1):
            for p in range(1, max_house + 1):
                if gcd(p, q) == 1:
                    yield Fraction(p, q)
                    yield Fraction(-p, q)

    def northcott_counterexample(self, bound: float, count: int) -> List[Fraction]:
        """Q satisfies the finite-height-ball property, so this can only ever
        return the finitely many elements below the bound and errors once the
        request exceeds them."""
        if count < 1:
            raise ValueError("count must be >= 1")
        out: List[Fraction] = []
        max_house = _house_from_height_bound(bound)
        for a in sorted(self.height_ball(max_house), key=lambda f: (max(abs(f.numerator), f.denominator), str(f))):
            if float(self.height(a)) <= bound + 1e-12:
                out.append(a)
            if len(out) == count:
                return out
        raise FiniteHeightBallError(
            f"only {len(out)} elements of Q have height <= {bound}; {count} requested"
        )


class FunctionFieldCurve(AdelicCurve):
    """Rational functions in t over Q, with the degree place and the monic irreducibles."""

    name = "Q(t)"

    def __init__(self) -> None:
        self._deg = Place(id="deg", kind=NON_ARCHIMEDEAN, mass=Fraction(1), arch_exp=Fraction(0))

    # -- elements ------------------------------------------------------

    def element(self, text: str) -> RationalFunction:
        return RationalFunction.parse(text)

    def constant(self, c) -> RationalFunction:
        return ratfunc(QPoly.const(c))

    def is_zero(self, a: Element) -> bool:
        return a.is_zero

    def format_element(self, a: Element) -> str:
        return str(a)

    def random_element(self, rng: random.Random, max_deg: int = 3, max_coeff: int = 6) -> RationalFunction:
        while True:
            num = _random_poly(rng, max_deg, max_coeff)
            den = _random_poly(rng, max_deg, max_coeff)
            if not num.is_zero and not den.is_zero:
                return ratfunc(num, den)

    # -- places ----------------------------------------------------------

    def infinite_place(self) -> Place:
        return self._deg

    def place(self, place_id: str) -> Place:
        place_id = place_id.strip()
        if place_id == "deg":
            return self._deg
        try:
            poly = QPoly.parse(place_id)
        except Exception as exc:
            raise UnknownPlaceError(f"{place_id!r} is not a place of Q(t)") from exc
        if not poly.is_monic() or poly.degree() < 1 or not poly.is_irreducible():
            raise UnknownPlaceError(
                f"{place_id!r} is not a monic irreducible polynomial (or 'deg')"
            )
        return self._finite_place(poly)

    def _finite_place(self, poly: QPoly) -> Place:
        return Place(id=str(poly), kind=NON_ARCHIMEDEAN, mass=Fraction(1), arch_exp=Fraction(0), poly=poly)

    def iter_places(self) -> Iterator[Place]:
        """The degree place, then integer-coefficient monic irreducibles by size.

        The full place family (all monic irreducibles with rational
        coefficients) is not sequenceable in any natural order; this walk is
        the countable integer-coefficient subfamily, which is enough for
        demonstrations.  ``place()`` constructs arbitrary places on demand.
        """
        yield self._deg
        for bound in itertools.count(1):
            for deg in range(1, bound + 1):
                for tail in itertools.product(range(-bound, bound + 1), repeat=deg):
                    maxc = max((abs(c) for c in tail), default=0)
                    if deg != bound and maxc != bound:
                        continue  # already yielded at a smaller bound
                    poly = QPoly.from_dict(
                        {deg: Fraction(1), **{i: Fraction(c) for i, c in enumerate(tail)}}
                    )
                    if poly.is_irreducible():
                        yield self._finite_place(poly)

    # -- local arithmetic --------------------------------------------------

    def local_log_abs(self, place: Place, a: RationalFunction) -> LogValue:
        self._require_nonzero(a)
        if place.id == "deg":
            return LogValue.from_rational(a.degree_value())
        if place.poly is None:
            raise UnknownPlaceError(f"{place.id!r} does not belong to Q(t)")
        v = a.valuation(place.poly)
        return LogValue.from_rational(-v * place.poly.degree())

    def support(self, a: RationalFunction) -> List[Place]:
        self._require_nonzero(a)
        polys = {p for p, _ in a.num.factor_monic()} | {p for p, _ in a.den.factor_monic()}
        finite = sorted(polys, key=lambda p: (p.degree(), str(p)))
        return [self._deg] + [self._finite_place(p) for p in finite]

    def height(self, a: RationalFunction) -> LogValue:
        """``max(deg num, deg den)`` for a reduced fraction; an exact integer."""
        self._require_nonzero(a)
        return LogValue.from_rational(max(a.num.degree(), a.den.degree()))

    def h2(self) -> LogValue:
        return LogValue.zero()

    def northcott_counterexample(self, bound: float, count: int) -> List[RationalFunction]:
        """Distinct constants all of height zero: no height ball of Q(t) is finite."""
        if count < 1:
            raise ValueError("count must be >= 1")
        if bound < 0:
            raise FiniteHeightBallError("heights are nonnegative; no elements below a negative bound")
        return [self.constant(k) for k in range(1, count + 1)]


def _padic_valuation(a: Fraction, p: int) -> int:
    v = 0
    num = abs(a.numerator)
    while num % p == 0:
        num //= p
        v += 1
    if v:
        return v
    den = a.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _house_from_height_bound(bound: float) -> int:
    """Largest integer m with log(m) <= bound (within a hair of tolerance)."""
    import math

    if bound < 0:
        return 0
    m = int(math.exp(bound)) + 2
    while m >= 1 and math.log(m) > bound + 1e-12:
        m -= 1
    return m


def _random_poly(rng: random.Random, max_deg: int, max_coeff: int) -> QPoly:
    deg = rng.randint(0, max_deg)
    coeffs = {i: Fraction(rng.randint(-max_coeff, max_coeff)) for i in range(deg + 1)}
    return QPoly.from_dict(coeffs)


_CURVES = {"Q": RationalsCurve, "Q(t)": FunctionFieldCurve}


def curve_by_name(name: str) -> AdelicCurve:
    try:
        return _CURVES[name]()
    except KeyError:
        raise ValueError(f"unknown curve {name!r}; expected 'Q' or 'Q(t)'") from None
