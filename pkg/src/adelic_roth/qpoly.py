"""Sparse univariate polynomials over the rationals, in the variable t.

The sparse representation (exponent -> coefficient) matters: the gap-matrix
checkers work with monomial-shift elements like ``c*t^k + d`` whose exponents
are integers with hundreds of thousands of digits, far beyond any dense
coefficient vector.  All arithmetic that those elements need (addition,
multiplication, valuation at ``t``, degree) stays cheap in the number of
nonzero terms.

Irreducible factorization over Q delegates to sympy; everything downstream
of the factor list (valuations, supports, heights) is computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from .errors import CapacityExceededError, ParseError

__all__ = ["QPoly", "RationalFunction", "ratfunc"]

_DIVISION_STEP_LIMIT = 200_000
_FACTOR_DEGREE_LIMIT = 10_000


def _coeff(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"bad coefficient {x!r}")


@dataclass(frozen=True)
class QPoly:
    """Immutable sparse polynomial; ``terms`` is sorted by exponent, coeffs nonzero."""

    terms: Tuple[Tuple[int, Fraction], ...] = ()

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_dict(d: Dict[int, Fraction]) -> "QPoly":
        items = tuple(sorted((e, _coeff(c)) for e, c in d.items() if c))
        for e, _ in items:
            if e < 0:
                raise ValueError("negative exponent")
        return QPoly(items)

    @staticmethod
    def from_coeffs(coeffs: Iterable) -> "QPoly":
        """Build from a low-to-high dense coefficient list."""
        return QPoly.from_dict({e: _coeff(c) for e, c in enumerate(coeffs)})

    @staticmethod
    def const(c) -> "QPoly":
        c = _coeff(c)
        return QPoly(((0, c),)) if c else QPoly()

    @staticmethod
    def gen() -> "QPoly":
        return _T

    @staticmethod
    def monomial(exp: int, c=1) -> "QPoly":
        c = _coeff(c)
        if exp < 0:
            raise ValueError("negative exponent")
        return QPoly(((exp, c),)) if c else QPoly()

    # -- structure -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        return self.terms == ((0, Fraction(1)),)

    @property
    def is_const(self) -> bool:
        return len(self.terms) == 0 or (len(self.terms) == 1 and self.terms[0][0] == 0)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    def leading_coeff(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[-1][1]

    def constant_coeff(self) -> Fraction:
        if self.terms and self.terms[0][0] == 0:
            return self.terms[0][1]
        return Fraction(0)

    def val_at_gen(self) -> int:
        """Order of vanishing at t = 0 (the minimum exponent); raises on zero."""
        if not self.terms:
            raise ValueError("valuation of the zero polynomial")
        return self.terms[0][0]

    def is_monic(self) -> bool:
        return bool(self.terms) and self.terms[-1][1] == 1

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "QPoly") -> "QPoly":
        acc = dict(self.terms)
        for e, c in other.terms:
            new = acc.get(e, Fraction(0)) + c
            if new:
                acc[e] = new
            else:
                acc.pop(e, None)
        return QPoly(tuple(sorted(acc.items())))

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __neg__(self) -> "QPoly":
        return QPoly(tuple((e, -c) for e, c in self.terms))

    def __mul__(self, other: "QPoly") -> "QPoly":
        if self.is_zero or other.is_zero:
            return QPoly()
        acc: Dict[int, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                new = acc.get(e, Fraction(0)) + c1 * c2
                if new:
                    acc[e] = new
                else:
                    acc.pop(e, None)
        return QPoly(tuple(sorted(acc.items())))

    def scaled(self, k) -> "QPoly":
        k = _coeff(k)
        if not k:
            return QPoly()
        return QPoly(tuple((e, c * k) for e, c in self.terms))

    def __pow__(self, n: int) -> "QPoly":
        if n < 0:
            raise ValueError("negative power")
        out = QPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def shifted(self, k: int) -> "QPoly":
        """Multiply by t**k."""
        if k < 0:
            raise ValueError("negative shift")
        return QPoly(tuple((e + k, c) for e, c in self.terms))

    def divmod(self, other: "QPoly") -> Tuple["QPoly", "QPoly"]:
        """Euclidean division; bounded in the number of quotient terms."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return QPoly(), QPoly()
        dd = other.degree()
        lead = other.leading_coeff()
        rem = dict(self.terms)
        quo: Dict[int, Fraction] = {}
        steps = 0
        while rem:
            e = max(rem)
            if e < dd:
                break
            steps += 1
            if steps > _DIVISION_STEP_LIMIT:
                raise CapacityExceededError("polynomial division exceeded the step limit")
            c = rem[e] / lead
            quo[e - dd] = c
            for e2, c2 in other.terms:
                ee = e - dd + e2
                new = rem.get(ee, Fraction(0)) - c * c2
                if new:
                    rem[ee] = new
                else:
                    rem.pop(ee, None)
        return QPoly(tuple(sorted(quo.items()))), QPoly(tuple(sorted(rem.items())))

    def monic(self) -> "QPoly":
        if self.is_zero:
            return self
        lc = self.leading_coeff()
        return self if lc == 1 else self.scaled(1 / lc)

    def gcd(self, other: "QPoly") -> "QPoly":
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero else a

    def evaluate(self, x) -> Fraction:
        x = _coeff(x)
        if self.degree() > 100_000:
            raise CapacityExceededError("evaluation degree limit")
        total = Fraction(0)
        for e, c in self.terms:
            total += c * x**e
        return total

    # -- valuation and factorization ------------------------------------

    def valuation(self, p: "QPoly") -> int:
        """Multiplicity of the monic irreducible ``p`` in this nonzero polynomial."""
        if self.is_zero:
            raise ValueError("valuation of the zero polynomial")
        if p.terms == _T.terms:
            return self.val_at_gen()
        if self.is_monomial:
            return 0  # monomials factor as c * t^k only
        v = 0
        cur = self
        while True:
            q, r = cur.divmod(p)
            if not r.is_zero:
                return v
            v += 1
            cur = q
            if cur.is_const:
                return v

    def factor_monic(self) -> List[Tuple["QPoly", int]]:
        """Monic irreducible factors with multiplicities (unit factor dropped)."""
        if self.is_zero:
            raise ValueError("cannot factor zero")
        if self.is_const:
            return []
        if self.is_monomial:
            return [(_T, self.terms[0][0])] if self.terms[0][0] > 0 else []
        if self.degree() > _FACTOR_DEGREE_LIMIT:
            raise CapacityExceededError("factorization degree limit")
        return list(_factor_cached(self.monic().terms))

    def is_irreducible(self) -> bool:
        if self.degree() < 1:
            return False
        factors = self.factor_monic()
        return len(factors) == 1 and factors[0][1] == 1

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        chunks: List[str] = []
        for e, c in reversed(self.terms):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if a == 1 else f"{a}*{var}"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    @staticmethod
    def parse(text: str) -> "QPoly":
        """Parse expanded-form polynomials like ``2*t^3 - t + 4/3``."""
        return _parse_poly(text)


_T = QPoly(((1, Fraction(1)),))


@lru_cache(maxsize=8192)
def _factor_cached(terms: Tuple[Tuple[int, Fraction], ...]) -> Tuple[Tuple[QPoly, int], ...]:
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * t**e for e, c in terms)
    _, factors = sympy.Poly(expr, t, domain="QQ").factor_list()
    out: List[Tuple[QPoly, int]] = []
    for poly, mult in factors:
        monic = poly.monic()
        d = {int(e[0]): Fraction(int(q.numerator), int(q.denominator)) for e, q in monic.terms()}
        out.append((QPoly.from_dict(d), int(mult)))
    out.sort(key=lambda fm: (fm[0].degree(), str(fm[0])))
    return tuple(out)


# -- element fractions ---------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """A reduced fraction of polynomials; denominator monic, coprime to the numerator."""

    num: QPoly
    den: QPoly

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_const(self) -> bool:
        return self.num.is_const and self.den.is_one

    def as_const(self) -> Fraction:
        if not self.is_const:
            raise ValueError("not a constant")
        return self.num.constant_coeff()

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return ratfunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return ratfunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return ratfunc(self.num * other.num, self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def inverse(self) -> "RationalFunction":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return ratfunc(self.den, self.num)

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        return ratfunc(self.num**n, self.den**n)

    def valuation(self, p: QPoly) -> int:
        if self.is_zero:
            raise ValueError("valuation of zero")
        v = self.num.valuation(p)
        if not self.den.is_one:
            v -= self.den.valuation(p)
        return v

    def degree_value(self) -> int:
        """deg(num) - deg(den), the negative of the valuation at infinity."""
        if self.is_zero:
            raise ValueError("degree of zero")
        return self.num.degree() - self.den.degree()

    def __str__(self) -> str:
        return f"({self.num})/({self.den})"

    @staticmethod
    def parse(text: str) -> "RationalFunction":
        return _parse_ratfunc(text)


def ratfunc(num: QPoly, den: QPoly | None = None) -> RationalFunction:
    """Canonicalize a polynomial fraction (reduce, make the denominator monic)."""
    if den is None:
        den = QPoly.const(1)
    if den.is_zero:
        raise ZeroDivisionError("zero denominator")
    if num.is_zero:
        return RationalFunction(QPoly(), QPoly.const(1))
    if not den.is_const:
        g = num.gcd(den)
        if g.degree() > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
    lc = den.leading_coeff()
    if lc != 1:
        num = num.scaled(1 / lc)
        den = den.scaled(1 / lc)
    return RationalFunction(num, den)


# -- parsing ---------------------------------------------------------------


def _parse_poly(text: str) -> QPoly:
    s = text.strip().replace("**", "^")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1].strip()
    if not s:
        raise ParseError("empty polynomial")
    if "(" in s or ")" in s:
        raise ParseError(f"polynomials must be in expanded form: {text!r}")
    terms: Dict[int, Fraction] = {}
    for chunk in _signed_chunks(s):
        e, c = _parse_term(chunk)
        terms[e] = terms.get(e, Fraction(0)) + c
    return QPoly.from_dict(terms)


def _signed_chunks(s: str) -> List[str]:
    """Split an expanded, paren-free sum at its top-level + and - signs."""
    out: List[str] = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur.strip() and cur.rstrip()[-1] not in "+-*/^":
            out.append(cur)
            cur = ch
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    if not out:
        raise ParseError(f"cannot parse polynomial {s!r}")
    return out


def _parse_term(chunk: str) -> Tuple[int, Fraction]:
    s = chunk.replace(" ", "")
    sign = Fraction(1)
    while s and s[0] in "+-":
        if s[0] == "-":
            sign = -sign
        s = s[1:]
    if not s:
        raise ParseError(f"dangling sign in {chunk!r}")
    coeff = Fraction(1)
    exp = 0
    for factor in s.split("*"):
        if not factor:
            raise ParseError(f"empty factor in {chunk!r}")
        if factor[0] == "t":
            if factor == "t":
                exp += 1
            elif factor.startswith("t^"):
                try:
                    exp += int(factor[2:])
                except ValueError as exc:
                    raise ParseError(f"bad exponent in {chunk!r}") from exc
            else:
                raise ParseError(f"bad variable factor {factor!r}")
        else:
            try:
                coeff *= Fraction(factor)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad coefficient {factor!r}") from exc
    if exp < 0:
        raise ParseError(f"negative exponent in {chunk!r}")
    return exp, sign * coeff


def _parse_ratfunc(text: str) -> RationalFunction:
    s = text.strip()
    num_s, den_s = _split_fraction(s)
    num = _parse_poly(num_s)
    den = _parse_poly(den_s) if den_s is not None else QPoly.const(1)
    if den.is_zero:
        raise ParseError("zero denominator")
    return ratfunc(num, den)


def _split_fraction(s: str) -> Tuple[str, str | None]:
    """Split ``(num)/(den)`` at a top-level slash adjacent to parentheses.

    Slashes inside coefficients ("1/2*t") never touch a parenthesis, so a
    polynomial fraction is only recognized when written with parenthesized
    numerator or denominator.
    """
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            before = s[:i].rstrip()
            after = s[i + 1 :].lstrip()
            if before.endswith(")") or after.startswith("("):
                return s[:i], s[i + 1 :]
    return s, None
