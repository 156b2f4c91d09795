"""Log-space numbers with exact symbolic parts and certified comparisons.

Every quantity this library manipulates (local log-values, heights, the
thresholds of the gap principles) is a real number of the form

    r + sum_i c_i * log(b_i) + x

where ``r`` and the coefficients ``c_i`` are rationals, the bases ``b_i``
are primes, and ``x`` is an optional inexact float summand (only quotient
operations produce one).  Keeping the first two parts exact means that
strict inequalities never flip because of rounding: a comparison is decided
by evaluating an enclosure of the difference at increasing precision, and
it returns a three-valued verdict instead of silently picking a side near
the boundary.

Comparison semantics, given an absolute tolerance ``tol``:

* difference certainly above ``tol``           -> decisive,
* difference certainly below ``-tol``          -> decisive,
* difference symbolically equal to zero        -> equality (certain),
* enclosure inside the band ``[-tol, tol]``    -> uncertain,
* precision exhausted without separation       -> uncertain.

Exact equality is a *pass* for non-strict predicates and *uncertain* for
strict ones, so "exactly at the threshold" never silently passes a strict
check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Tuple

import mpmath

from .intfactor import factor_int

__all__ = ["LogValue", "Verdict", "LOG2", "LOG4", "set_default_precision", "default_precision"]

_MAX_PRECISION = 65536
_default_precision = 128

Scalar = int | Fraction


def set_default_precision(bits: int) -> None:
    """Set the starting precision for evaluations and sign decisions.

    Comparisons still escalate beyond it when an enclosure cannot separate
    the sides.  Intended to be called once at startup (it is plain module
    state); the default is 128 bits.
    """
    global _default_precision
    _default_precision = max(53, int(bits))


def default_precision() -> int:
    return _default_precision


def _precision_ladder():
    prec = _default_precision
    while prec < _MAX_PRECISION:
        yield prec
        prec *= 4
    yield _MAX_PRECISION


class Verdict(enum.Enum):
    """Outcome of a tolerance-aware comparison or of a compound check."""

    PASS = "pass"
    FAIL = "fail"
    UNCERTAIN = "uncertain"
    DEGENERATE = "degenerate"

    def __str__(self) -> str:  # keeps report rendering terse
        return self.value


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # floats are dyadic rationals; the conversion is exact
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class LogValue:
    """An exact-first real number ``rational + sum c*log(p) + approx``."""

    rational: Fraction = Fraction(0)
    logs: Tuple[Tuple[int, Fraction], ...] = ()
    approx: float = 0.0
    approx_err: float = 0.0

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LogValue":
        return _ZERO

    @staticmethod
    def from_rational(x) -> "LogValue":
        return LogValue(rational=_as_fraction(x))

    @staticmethod
    def from_log_terms(terms: Mapping[int, Scalar] | Iterable[Tuple[int, Scalar]]) -> "LogValue":
        """Build ``sum c*log(p)`` from prime->coefficient pairs (bases must be prime)."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for base, coeff in items:
            _accumulate_log(acc, base, _as_fraction(coeff))
        return LogValue(logs=_freeze_logs(acc))

    @staticmethod
    def log_of_int(m: int, coeff: Scalar = 1) -> "LogValue":
        """Exact ``coeff * log(m)`` for a positive integer ``m``, on a prime basis."""
        if m <= 0:
            raise ValueError("log_of_int needs a positive integer")
        if m == 1:
            return _ZERO
        c = _as_fraction(coeff)
        acc: dict[int, Fraction] = {}
        for p, e in factor_int(m).items():
            _accumulate_log(acc, p, e * c)
        return LogValue(logs=_freeze_logs(acc))

    @staticmethod
    def log_of_rational(x, coeff: Scalar = 1) -> "LogValue":
        """Exact ``coeff * log(x)`` for a positive rational ``x``."""
        x = _as_fraction(x)
        if x <= 0:
            raise ValueError("log_of_rational needs a positive rational")
        c = _as_fraction(coeff)
        return LogValue.log_of_int(x.numerator, c) + LogValue.log_of_int(x.denominator, -c)

    @staticmethod
    def inexact(value: float, err: float = 0.0) -> "LogValue":
        return LogValue(approx=float(value), approx_err=abs(float(err)))

    # -- structure ----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.approx == 0.0 and self.approx_err == 0.0

    @property
    def is_exact_zero(self) -> bool:
        return self.is_exact and self.rational == 0 and not self.logs

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "LogValue") -> "LogValue":
        if not isinstance(other, LogValue):
            return NotImplemented
        if other.is_exact_zero:
            return self
        if self.is_exact_zero:
            return other
        if not other.logs:
            logs = self.logs
        elif not self.logs:
            logs = other.logs
        else:
            acc = dict(self.logs)
            for base, coeff in other.logs:
                _accumulate_log(acc, base, coeff)
            logs = _freeze_logs(acc)
        if not self.rational:
            rational = other.rational
        elif not other.rational:
            rational = self.rational
        else:
            rational = self.rational + other.rational
        return LogValue(
            rational=rational,
            logs=logs,
            approx=self.approx + other.approx,
            approx_err=self.approx_err + other.approx_err,
        )

    def __sub__(self, other: "LogValue") -> "LogValue":
        return self + (-other)

    def __neg__(self) -> "LogValue":
        return LogValue(
            rational=-self.rational,
            logs=tuple((b, -c) for b, c in self.logs),
            approx=-self.approx,
            approx_err=self.approx_err,
        )

    def scaled(self, k) -> "LogValue":
        """Multiply by an exact rational scalar."""
        k = _as_fraction(k)
        if k == 0:
            return _ZERO
        if k == 1:
            return self
        if self.approx == 0.0 and self.approx_err == 0.0:
            approx = approx_err = 0.0
        else:  # scalars can exceed float range only on fully exact values
            approx = self.approx * float(k)
            approx_err = self.approx_err * abs(float(k))
        return LogValue(
            rational=self.rational * k,
            logs=tuple((b, c * k) for b, c in self.logs),
            approx=approx,
            approx_err=approx_err,
        )

    def div(self, other: "LogValue", prec: int | None = None) -> "LogValue":
        """Numeric quotient self/other as an inexact value with a tracked error bound.

        The divisor must be certainly nonzero at the working precision.
        """
        if prec is None:
            prec = _default_precision
        nv, ne = self.eval(prec)
        dv, de = other.eval(prec)
        if abs(dv) <= de:
            raise ZeroDivisionError("divisor indistinguishable from zero")
        q = nv / dv
        err = (ne + abs(q) * de) / (abs(dv) - de)
        out = float(q)
        err_f = float(err) + abs(out) * 2.0**-50
        return LogValue.inexact(out, err_f)

    # -- evaluation ---------------------------------------------------

    def eval(self, prec: int | None = None):
        """Evaluate to an ``(mpf value, mpf error-bound)`` enclosure at ``prec`` bits."""
        if prec is None:
            prec = _default_precision
        with mpmath.workprec(prec + 16):
            total = mpmath.mpf(0)
            magnitude = mpmath.mpf(0)
            if self.rational:
                if self.rational.denominator == 1:
                    r = mpmath.mpf(self.rational.numerator)
                else:
                    r = mpmath.mpf(self.rational.numerator) / self.rational.denominator
                total += r
                magnitude += abs(r)
            for base, coeff in self.logs:
                term = mpmath.log(base) * mpmath.mpf(coeff.numerator) / coeff.denominator
                total += term
                magnitude += abs(term)
            rounding = (magnitude + abs(total)) * mpmath.mpf(2) ** (-prec) * (4 * (len(self.logs) + 2))
            err = rounding + mpmath.mpf(self.approx_err)
            total += mpmath.mpf(self.approx)
            return total, err

    def __float__(self) -> float:
        return float(self.eval()[0])

    # -- comparisons ----------------------------------------------------

    def sign(self, tol: float = 1e-9):
        """Classify this value against the band ``[-tol, tol]``.

        Returns ``+1`` (certainly above the band), ``-1`` (certainly below),
        ``0`` for symbolic zero, or ``None`` when the value lies in the band
        or cannot be separated from it at the maximum working precision.
        """
        if self.is_exact_zero:
            return 0
        tol = abs(tol)
        if self.is_exact:
            s = self._bracket_sign(Fraction(tol) if tol else Fraction(0))
            if s is not NotImplemented:
                return s
        for prec in _precision_ladder():
            v, e = self.eval(prec)
            if v - e > tol:
                return +1
            if v + e < -tol:
                return -1
            if abs(v) + e <= tol:
                return None
            if self.approx_err and e <= mpmath.mpf(self.approx_err) * 1.0000001:
                return None  # enclosure is as tight as the inexact part allows
        return None

    def _bracket_sign(self, tol: Fraction):
        """Cheap exact bracketing of the sign using per-base log bounds.

        ``(bits(b)-1)*log 2 <= log b < bits(b)*log 2`` gives rational lower
        and upper bounds for the log part without any multiprecision work;
        values whose rational part dominates (the astronomically large
        factorial-scale quantities) are decided here in integer arithmetic.
        Returns ``NotImplemented`` when the bracket straddles the band.
        """
        dominated = self._dominance_sign(tol)
        if dominated is not NotImplemented:
            return dominated
        lo = hi = self.rational
        for base, coeff in self.logs:
            bits = base.bit_length()
            ub = bits * _LN2_UB
            lb = (bits - 1) * _LN2_LB
            if coeff > 0:
                lo += coeff * lb
                hi += coeff * ub
            else:
                lo += coeff * ub
                hi += coeff * lb
        if lo > tol:
            return +1
        if hi < -tol:
            return -1
        if -tol <= lo and hi <= tol:
            return None
        return NotImplemented

    def _dominance_sign(self, tol: Fraction):
        """Decide the sign from bit lengths alone when the rational part towers
        over the log part; ``int.bit_length`` is O(1), so this never touches
        the (possibly hundred-thousand-digit) integers themselves."""
        r = self.rational
        if not r:
            return NotImplemented
        # |r| >= 2**rb_lo
        rb_lo = r.numerator.bit_length() - r.denominator.bit_length() - 1
        if rb_lo < 8:
            return NotImplemented
        # |log part| <= sum |c| * bits(b) <= 2**sb_hi
        sb_hi = 0
        for base, coeff in self.logs:
            cb = coeff.numerator.bit_length() - coeff.denominator.bit_length() + 1
            sb_hi = max(sb_hi, cb + base.bit_length().bit_length() + 1)
        if self.logs:
            sb_hi += len(self.logs).bit_length()
        tol_bits = 1
        if tol > 0:
            tol_bits = tol.numerator.bit_length() - tol.denominator.bit_length() + 1
        if rb_lo > sb_hi + 2 and rb_lo - 1 > tol_bits:
            return 1 if r > 0 else -1
        return NotImplemented

    def compare_le(self, other: "LogValue", tol: float = 1e-9) -> Verdict:
        """Three-valued ``self <= other``; exact equality passes."""
        d = self - other
        s = d.sign(tol)
        if s == 0:
            return Verdict.PASS
        if s is None:
            return Verdict.UNCERTAIN
        return Verdict.PASS if s < 0 else Verdict.FAIL

    def compare_lt(self, other: "LogValue", tol: float = 1e-9) -> Verdict:
        """Three-valued ``self < other``; exact equality is uncertain."""
        d = self - other
        s = d.sign(tol)
        if s is None or s == 0:
            return Verdict.UNCERTAIN
        return Verdict.PASS if s < 0 else Verdict.FAIL

    def compare_ge(self, other: "LogValue", tol: float = 1e-9) -> Verdict:
        return other.compare_le(self, tol)

    def compare_gt(self, other: "LogValue", tol: float = 1e-9) -> Verdict:
        return other.compare_lt(self, tol)

    def __repr__(self) -> str:
        parts = []
        if self.rational:
            parts.append(str(self.rational))
        for base, coeff in self.logs:
            parts.append(f"{coeff}*log({base})")
        if self.approx or self.approx_err:
            parts.append(f"~{self.approx!r}")
        body = " + ".join(parts) if parts else "0"
        return f"LogValue({body} = {float(self):.12g})"


def _accumulate_log(acc: dict[int, Fraction], base: int, coeff: Fraction) -> None:
    if base < 2:
        raise ValueError("log bases must be integers >= 2")
    new = acc.get(base, Fraction(0)) + coeff
    if new:
        acc[base] = new
    else:
        acc.pop(base, None)


def _freeze_logs(acc: dict[int, Fraction]) -> Tuple[Tuple[int, Fraction], ...]:
    return tuple(sorted(acc.items()))


_ZERO = LogValue()

# rational brackets of log 2, used by the integer fast path of sign()
_LN2_LB = Fraction(693147, 10**6)
_LN2_UB = Fraction(693148, 10**6)

LOG2 = LogValue.log_of_int(2)
LOG4 = LogValue.log_of_int(4)
