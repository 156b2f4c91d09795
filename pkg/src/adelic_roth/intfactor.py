"""Small integer factorization by trial division.

Factors every integer the library meets at desk scale (numerators and
denominators of census candidates, log bases).  Intentionally elementary so
that tests can cross-check it against an external factorization routine.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterator

__all__ = ["factor_int", "is_prime", "primes"]

_FACTOR_LIMIT = 10**13  # trial division stays tolerable up to ~sqrt of this


@lru_cache(maxsize=65536)
def factor_int(n: int) -> Dict[int, int]:
    """Prime factorization of a positive integer as a prime->exponent dict.

    Strips factors below 10**6 first (so large but smooth integers such as
    powers of two factor instantly), then finishes by trial division; refuses
    residues whose square root would make that intolerable.
    """
    if n <= 0:
        raise ValueError("factor_int needs a positive integer")
    out: Dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    step = 2
    while d * d <= n and d < 10**6:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if d * d > n:
        if n > 1:
            out[n] = out.get(n, 0) + 1
        return out
    if n > _FACTOR_LIMIT:
        raise ValueError(f"refusing trial division beyond {_FACTOR_LIMIT} (residue {n})")
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factor_int(n) == {n: 1}


def primes() -> Iterator[int]:
    """All primes in increasing order."""
    yield 2
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2
