"""Exact scalar arithmetic: Bernoulli numbers, totient, Legendre symbol, p-adic valuation.

Every value is an exact ``fractions.Fraction`` (or int); no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, inf

__all__ = [
    "is_prime",
    "bernoulli",
    "regularized_bernoulli",
    "totient",
    "legendre",
    "padic_valuation",
]

# Cache of even-index Bernoulli numbers B_0, B_2, B_4, ...
_BERNOULLI_EVEN: list[Fraction] = [Fraction(1)]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24 with the fixed base set)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k in the convention with B_2 = 1/6.

    Only even k (and k = 0) are in contract; odd k is rejected.  Computed by the
    binomial recurrence sum_{j<=m} C(m+1, j) B_j = 0 restricted to even indices
    (odd Bernoulli numbers beyond B_1 vanish, and B_1 enters as -1/2).
    """
    if k < 0 or k % 2 != 0:
        raise ValueError(f"bernoulli is defined here for even k >= 0, got {k}")
    m = k // 2
    while len(_BERNOULLI_EVEN) <= m:
        n = 2 * len(_BERNOULLI_EVEN)
        s = Fraction(n + 1, -2)  # B_1 term: C(n+1, 1) * (-1/2)
        for j in range(len(_BERNOULLI_EVEN)):
            s += comb(n + 1, 2 * j) * _BERNOULLI_EVEN[j]
        _BERNOULLI_EVEN.append(-s / (n + 1))
    return _BERNOULLI_EVEN[m]


def regularized_bernoulli(k: int, p: int) -> Fraction:
    """(1 - p^(k-1)) * B_k, the Euler-factor-removed Bernoulli value at the prime p."""
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if k < 2 or k % 2 != 0:
        raise ValueError(f"regularized Bernoulli value needs even k >= 2, got {k}")
    return (1 - p ** (k - 1)) * bernoulli(k)


def totient(n: int) -> int:
    """Euler's totient of n >= 1, by trial-division factorization."""
    if n < 1:
        raise ValueError(f"totient needs n >= 1, got {n}")
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            result -= result // d
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        result -= result // m
    return result


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p; values in {-1, 0, 1}."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def padic_valuation(x: Fraction | int, p: int) -> int | float:
    """v_p of a rational: valuation of numerator minus valuation of denominator.

    Returns +infinity for x = 0, so `padic_valuation(x, p) >= r` reads as
    `x = 0 mod p^r` uniformly.
    """
    x = Fraction(x)
    if x == 0:
        return inf

    def _vp(n: int) -> int:
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return v

    return _vp(abs(x.numerator)) - _vp(x.denominator)
