"""Truncated exact power series in q^(1/24).

Every exponent is an integer on the 1/24 grid: the stored unit u stands for
q^(u/24), so the eta prefactor q^(1/24) is 1 unit and an honest q^n is 24n
units.  A series carries an exclusive truncation bound and keeps only nonzero
coefficients below it.  Coefficients are exact (int or Fraction).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Union

from .arith import is_prime, padic_valuation
from .errors import IntegralityError, NotInvertibleError, TruncationError

Scalar = Union[int, Fraction]

__all__ = [
    "QExpansion",
    "CongruenceCheck",
    "add",
    "multiply",
    "scale",
    "invert",
    "substitute_power",
    "euler_function",
    "congruent_mod",
]


class QExpansion:
    """Sparse truncated series: exponent -> coefficient, exponents in [0, truncation)."""

    __slots__ = ("terms", "truncation")

    def __init__(self, terms: dict[int, Scalar], truncation: int):
        if truncation < 1:
            raise ValueError(f"truncation must be >= 1, got {truncation}")
        clean: dict[int, Scalar] = {}
        for e, c in terms.items():
            if c == 0:
                continue
            if e < 0:
                raise ValueError(f"negative exponent {e} is out of contract")
            if e < truncation:
                clean[e] = c
        self.terms = clean
        self.truncation = truncation

    @classmethod
    def zero(cls, truncation: int) -> "QExpansion":
        return cls({}, truncation)

    @classmethod
    def one(cls, truncation: int) -> "QExpansion":
        return cls({0: 1}, truncation)

    @classmethod
    def monomial(cls, exponent: int, truncation: int, coefficient: Scalar = 1) -> "QExpansion":
        return cls({exponent: coefficient}, truncation)

    def coefficient(self, exponent: int) -> Scalar:
        if exponent >= self.truncation:
            raise TruncationError(
                f"exponent {exponent} is at or beyond truncation {self.truncation}"
            )
        return self.terms.get(exponent, 0)

    def support(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        """True when every exponent sits on the integral grid (multiples of 24)."""
        return all(e % 24 == 0 for e in self.terms)

    def truncated(self, truncation: int) -> "QExpansion":
        t = min(self.truncation, truncation)
        return QExpansion(self.terms, t)

    def agrees_with(self, other: "QExpansion", bound: int | None = None) -> bool:
        """Coefficientwise equality below bound (default: the joint truncation)."""
        t = min(self.truncation, other.truncation)
        if bound is not None:
            if bound > t:
                raise TruncationError(f"agreement bound {bound} exceeds truncation {t}")
            t = bound
        for e in set(self.terms) | set(other.terms):
            if e < t and self.terms.get(e, 0) != other.terms.get(e, 0):
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self.truncation == other.truncation and self.terms == other.terms

    def __hash__(self):
        return hash((self.truncation, frozenset(self.terms.items())))

    def __add__(self, other: "QExpansion") -> "QExpansion":
        return add(self, other)

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return add(self, scale(other, -1))

    def __neg__(self) -> "QExpansion":
        return scale(self, -1)

    def __mul__(self, other: Union["QExpansion", Scalar]) -> "QExpansion":
        if isinstance(other, QExpansion):
            return multiply(self, other)
        return scale(self, other)

    def __rmul__(self, other: Scalar) -> "QExpansion":
        return scale(self, other)

    def __pow__(self, n: int) -> "QExpansion":
        if n < 0:
            return invert(self**-n)
        result = QExpansion.one(self.truncation)
        base = self
        while n:
            if n & 1:
                result = multiply(result, base)
            base = multiply(base, base) if n > 1 else base
            n >>= 1
        return result

    def __repr__(self) -> str:
        parts = []
        for e in self.support()[:6]:
            parts.append(f"{self.terms[e]}*q^({e}/24)")
        body = " + ".join(parts) if parts else "0"
        if len(self.terms) > 6:
            body += " + ..."
        return f"QExpansion({body}; T={self.truncation})"


class CongruenceCheck(NamedTuple):
    ok: bool
    witness: int | None  # least failing exponent when ok is False


def add(a: QExpansion, b: QExpansion) -> QExpansion:
    t = min(a.truncation, b.truncation)
    terms = dict(a.terms)
    for e, c in b.terms.items():
        terms[e] = terms.get(e, 0) + c
    return QExpansion(terms, t)


def scale(a: QExpansion, c: Scalar) -> QExpansion:
    if c == 0:
        return QExpansion.zero(a.truncation)
    return QExpansion({e: v * c for e, v in a.terms.items()}, a.truncation)


def multiply(a: QExpansion, b: QExpansion) -> QExpansion:
    t = min(a.truncation, b.truncation)
    if len(b.terms) < len(a.terms):
        a, b = b, a
    b_items = sorted(b.terms.items())
    out: dict[int, Scalar] = {}
    for ea, ca in a.terms.items():
        cap = t - ea
        for eb, cb in b_items:
            if eb >= cap:
                break
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return QExpansion(out, t)


def invert(a: QExpansion) -> QExpansion:
    c0 = a.terms.get(0, 0)
    if c0 == 0:
        raise NotInvertibleError("leading coefficient at exponent 0 is zero")
    inv0 = Fraction(1) / c0 if c0 != 1 else 1
    tail = sorted((e, c) for e, c in a.terms.items() if e > 0)
    coeffs: dict[int, Scalar] = {0: inv0}
    for e in range(1, a.truncation):
        s: Scalar = 0
        for ea, ca in tail:
            if ea > e:
                break
            prev = coeffs.get(e - ea, 0)
            if prev != 0:
                s += ca * prev
        if s != 0:
            coeffs[e] = -s * inv0
    return QExpansion(coeffs, a.truncation)


def substitute_power(a: QExpansion, m: int) -> QExpansion:
    """q -> q^m: exponent e becomes m*e and the truncation scales to m*T."""
    if m < 1:
        raise ValueError(f"substitution power must be >= 1, got {m}")
    return QExpansion({m * e: c for e, c in a.terms.items()}, m * a.truncation)


def euler_function(truncation: int) -> QExpansion:
    """Product over n of (1 - q^n), expanded by the pentagonal number theorem.

    Exponents land at 24 * j(3j-1)/2 for j = 0, 1, -1, 2, -2, ... with sign (-1)^j.
    """
    if truncation < 1:
        raise ValueError(f"truncation must be >= 1, got {truncation}")
    terms: dict[int, Scalar] = {0: 1}
    j = 1
    while True:
        hit = False
        for g in (j * (3 * j - 1) // 2, j * (3 * j + 1) // 2):
            e = 24 * g
            if e < truncation:
                terms[e] = -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        j += 1
    return QExpansion(terms, truncation)


def congruent_mod(
    a: QExpansion, b: QExpansion, p: int, r: int, bound: int
) -> CongruenceCheck:
    """Coefficientwise congruence mod p^r below the exponent bound.

    Requires every compared coefficient to be p-integral; reports the least
    exponent where the congruence fails.
    """
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if r < 1:
        raise ValueError(f"power r must be >= 1, got {r}")
    t = min(a.truncation, b.truncation)
    if bound > t:
        raise TruncationError(f"congruence bound {bound} exceeds truncation {t}")
    exponents = sorted(e for e in set(a.terms) | set(b.terms) if e < bound)
    for e in exponents:
        ca = a.terms.get(e, 0)
        cb = b.terms.get(e, 0)
        for c in (ca, cb):
            if c != 0 and padic_valuation(c, p) < 0:
                raise IntegralityError(e, f"coefficient {c} at exponent {e} is not {p}-integral")
        if ca != cb and padic_valuation(ca - cb, p) < r:
            return CongruenceCheck(False, e)
    return CongruenceCheck(True, None)
