"""Two-variable expansions behind the bracket series and their identity checks.

The central object is the generating kernel whose Taylor coefficients in the
zeta direction reproduce the normalized brackets of every weight at once.
Its honest part is a ZetaQExpansion; the simple pole in the zeta variable
rides along as symbolic metadata ([(1, 1/2)] plain, [(1, 1/2), (p, -1/2)]
regularized) and is never expanded.

All q-exponents in this module live on the 1/24 grid; witness exponents in
the reports are unit exponents except for verify_taylor_chain, which compares
integral-grid bracket series and reports integral q-powers.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

from .arith import is_prime
from .brackets import normalized_qbracket
from .errors import NotAntisymmetricError, TruncationError
from .partitions import beta, c_multisets_of_size
from .series import QExpansion, add, euler_function, multiply, scale
from .theorems import VerificationReport, Witness, _elapsed_ms, first_difference
from .zetaseries import (
    ZetaLaurent,
    ZetaQExpansion,
    divide_antisymmetric,
    one_sided_pole_expansion,
    taylor_extract,
    zeta_filter,
    zeta_substitute,
    zq_add,
    zq_multiply,
)

# Full partition enumeration beyond this many q-powers is off-budget; the
# double-sum expansion has no such limit.
ENUMERATION_BUDGET = 40

HALF = Fraction(1, 2)


def theta1_doubled(truncation: int) -> ZetaQExpansion:
    """Odd theta kernel at doubled elliptic argument.

    Sum over odd j >= 1 of alternating-sign antisymmetric pairs
    (zeta^j - zeta^(-j)) at q-exponent 3 j^2 units; the lowest term is
    (zeta - zeta^(-1)) q^(1/8).
    """
    if truncation < 3:
        raise ValueError(f"truncation must be >= 3 units, got {truncation}")
    regular = {}
    j, sign = 1, 1
    while 3 * j * j < truncation:
        regular[3 * j * j] = ZetaLaurent.antisymmetric(j, sign)
        j += 2
        sign = -sign
    return ZetaQExpansion(regular, truncation)


def partition_zeta_sum(terms: int, p: int | None = None) -> ZetaQExpansion:
    """Sum over partitions of the signed zeta-monomials of the doubled
    diagonal hook coordinates.

    Size-n partitions contribute at q-exponent 24n - 1 units, with odd zeta
    exponents bounded by 2n - 1 in absolute value.  With p given, exponents
    divisible by p are dropped (the regularized kernel).
    """
    _validate_jacobi_prime(p)
    if terms < 0:
        raise ValueError(f"term count must be >= 0, got {terms}")
    truncation = 24 * (terms + 1) - 1
    regular = {}
    for n in range(1, terms + 1):
        acc: dict[int, int] = {}
        for doubled in c_multisets_of_size(n):
            for d in doubled:
                if p is not None and d % p == 0:
                    continue
                acc[d] = acc.get(d, 0) + (1 if d > 0 else -1)
        regular[24 * n - 1] = ZetaLaurent(acc)
    return ZetaQExpansion(regular, truncation)


def _validate_jacobi_prime(p: int | None) -> None:
    if p is not None and (p == 2 or not is_prime(p)):
        raise ValueError(f"regularization modulus {p} is not an odd prime")


def _pole_list(p: int | None) -> tuple[tuple[int, Fraction], ...]:
    if p is None:
        return ((1, HALF),)
    return ((1, HALF), (p, -HALF))


def bracket_generating_regular(
    terms: int, p: int | None = None, method: str = "double_sum"
) -> ZetaQExpansion:
    """Pole-free part of the bracket generating kernel, with the pole list
    attached as metadata.

    "enumerate" builds it as half the eta-weighted partition zeta sum
    (budget-limited); "double_sum" expands the crank-style alternating
    double sum -1/2 sum over n >= 1, m >= 0 of (-1)^n
    (zeta^(2m+1) - zeta^(-2m-1)) q^(n(n+1)/2 + mn), dropping zeta exponents
    divisible by p in the regularized case.  Both land on the integral
    q-grid with truncation 24(terms + 1) - 1 units, and both are
    zeta-antisymmetric at every exponent (checked on construction).
    """
    _validate_jacobi_prime(p)
    if terms < 0:
        raise ValueError(f"term count must be >= 0, got {terms}")
    if method not in ("enumerate", "double_sum"):
        raise ValueError(f"unknown method {method!r}")
    truncation = 24 * (terms + 1) - 1
    if method == "enumerate":
        if terms > ENUMERATION_BUDGET:
            raise ValueError(
                f"enumeration beyond {ENUMERATION_BUDGET} q-powers is off-budget"
            )
        eta = multiply(QExpansion({1: 1}, truncation), euler_function(truncation))
        kernel = zq_multiply(
            ZetaQExpansion.from_q(scale(eta, HALF)), partition_zeta_sum(terms, p)
        )
        regular = kernel.regular
    else:
        entries: dict[int, dict[int, Fraction]] = {}
        n = 1
        while 12 * n * (n + 1) < truncation:
            coeff = HALF if n % 2 else -HALF  # -1/2 times (-1)^n
            e = 12 * n * (n + 1)
            m = 0
            while e < truncation:
                if p is None or (2 * m + 1) % p:
                    acc = entries.setdefault(e, {})
                    acc[2 * m + 1] = acc.get(2 * m + 1, 0) + coeff
                    acc[-(2 * m + 1)] = acc.get(-(2 * m + 1), 0) - coeff
                e += 24 * n
                m += 1
            n += 1
        regular = {e: ZetaLaurent(acc) for e, acc in entries.items()}
    for e, laurent in regular.items():
        if not laurent.is_antisymmetric():
            raise NotAntisymmetricError(e)
    return ZetaQExpansion(regular, truncation, _pole_list(p))


def zeta_series_witness(
    a: ZetaQExpansion, b: ZetaQExpansion, bound: int
) -> Witness | None:
    """First unit exponent below bound where two zeta-series disagree."""
    for e in sorted(set(a.support()) | set(b.support())):
        if e >= bound:
            break
        ca, cb = a.coefficient(e), b.coefficient(e)
        if ca != cb:
            return (e, repr(ca), repr(cb))
    return None


def _identity_report(
    claim: str,
    params: dict[str, int],
    lhs: ZetaQExpansion,
    rhs: ZetaQExpansion,
    started: float,
    pole_witness: Witness | None = None,
) -> VerificationReport:
    bound = min(lhs.truncation, rhs.truncation)
    witness = pole_witness or zeta_series_witness(lhs, rhs, bound)
    verdict = "pass" if witness is None else "fail"
    return VerificationReport(claim, params, bound, verdict, witness, _elapsed_ms(started))


def verify_eq65(truncation: int) -> VerificationReport:
    """The kernel times the doubled theta series is half of eta cubed.

    Both factors are divided by (zeta - zeta^(-1)) first, which clears the
    kernel's pole against the theta zero: twice [1/2 + (zeta - zeta^(-1))
    times the regular kernel] times [theta / (zeta - zeta^(-1))] must equal
    q^(3 units) times the cube of the Euler product, a zeta-free series.
    """
    started = time.perf_counter()
    if truncation < 27:
        raise TruncationError(
            f"need at least 27 units to test a coefficient, got {truncation}"
        )
    terms = truncation // 24
    kernel = bracket_generating_regular(terms, None, "enumerate")
    binomial = ZetaQExpansion(
        {0: ZetaLaurent.antisymmetric(1)}, kernel.truncation
    )
    cleared = zq_add(
        ZetaQExpansion({0: ZetaLaurent.constant(HALF)}, kernel.truncation),
        zq_multiply(binomial, kernel.without_pole()),
    )
    lhs = 2 * zq_multiply(cleared, divide_antisymmetric(theta1_doubled(truncation)))
    cube = euler_function(truncation) ** 3
    rhs = ZetaQExpansion.from_q(multiply(QExpansion({3: 1}, truncation), cube))
    params = {"truncation_units": truncation, "terms": terms}
    return _identity_report("eq65", params, lhs, rhs, started)


def verify_prop21(p: int, terms: int) -> VerificationReport:
    """The regularized kernel is the coprime zeta-filter of the plain one.

    Checks, on the enumerated kernels: (i) keeping zeta exponents coprime
    to p reproduces the regularized kernel exactly; (ii) the divisible part
    is the exact complement; (iii) the one-sided expansion of the pole
    1/(2(zeta - zeta^(-1))) filters to the one-sided expansion of
    1/(2(zeta^p - zeta^(-p))), consistent with the attached pole lists.
    The pure-zeta check (iii) reports witness exponent -1 on failure.
    """
    started = time.perf_counter()
    _validate_jacobi_prime(p)
    if p is None:
        raise ValueError("a prime is required")
    params = {"p": p, "terms": terms}
    plain = bracket_generating_regular(terms, None, "enumerate").without_pole()
    regularized = bracket_generating_regular(terms, p, "enumerate").without_pole()
    bound = min(plain.truncation, regularized.truncation)
    witness = zeta_series_witness(
        zeta_filter(plain, p, "coprime"), regularized, bound
    )
    if witness is None:
        complement = zq_add(plain, -1 * regularized)
        witness = zeta_series_witness(
            zeta_filter(plain, p, "divisible"), complement, bound
        )
    if witness is None:
        cap = max(2 * terms + 1, 3 * p)
        filtered = (HALF * one_sided_pole_expansion(1, cap)).filter_exponents(
            p, "divisible"
        )
        expected = HALF * one_sided_pole_expansion(p, cap)
        if filtered != expected:
            witness = (-1, repr(filtered), repr(expected))
    verdict = "pass" if witness is None else "fail"
    return VerificationReport(
        "prop21", params, bound, verdict, witness, _elapsed_ms(started)
    )


def _divisible_rows_double_sum(p: int, truncation: int) -> ZetaQExpansion:
    """Rows of the kernel double sum with row index coprime to p and zeta
    exponent a multiple of p: -1/2 sum over such n and M >= 0 of (-1)^n
    (zeta^(p(2M+1)) - zeta^(-p(2M+1))) q^(12 n (n + p(2M+1)) units)."""
    entries: dict[int, dict[int, Fraction]] = {}
    n = 1
    while 12 * n * (n + p) < truncation:
        if n % p:
            coeff = HALF if n % 2 else -HALF
            e = 12 * n * (n + p)
            j = p
            while e < truncation:
                acc = entries.setdefault(e, {})
                acc[j] = acc.get(j, 0) + coeff
                acc[-j] = acc.get(-j, 0) - coeff
                e += 24 * n * p
                j += 2 * p
        n += 1
    return ZetaQExpansion(
        {e: ZetaLaurent(acc) for e, acc in entries.items()}, truncation
    )


def verify_diffexp(p: int, terms: int) -> VerificationReport:
    """The p-divisible part of the plain kernel splits into a rescaled copy
    of the kernel plus an explicit theta-like double sum.

    Regular parts: filtering the plain kernel to zeta exponents divisible
    by p must equal the substitution zeta -> zeta^p, q -> q^(p^2) applied
    to the kernel (computed at ceil(terms / p^2) q-powers) plus the
    coprime-row double sum.  The pole bookkeeping matches structurally: the
    substitution maps the pole (1, 1/2) to (p, 1/2), which is exactly the
    divisible part of the one-sided pole expansion (see verify_prop21).
    """
    started = time.perf_counter()
    _validate_jacobi_prime(p)
    if p is None:
        raise ValueError("a prime is required")
    params = {"p": p, "terms": terms}
    plain = bracket_generating_regular(terms, None, "double_sum").without_pole()
    lhs = zeta_filter(plain, p, "divisible")
    inner_terms = -(-terms // (p * p))
    inner = bracket_generating_regular(inner_terms, None, "double_sum")
    shifted = zeta_substitute(inner, p, p * p)
    pole_witness = None
    if shifted.pole != ((p, HALF),):
        pole_witness = (-1, repr(shifted.pole), repr(((p, HALF),)))
    rhs = zq_add(
        shifted.without_pole(), _divisible_rows_double_sum(p, lhs.truncation)
    )
    return _identity_report("diffexp", params, lhs, rhs, started, pole_witness)


def verify_taylor_chain(k: int, terms: int, p: int = 5) -> VerificationReport:
    """Collapsing the kernel at weight k recovers the bracket series.

    For the plain kernel and the regularized one at p: the double-sum
    kernel, zeta^m collapsed to m^(k-1) and shifted by the constant
    -B_k (2^(k-1) - 1) / (2k) (Bernoulli value regularized for the second
    case), must equal the fast bracket series of weight k.  Odd k makes
    both sides zero.  Witness exponents are integral q-powers.
    """
    started = time.perf_counter()
    if k < 1:
        raise ValueError(f"weight must be >= 1, got {k}")
    _validate_jacobi_prime(p)
    if p is None:
        raise ValueError("a prime is required")
    params = {"k": k, "terms": terms, "p": p}
    norm = Fraction(2) ** (k - 2) * math.factorial(k - 1)
    for prime in (None, p):
        kernel = bracket_generating_regular(terms, prime, "double_sum")
        extracted = taylor_extract(kernel.without_pole(), k)
        constant = QExpansion({0: norm * beta(k, prime)}, extracted.truncation)
        witness = first_difference(
            add(constant, extracted), normalized_qbracket(k, terms, prime)
        )
        if witness is not None:
            return VerificationReport(
                "taylor-chain", params, terms + 1, "fail", witness, _elapsed_ms(started)
            )
    return VerificationReport(
        "taylor-chain", params, terms + 1, "pass", None, _elapsed_ms(started)
    )
