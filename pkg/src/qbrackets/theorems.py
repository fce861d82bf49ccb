"""Structured verification of the bracket congruence and identity claims.

Every check returns a VerificationReport: a claim identifier, the integer
parameters it ran with, the truncation window, a three-way verdict, and on
failure a witness coefficient pair.  Hypothesis violations yield the verdict
"not-applicable" rather than a vacuous pass.

Witness exponents and the truncation field are integral q-powers throughout
this module (the compared series all live on the integral grid).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .arith import is_prime, legendre, padic_valuation, totient
from .brackets import correction_term, normalized_qbracket
from .modforms import filtration, quasi_decompose, quasimodular_monomials
from .series import QExpansion, add, congruent_mod, scale, substitute_power

CLAIMS = (
    "thm-a",
    "thm-b",
    "thm-c",
    "thm-e",
    "support-e",
    "eq-remark",
    "eq65",
    "prop21",
    "diffexp",
    "oracle",
    "taylor-chain",
)

VERDICTS = ("pass", "fail", "not-applicable")

ORACLE_PRIMES = (None, 5, 7)

Witness = tuple[int, str, str]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one mechanized claim check.

    witness is (exponent, lhs value, rhs value) for the first discrepancy;
    elapsed is wall-clock milliseconds and is excluded from serialization.
    """

    claim: str
    parameters: dict[str, int]
    truncation: int
    verdict: str
    witness: Witness | None = None
    elapsed: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.claim not in CLAIMS:
            raise ValueError(f"unknown claim identifier {self.claim!r}")
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fail" and self.witness is None:
            raise ValueError("a failing report must carry a witness")
        if self.verdict == "pass" and self.truncation < 1:
            raise ValueError("a passing report must record a positive truncation")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _elapsed_ms(started: float) -> int:
    return int(round((time.perf_counter() - started) * 1000.0))


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")


def _require_even_weight(k: int) -> None:
    if k < 2 or k % 2:
        raise ValueError(f"weight must be even and >= 2, got {k}")


def first_difference(a: QExpansion, b: QExpansion) -> Witness | None:
    """First integral q-power below the joint truncation where a and b differ."""
    bound = min(a.truncation, b.truncation)
    for e in sorted(set(a.terms) | set(b.terms)):
        if e >= bound:
            break
        ca, cb = a.terms.get(e, 0), b.terms.get(e, 0)
        if ca != cb:
            return (e // 24, str(ca), str(cb))
    return None


def check_thm_a(p: int, r: int, k1: int, k2: int, terms: int) -> VerificationReport:
    """Regularized brackets of weights congruent mod phi(p^r) agree mod p^r.

    Hypotheses: p >= 5, both weights differ from 0 mod (p-1), and
    k1 == k2 mod phi(p^r); otherwise the claim does not apply.
    """
    started = time.perf_counter()
    _require_prime(p)
    _require_even_weight(k1)
    _require_even_weight(k2)
    if r < 1:
        raise ValueError(f"power r must be >= 1, got {r}")
    params = {"p": p, "r": r, "k1": k1, "k2": k2, "terms": terms}
    applicable = (
        p >= 5
        and k1 % (p - 1) != 0
        and k2 % (p - 1) != 0
        and (k1 - k2) % totient(p**r) == 0
    )
    if not applicable:
        return VerificationReport(
            "thm-a", params, 0, "not-applicable", None, _elapsed_ms(started)
        )
    a = normalized_qbracket(k1, terms, p)
    b = normalized_qbracket(k2, terms, p)
    result = congruent_mod(a, b, p, r, min(a.truncation, b.truncation))
    if result.ok:
        return VerificationReport(
            "thm-a", params, terms + 1, "pass", None, _elapsed_ms(started)
        )
    e = result.witness
    witness = (e // 24, str(a.coefficient(e)), str(b.coefficient(e)))
    return VerificationReport(
        "thm-a", params, terms + 1, "fail", witness, _elapsed_ms(started)
    )


def check_thm_b(p: int, k: int, i_max: int, terms: int) -> VerificationReport:
    """Finite stages of the p-adic limit: the plain bracket of weight
    k + phi(p^i) matches the regularized weight-k bracket mod p^i.

    i_max = 0 is a vacuous claim and reports not-applicable.
    """
    started = time.perf_counter()
    _require_prime(p)
    _require_even_weight(k)
    if i_max < 0:
        raise ValueError(f"stage count must be >= 0, got {i_max}")
    params = {"p": p, "k": k, "i_max": i_max, "terms": terms}
    if p < 5 or k % (p - 1) == 0 or i_max == 0:
        return VerificationReport(
            "thm-b", params, 0, "not-applicable", None, _elapsed_ms(started)
        )
    target = normalized_qbracket(k, terms, p)
    for i in range(1, i_max + 1):
        stage = normalized_qbracket(k + totient(p**i), terms, None)
        result = congruent_mod(stage, target, p, i, target.truncation)
        if not result.ok:
            e = result.witness
            witness = (e // 24, str(stage.coefficient(e)), str(target.coefficient(e)))
            return VerificationReport(
                "thm-b", params, terms + 1, "fail", witness, _elapsed_ms(started)
            )
    return VerificationReport(
        "thm-b", params, terms + 1, "pass", None, _elapsed_ms(started)
    )


def check_thm_c(p: int, k: int) -> VerificationReport:
    """The mod-p filtration of the weight-k bracket is k(p+1)/2 for k < p.

    First confirms that the plain and regularized brackets agree mod p (so
    the filtration statement covers both), then decomposes the bracket into
    quasimodular monomials and walks its lifted reduction down the weight
    ladder.  Truncations are chosen internally from the Sturm-type bound.
    A filtration mismatch is reported with witness exponent 0 and the two
    weights as the values.
    """
    started = time.perf_counter()
    _require_prime(p)
    _require_even_weight(k)
    params = {"p": p, "k": k}
    expected = k * (p + 1) // 2
    if p < 5 or k >= p or k % (p - 1) == 0:
        return VerificationReport(
            "thm-c", params, 0, "not-applicable", None, _elapsed_ms(started)
        )
    terms = max(10, expected // 12 + 2)
    plain = normalized_qbracket(k, terms, None)
    regularized = normalized_qbracket(k, terms, p)
    result = congruent_mod(plain, regularized, p, 1, plain.truncation)
    if not result.ok:
        e = result.witness
        witness = (
            e // 24,
            str(plain.coefficient(e)),
            str(regularized.coefficient(e)),
        )
        return VerificationReport(
            "thm-c", params, terms + 1, "fail", witness, _elapsed_ms(started)
        )
    depth = len(quasimodular_monomials(k)) + 3
    decomposition = quasi_decompose(normalized_qbracket(k, depth, None), k)
    got = filtration(decomposition, p)
    if got != expected:
        witness = (0, str(got), str(expected))
        return VerificationReport(
            "thm-c", params, terms + 1, "fail", witness, _elapsed_ms(started)
        )
    return VerificationReport(
        "thm-c", params, terms + 1, "pass", None, _elapsed_ms(started)
    )


def check_thm_e(p: int, k: int, terms: int) -> VerificationReport:
    """Exact identity expressing the regularized bracket through the plain
    one: regularized = plain - p^(k-1) * plain(q^(p^2)) - p^(k-1) * correction."""
    started = time.perf_counter()
    _require_prime(p)
    _require_even_weight(k)
    if terms < 0:
        raise ValueError(f"term count must be >= 0, got {terms}")
    params = {"p": p, "k": k, "terms": terms}
    if p < 5:
        return VerificationReport(
            "thm-e", params, 0, "not-applicable", None, _elapsed_ms(started)
        )
    regularized = normalized_qbracket(k, terms, p)
    plain = normalized_qbracket(k, terms, None)
    inner_terms = -(-terms // (p * p))
    rescaled = substitute_power(normalized_qbracket(k, inner_terms, None), p * p)
    correction = correction_term(k, p, terms)
    weight_scale = p ** (k - 1)
    rhs = add(plain, scale(add(rescaled, correction), -weight_scale))
    witness = first_difference(regularized, rhs)
    verdict = "pass" if witness is None else "fail"
    return VerificationReport(
        "thm-e", params, terms + 1, verdict, witness, _elapsed_ms(started)
    )


def check_support_e(p: int, k: int, terms: int) -> VerificationReport:
    """Every exponent in the correction series has the same quadratic
    character mod p as 2 does."""
    started = time.perf_counter()
    _require_prime(p)
    _require_even_weight(k)
    if terms < 0:
        raise ValueError(f"term count must be >= 0, got {terms}")
    params = {"p": p, "k": k, "terms": terms}
    if p < 5:
        return VerificationReport(
            "support-e", params, 0, "not-applicable", None, _elapsed_ms(started)
        )
    target = legendre(2, p)
    for e in correction_term(k, p, terms).support():
        n = e // 24
        if legendre(n, p) != target:
            witness = (n, str(legendre(n, p)), str(target))
            return VerificationReport(
                "support-e", params, terms + 1, "fail", witness, _elapsed_ms(started)
            )
    return VerificationReport(
        "support-e", params, terms + 1, "pass", None, _elapsed_ms(started)
    )


def check_eq_remark(p: int, k: int, terms: int) -> VerificationReport:
    """The plain and regularized brackets agree mod p^(k-1) beyond the
    constant term.

    Only positive exponents participate: there both coefficients are
    integers and the divisibility holds for every even k, whereas the
    constant-term difference is p^(k-1) times a Bernoulli quotient whose
    denominator can carry one factor of p when (p-1) divides k.  The least
    p-adic valuation observed among the nonzero coefficient differences is
    recorded in the parameters (key "min_valuation"); the check asserts
    only the inequality, not its sharpness.
    """
    started = time.perf_counter()
    _require_prime(p)
    _require_even_weight(k)
    if terms < 0:
        raise ValueError(f"term count must be >= 0, got {terms}")
    params = {"p": p, "k": k, "terms": terms}
    if p < 5:
        return VerificationReport(
            "eq-remark", params, 0, "not-applicable", None, _elapsed_ms(started)
        )
    plain = normalized_qbracket(k, terms, None)
    regularized = normalized_qbracket(k, terms, p)
    minimum: int | float = math.inf
    for e in sorted(set(plain.terms) | set(regularized.terms)):
        if e == 0:
            continue
        ca, cb = plain.terms.get(e, 0), regularized.terms.get(e, 0)
        if ca == cb:
            continue
        v = padic_valuation(ca - cb, p)
        if v < k - 1:
            witness = (e // 24, str(ca), str(cb))
            return VerificationReport(
                "eq-remark", params, terms + 1, "fail", witness, _elapsed_ms(started)
            )
        minimum = min(minimum, v)
    if minimum is not math.inf:
        params = dict(params, min_valuation=int(minimum))
    return VerificationReport(
        "eq-remark", params, terms + 1, "pass", None, _elapsed_ms(started)
    )


def check_oracle(max_weight: int = 12, terms: int = 30) -> VerificationReport:
    """The double-sum bracket evaluation matches full partition enumeration
    for every even weight up to max_weight, plain and regularized at 5 and 7."""
    started = time.perf_counter()
    _require_even_weight(max_weight)
    if terms < 0:
        raise ValueError(f"term count must be >= 0, got {terms}")
    params = {"max_weight": max_weight, "terms": terms}
    for k in range(2, max_weight + 1, 2):
        for p in ORACLE_PRIMES:
            fast = normalized_qbracket(k, terms, p, method="fast")
            slow = normalized_qbracket(k, terms, p, method="enumerate")
            witness = first_difference(fast, slow)
            if witness is not None:
                return VerificationReport(
                    "oracle", params, terms + 1, "fail", witness, _elapsed_ms(started)
                )
    return VerificationReport(
        "oracle", params, terms + 1, "pass", None, _elapsed_ms(started)
    )
