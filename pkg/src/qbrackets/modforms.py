"""Level-1 modular machinery on the integral grid.

Eisenstein series in three normalizations, the discriminant, echelonized bases
of the classical weight spaces, exact decomposition of integral-grid series
into the weight-graded polynomial ring on (E2, E4, E6), and the mod-p
filtration of such a decomposition.  All linear algebra is exact: rationals
for decomposition, the field with p elements for filtration descent.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from .arith import bernoulli, is_prime, padic_valuation
from .errors import IntegralityError, NotQuasimodularError, TruncationError
from .series import QExpansion, euler_function, multiply, scale, substitute_power

Scalar = Union[int, Fraction]
Triple = tuple[int, int, int]  # powers of (E2, E4, E6)

__all__ = [
    "eisenstein",
    "delta",
    "dim_modular",
    "miller_basis",
    "QuasimodularPoly",
    "quasimodular_monomials",
    "quasi_decompose",
    "leading_g2_coefficient",
    "filtration",
    "reduces_to_zero_mod_p",
]


def _sigma_table(power: int, terms: int) -> list[int]:
    """sigma_power(n) for n = 0..terms by divisor sieve (index 0 unused)."""
    table = [0] * (terms + 1)
    for d in range(1, terms + 1):
        dp = d**power
        for n in range(d, terms + 1, d):
            table[n] += dp
    return table


def eisenstein(k: int, terms: int, variant: str = "G", p: int | None = None) -> QExpansion:
    """Weight-k Eisenstein series with `terms` integral coefficients.

    "G": constant -B_k/2k, divisor-power coefficients.
    "E": constant 1 (G rescaled by -2k/B_k).
    "G_reg": G minus p^(k-1) G(p tau); drops p-divisible divisors from sigma.
    """
    if k < 2 or k % 2:
        raise ValueError(f"Eisenstein weight must be even and >= 2, got {k}")
    if terms < 0:
        raise ValueError(f"term count must be >= 0, got {terms}")
    if variant == "G_reg":
        if p is None or not is_prime(p):
            raise ValueError(f"regularized variant needs a prime, got {p}")
        g = eisenstein(k, terms, "G")
        shifted = substitute_power(g, p).truncated(g.truncation)
        return g - scale(shifted, p ** (k - 1))
    if p is not None:
        raise ValueError(f"variant {variant!r} takes no prime")
    if variant not in ("G", "E"):
        raise ValueError(f"unknown variant {variant!r}")
    t = 24 * (terms + 1)
    sigma = _sigma_table(k - 1, terms)
    raw: dict[int, Scalar] = {24 * n: sigma[n] for n in range(1, terms + 1)}
    raw[0] = -bernoulli(k) / (2 * k)
    g = QExpansion(raw, t)
    if variant == "G":
        return g
    return scale(g, -2 * k / bernoulli(k))


def delta(terms: int) -> QExpansion:
    """The discriminant: (E4^3 - E6^2)/1728, leading coefficient 1 at q^1."""
    if terms < 1:
        raise ValueError(f"need at least one term, got {terms}")
    e4 = eisenstein(4, terms, "E")
    e6 = eisenstein(6, terms, "E")
    return scale(e4**3 - e6**2, Fraction(1, 1728))


def dim_modular(weight: int) -> int:
    """Dimension of the classical level-1 weight space."""
    if weight < 0 or weight % 2:
        return 0
    if weight % 12 == 2:
        return weight // 12
    return weight // 12 + 1


def miller_basis(weight: int, terms: int) -> list[QExpansion]:
    """Echelonized basis of the weight space: element i starts q^i + O(q^dim).

    Spanned by delta^i E4^a E6^b with b in {0, 1}; exact row reduction.  Needs
    terms >= dim so the echelon block is fully determined.
    """
    if weight < 0 or weight % 2:
        raise ValueError(f"weight must be a non-negative even integer, got {weight}")
    d = dim_modular(weight)
    if d == 0:
        return []
    if terms < d:
        raise TruncationError(f"need at least {d} terms for weight {weight}, got {terms}")
    e4 = eisenstein(4, terms, "E")
    e6 = eisenstein(6, terms, "E")
    dl = delta(terms) if d > 1 else None
    rows: list[QExpansion] = []
    for i in range(d):
        rest = weight - 12 * i
        b = 0 if rest % 4 == 0 else 1
        a = (rest - 6 * b) // 4
        form = e4**a * e6**b
        if i:
            form = form * dl**i
        rows.append(form)
    # rows[i] = q^i + ...: clear above-diagonal entries back to front
    for i in range(d - 1, -1, -1):
        row = rows[i]
        for j in range(i + 1, d):
            c = row.coefficient(24 * j)
            if c:
                row = row - scale(rows[j], c)
        rows[i] = row
    return rows


class QuasimodularPoly:
    """Homogeneous polynomial in (E2, E4, E6): exponent triple -> coefficient.

    Every triple (a, b, c) satisfies 2a + 4b + 6c = weight.
    """

    __slots__ = ("terms", "weight")

    def __init__(self, terms: Mapping[Triple, Scalar], weight: int):
        if weight < 0 or weight % 2:
            raise ValueError(f"weight must be a non-negative even integer, got {weight}")
        clean: dict[Triple, Scalar] = {}
        for (a, b, c), coeff in terms.items():
            if coeff == 0:
                continue
            if min(a, b, c) < 0 or 2 * a + 4 * b + 6 * c != weight:
                raise ValueError(f"triple {(a, b, c)} is not homogeneous of weight {weight}")
            clean[(a, b, c)] = coeff
        self.terms = clean
        self.weight = weight

    def coefficient(self, triple: Triple) -> Scalar:
        return self.terms.get(triple, 0)

    def to_series(self, terms: int) -> QExpansion:
        out = QExpansion.zero(24 * (terms + 1))
        for mono, coeff in sorted(self.terms.items()):
            out = out + scale(_monomial_series(mono, terms), coeff)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuasimodularPoly):
            return NotImplemented
        return self.weight == other.weight and self.terms == other.terms

    def __hash__(self):
        return hash((self.weight, frozenset(self.terms.items())))

    def __repr__(self):
        bits = [
            f"{coeff}*E2^{a}*E4^{b}*E6^{c}"
            for (a, b, c), coeff in sorted(self.terms.items())
        ]
        return f"QuasimodularPoly({' + '.join(bits) or '0'}; weight={self.weight})"


def quasimodular_monomials(weight: int) -> list[Triple]:
    """All (a, b, c) with 2a + 4b + 6c = weight, E2-degree descending."""
    out = []
    for c in range(weight // 6 + 1):
        for b in range((weight - 6 * c) // 4 + 1):
            rest = weight - 4 * b - 6 * c
            if rest % 2 == 0:
                out.append((rest // 2, b, c))
    out.sort(reverse=True)
    return out


def _monomial_series(triple: Triple, terms: int) -> QExpansion:
    a, b, c = triple
    out = QExpansion.one(24 * (terms + 1))
    if a:
        out = out * eisenstein(2, terms, "E") ** a
    if b:
        out = out * eisenstein(4, terms, "E") ** b
    if c:
        out = out * eisenstein(6, terms, "E") ** c
    return out


def quasi_decompose(s: QExpansion, weight: int, margin: int = 1) -> QuasimodularPoly:
    """Exact decomposition of an integral-grid series over the weight-graded
    (E2, E4, E6) monomials, certified on every known coefficient.

    The square system on the first dim coefficients fixes the candidate; the
    remaining known coefficients (at least `margin` of them) must agree
    exactly, else the series is not quasimodular of this weight.
    """
    if margin < 1:
        raise ValueError(f"margin must be >= 1, got {margin}")
    if not s.is_integral():
        raise ValueError("series must live on the integral grid")
    monomials = quasimodular_monomials(weight)
    dim = len(monomials)
    rows = s.truncation // 24  # known coefficients q^0 .. q^(rows-1)
    if rows < dim + margin:
        raise TruncationError(
            f"need {dim + margin} coefficients to decompose at weight {weight}, have {rows}"
        )
    series = [_monomial_series(m, rows - 1) for m in monomials]
    # Gauss-Jordan on the square head of the overdetermined system.
    mat = [
        [Fraction(series[j].coefficient(24 * n)) for j in range(dim)]
        + [Fraction(s.coefficient(24 * n))]
        for n in range(rows)
    ]
    pivot_rows: list[int] = []
    r = 0
    for col in range(dim):
        pivot = next((i for i in range(r, rows) if mat[i][col] != 0), None)
        if pivot is None:
            raise RuntimeError(
                f"monomial matrix at weight {weight} is singular; this is a bug"
            )
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivot_rows.append(r)
        r += 1
    solution = [mat[i][dim] for i in pivot_rows]
    combo = QExpansion.zero(s.truncation)
    for x, ser in zip(solution, series):
        if x:
            combo = combo + scale(ser, x)
    for n in range(rows):
        if combo.coefficient(24 * n) != s.coefficient(24 * n):
            raise NotQuasimodularError(24 * n)
    return QuasimodularPoly(dict(zip(monomials, solution)), weight)


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def leading_g2_coefficient(d: QuasimodularPoly) -> tuple[Fraction, Fraction]:
    """Top E2-degree coefficient of a weight-k decomposition, with the closed form.

    Returns (extracted, expected) where expected is
    (k-1)!! 8^(k/2-1) / (k/2) times (-1/24)^(k/2).
    """
    k = d.weight
    if k < 2 or k % 2:
        raise ValueError(f"weight must be even and >= 2, got {k}")
    half = k // 2
    got = Fraction(d.coefficient((half, 0, 0)))
    expected = (
        Fraction(_double_factorial(k - 1) * 8 ** (half - 1), half)
        * Fraction(-1, 24) ** half
    )
    return got, expected


def _mod_p(x: Scalar, p: int, where: int) -> int:
    f = Fraction(x)
    if f.denominator % p == 0:
        raise IntegralityError(where, f"coefficient {x} is not {p}-integral")
    return f.numerator * pow(f.denominator, -1, p) % p


def _lifted_target(d: QuasimodularPoly, p: int) -> tuple[list[int], int, int]:
    """Mod-p coefficients of the E2-free weight-k(p+1)/2 lift, plus weight and bound."""
    if p < 5 or not is_prime(p):
        raise ValueError(f"filtration prime must be >= 5, got {p}")
    for triple, coeff in d.terms.items():
        if padic_valuation(coeff, p) < 0:
            raise IntegralityError(0, f"coefficient at {triple} is not {p}-integral")
    k = d.weight
    lifted_weight = k * (p + 1) // 2
    rows = lifted_weight // 12 + 2  # Sturm-type comparison bound
    terms = rows - 1
    e_sub = eisenstein(p + 1, terms, "E")
    e_pad = eisenstein(p - 1, terms, "E")
    lifted = QExpansion.zero(24 * (terms + 1))
    for (a, b, c), coeff in sorted(d.terms.items()):
        mono = _monomial_series((0, b, c), terms)
        if a:
            mono = mono * e_sub**a
        pad = k // 2 - a
        if pad:
            mono = mono * e_pad**pad
        lifted = lifted + scale(mono, coeff)
    target = [_mod_p(lifted.coefficient(24 * n), p, 24 * n) for n in range(rows)]
    return target, lifted_weight, rows


def reduces_to_zero_mod_p(d: QuasimodularPoly, p: int) -> bool:
    """True when the mod-p reduction vanishes up to the Sturm-type bound."""
    target, _, _ = _lifted_target(d, p)
    return not any(target)


def filtration(d: QuasimodularPoly, p: int) -> int:
    """Least weight of a level-1 form congruent mod p to the lifted reduction.

    The E2-free lift replaces E2 by the weight-(p+1) Eisenstein series and pads
    every monomial to weight k(p+1)/2 with powers of the weight-(p-1) series
    (both substitutions are mod-p identities).  Descent then walks candidate
    weights downward in steps of p-1, testing membership by exact echelon
    comparison over the field with p elements up to the Sturm-type bound.
    Returns 0 for a series that vanishes identically mod p.
    """
    target, lifted_weight, rows = _lifted_target(d, p)
    if not any(target):
        return 0
    for w in range(lifted_weight % (p - 1), lifted_weight + 1, p - 1):
        if _matches_weight_mod_p(target, w, p, rows):
            return w
    raise RuntimeError(
        f"no weight up to {lifted_weight} matched; the lift must lie in that space"
    )


def _matches_weight_mod_p(target: list[int], weight: int, p: int, rows: int) -> bool:
    dim = dim_modular(weight)
    if dim == 0:
        return not any(target)
    combo = [0] * rows
    for i, basis in enumerate(miller_basis(weight, rows - 1)):
        # echelon form: the combination is forced by the first dim target entries
        ci = target[i]
        if ci:
            for n in range(rows):
                combo[n] = (combo[n] + ci * _mod_p(basis.coefficient(24 * n), p, 24 * n)) % p
    return combo == target
