"""Command-line interface: compute series, verify claims, emit documents.

Every invocation produces one document, serialized as canonical JSON (or
CSV for plain coefficient tables) and written atomically.  Exit codes:
0 computed or verified, 1 verification failed, 2 usage or parameter error,
3 hypothesis not applicable, 4 insufficient truncation or integrality
failure.
"""

import argparse
import json
import os
import re
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction

from .brackets import (
    FAST_GATE_TERMS,
    ShiftedSymmetricPoly,
    bracket_of_polynomial,
    correction_term,
    normalized_qbracket,
)
from .errors import (
    ExpressionError,
    IntegralityError,
    NotQuasimodularError,
    TruncationError,
)
from .jacobi import verify_diffexp, verify_eq65, verify_prop21, verify_taylor_chain
from .modforms import eisenstein, filtration, quasi_decompose, quasimodular_monomials
from .series import QExpansion
from .theorems import (
    VerificationReport,
    check_eq_remark,
    check_oracle,
    check_support_e,
    check_thm_a,
    check_thm_b,
    check_thm_c,
    check_thm_e,
)

KINDS = ("q-expansion", "report")
EXPONENT_UNITS = (1, 24)

# unit-24 claims report witnesses on the 1/24 grid; everything else is integral
UNIT_24_CLAIMS = frozenset({"eq65", "prop21", "diffexp"})

_FRACTION_RE = re.compile(r"-?(?:0|[1-9][0-9]*)(?:/[1-9][0-9]*)?\Z")


def canonical_fraction(value) -> str:
    """Exact fraction as "a" or "a/b", lowest terms, positive denominator."""
    return str(Fraction(value))


@dataclass(frozen=True)
class SeriesDocument:
    """One serializable artifact: a coefficient table or a claim report."""

    kind: str
    weight: int | None
    exponent_unit: int
    truncation: int
    coefficients: tuple[tuple[int, str], ...] = ()
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown document kind {self.kind!r}")
        if self.exponent_unit not in EXPONENT_UNITS:
            raise ValueError(f"exponent unit must be 1 or 24, got {self.exponent_unit}")
        if self.truncation < 0:
            raise ValueError(f"truncation must be >= 0, got {self.truncation}")
        last = None
        for e, c in self.coefficients:
            if last is not None and e <= last:
                raise ValueError(f"exponents must be strictly increasing at {e}")
            last = e
            if not _FRACTION_RE.match(c) or canonical_fraction(c) != c:
                raise ValueError(f"coefficient {c!r} is not a canonical fraction")
        for key, value in self.metadata.items():
            if not isinstance(key, str) or not isinstance(value, str):
                raise ValueError("metadata must map strings to strings")


def serialize_document(doc: SeriesDocument) -> str:
    """Canonical JSON: sorted keys, fixed separators, one trailing newline."""
    payload = {
        "kind": doc.kind,
        "weight": doc.weight,
        "exponent_unit": doc.exponent_unit,
        "truncation": doc.truncation,
        "coefficients": [[e, c] for e, c in doc.coefficients],
        "metadata": dict(sorted(doc.metadata.items())),
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def parse_document(text: str) -> SeriesDocument:
    raw = json.loads(text)
    return SeriesDocument(
        kind=raw["kind"],
        weight=raw["weight"],
        exponent_unit=raw["exponent_unit"],
        truncation=raw["truncation"],
        coefficients=tuple((e, c) for e, c in raw["coefficients"]),
        metadata=dict(raw["metadata"]),
    )


def document_to_csv(doc: SeriesDocument) -> str:
    if doc.kind != "q-expansion":
        raise ValueError("CSV output is defined for coefficient tables only")
    lines = ["exponent,numerator,denominator"]
    for e, c in doc.coefficients:
        f = Fraction(c)
        lines.append(f"{e},{f.numerator},{f.denominator}")
    return "\n".join(lines) + "\n"


def _series_document(
    s: QExpansion, weight: int | None, metadata: dict[str, str]
) -> SeriesDocument:
    """Dense integral-grid table; the internal 1/24 grid is never emitted."""
    if not s.is_integral():
        raise ValueError("only integral-grid series are serializable")
    bound = s.truncation // 24
    coeffs = tuple(
        (n, canonical_fraction(s.coefficient(24 * n))) for n in range(bound)
    )
    return SeriesDocument("q-expansion", weight, 1, bound, coeffs, metadata)


def _report_document(report: VerificationReport) -> SeriesDocument:
    meta = {"claim": report.claim, "verdict": report.verdict}
    for name, value in report.parameters.items():
        meta[name] = str(value)
    if report.witness is not None:
        exponent, lhs, rhs = report.witness
        meta["witness_exponent"] = str(exponent)
        meta["witness_lhs"] = lhs
        meta["witness_rhs"] = rhs
    unit = 24 if report.claim in UNIT_24_CLAIMS else 1
    weight = report.parameters.get("k")
    return SeriesDocument("report", weight, unit, report.truncation, (), meta)


# --- Q-polynomial expression parser ---------------------------------------


class _Scanner:
    __slots__ = ("text", "pos")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch


def _parse_uint(sc: _Scanner, what: str) -> int:
    start = sc.pos
    while sc.peek().isdigit():
        sc.pos += 1
    if sc.pos == start:
        raise ExpressionError(start, f"expected {what}")
    return int(sc.text[start : sc.pos])


def _parse_rational(sc: _Scanner) -> Fraction:
    numerator = _parse_uint(sc, "an integer")
    sc.skip_ws()
    if sc.peek() != "/":
        return Fraction(numerator)
    sc.take()
    sc.skip_ws()
    at = sc.pos
    denominator = _parse_uint(sc, "a denominator")
    if denominator == 0:
        raise ExpressionError(at, "denominator must be positive")
    return Fraction(numerator, denominator)


def _parse_term(sc: _Scanner) -> tuple[Fraction, tuple[tuple[int, int], ...]]:
    sc.skip_ws()
    coeff = Fraction(1)
    seen = False
    if sc.peek().isdigit():
        coeff = _parse_rational(sc)
        seen = True
    powers: dict[int, int] = {}
    while True:
        sc.skip_ws()
        starred = False
        if sc.peek() == "*":
            if not seen:
                raise ExpressionError(sc.pos, "expected a rational or a generator")
            sc.take()
            sc.skip_ws()
            starred = True
        if sc.peek() not in ("Q", "q"):
            if starred:
                raise ExpressionError(sc.pos, "expected a generator after '*'")
            break
        sc.take()
        sc.skip_ws()
        at = sc.pos
        index = _parse_uint(sc, "a generator index")
        if index == 0:
            raise ExpressionError(at, "generator index must be >= 1")
        exponent = 1
        sc.skip_ws()
        if sc.peek() == "^":
            sc.take()
            sc.skip_ws()
            at = sc.pos
            exponent = _parse_uint(sc, "an exponent")
            if exponent == 0:
                raise ExpressionError(at, "exponent must be positive")
        powers[index] = powers.get(index, 0) + exponent
        seen = True
    if not seen:
        raise ExpressionError(sc.pos, "expected a rational or a generator")
    return coeff, tuple(sorted(powers.items()))


def parse_q_polynomial(text: str) -> ShiftedSymmetricPoly:
    """Parse sums of rational multiples of generator monomials.

    Grammar: expression := ['+'|'-'] term (('+'|'-') term)*;
    term := [rational] ('*'? 'Q' index ('^' exponent)?)*;
    rational := integer ('/' positive-integer)?.  Whitespace insensitive.
    """
    sc = _Scanner(text)
    sc.skip_ws()
    if not sc.peek():
        raise ExpressionError(sc.pos, "empty expression")
    sign = 1
    if sc.peek() in "+-":
        sign = -1 if sc.take() == "-" else 1
    acc: dict[tuple[tuple[int, int], ...], Fraction] = {}
    while True:
        coeff, mono = _parse_term(sc)
        acc[mono] = acc.get(mono, Fraction(0)) + sign * coeff
        sc.skip_ws()
        if not sc.peek():
            break
        at = sc.pos
        op = sc.take()
        if op == "+":
            sign = 1
        elif op == "-":
            sign = -1
        else:
            raise ExpressionError(at, f"expected '+' or '-', found {op!r}")
    return ShiftedSymmetricPoly(acc)


# --- argument handling ------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbrackets",
        description="Exact partition bracket series and their verification suite.",
    )
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=("json", "csv"), default="json")
    output.add_argument("--out", metavar="FILE", default=None)

    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="compute a coefficient table")
    targets = compute.add_subparsers(dest="target", required=True)

    bracket = targets.add_parser("bracket", parents=[output])
    bracket.add_argument("--k", type=int, required=True)
    bracket.add_argument("--terms", type=int, required=True)
    bracket.add_argument("--p", type=int, default=None)
    bracket.add_argument("--method", choices=("fast", "enum"), default="fast")
    bracket.add_argument(
        "--trust-fast",
        action="store_true",
        help="allow the fast method beyond the oracle-tested range",
    )

    eis = targets.add_parser("eisenstein", parents=[output])
    eis.add_argument("--k", type=int, required=True)
    eis.add_argument("--terms", type=int, required=True)
    eis.add_argument("--variant", choices=("G", "E", "Greg"), default="G")
    eis.add_argument("--p", type=int, default=None)

    corr = targets.add_parser("correction", parents=[output])
    corr.add_argument("--k", type=int, required=True)
    corr.add_argument("--p", type=int, required=True)
    corr.add_argument("--terms", type=int, required=True)

    poly = targets.add_parser("bracket-poly", parents=[output])
    poly.add_argument("--expr", required=True)
    poly.add_argument("--terms", type=int, required=True)

    decompose = commands.add_parser(
        "decompose", parents=[output], help="decompose a bracket series"
    )
    decompose.add_argument("--k", type=int, required=True)
    decompose.add_argument("--terms", type=int, default=None)

    filt = commands.add_parser(
        "filtration", parents=[output], help="mod-p filtration of a bracket series"
    )
    filt.add_argument("--k", type=int, required=True)
    filt.add_argument("--p", type=int, required=True)

    verify = commands.add_parser(
        "verify", parents=[output], help="run one verification claim"
    )
    verify.add_argument(
        "claim",
        choices=(
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
        ),
    )
    verify.add_argument("--p", type=int, default=None)
    verify.add_argument("--r", type=int, default=None)
    verify.add_argument("--k", type=int, default=None)
    verify.add_argument("--k1", type=int, default=None)
    verify.add_argument("--k2", type=int, default=None)
    verify.add_argument("--i-max", type=int, default=None)
    verify.add_argument("--terms", type=int, default=30)
    verify.add_argument("--units", type=int, default=720,
                        help="truncation in 1/24 units (eq65 only)")
    verify.add_argument("--max-weight", type=int, default=12,
                        help="largest weight the oracle claim checks")
    return parser


_REQUIRED_FLAGS = {
    "thm-a": ("p", "r", "k1", "k2"),
    "thm-b": ("p", "k", "i_max"),
    "thm-c": ("p", "k"),
    "thm-e": ("p", "k"),
    "support-e": ("p", "k"),
    "eq-remark": ("p", "k"),
    "eq65": (),
    "prop21": ("p",),
    "diffexp": ("p",),
    "oracle": (),
    "taylor-chain": ("k",),
}


def _run_claim(args: argparse.Namespace) -> VerificationReport:
    missing = [f for f in _REQUIRED_FLAGS[args.claim] if getattr(args, f) is None]
    if missing:
        flags = ", ".join("--" + f.replace("_", "-") for f in missing)
        raise ValueError(f"claim {args.claim} requires {flags}")
    if args.claim == "thm-a":
        return check_thm_a(args.p, args.r, args.k1, args.k2, args.terms)
    if args.claim == "thm-b":
        return check_thm_b(args.p, args.k, args.i_max, args.terms)
    if args.claim == "thm-c":
        return check_thm_c(args.p, args.k)
    if args.claim == "thm-e":
        return check_thm_e(args.p, args.k, args.terms)
    if args.claim == "support-e":
        return check_support_e(args.p, args.k, args.terms)
    if args.claim == "eq-remark":
        return check_eq_remark(args.p, args.k, args.terms)
    if args.claim == "eq65":
        return verify_eq65(args.units)
    if args.claim == "prop21":
        return verify_prop21(args.p, args.terms)
    if args.claim == "diffexp":
        return verify_diffexp(args.p, args.terms)
    if args.claim == "taylor-chain":
        return verify_taylor_chain(args.k, args.terms, args.p if args.p else 5)
    return check_oracle(args.max_weight, args.terms)


def _compute_document(args: argparse.Namespace) -> SeriesDocument:
    if args.target == "bracket":
        method = "enumerate" if args.method == "enum" else "fast"
        if (
            method == "fast"
            and args.terms > FAST_GATE_TERMS
            and not args.trust_fast
        ):
            raise ValueError(
                f"the fast method is oracle-tested up to {FAST_GATE_TERMS} terms; "
                "pass --trust-fast to exceed that"
            )
        series = normalized_qbracket(args.k, args.terms, args.p, method)
        meta = {"series": "bracket", "method": method}
        if args.p is not None:
            meta["p"] = str(args.p)
        return _series_document(series, args.k, meta)
    if args.target == "eisenstein":
        variant = "G_reg" if args.variant == "Greg" else args.variant
        series = eisenstein(args.k, args.terms, variant, args.p)
        meta = {"series": "eisenstein", "variant": args.variant}
        if args.p is not None:
            meta["p"] = str(args.p)
        return _series_document(series, args.k, meta)
    if args.target == "correction":
        series = correction_term(args.k, args.p, args.terms)
        return _series_document(
            series, args.k, {"series": "correction", "p": str(args.p)}
        )
    poly = parse_q_polynomial(args.expr)
    series = bracket_of_polynomial(poly, args.terms)
    meta = {
        "series": "bracket-poly",
        "expression": args.expr,
        "grading": str(poly.weight()),
    }
    return _series_document(series, poly.weight(), meta)


def _monomial_label(triple: tuple[int, int, int]) -> str:
    a, b, c = triple
    return f"E2^{a}*E4^{b}*E6^{c}"


def _decompose_document(args: argparse.Namespace) -> tuple[SeriesDocument, int]:
    depth = len(quasimodular_monomials(args.k)) + 3
    terms = depth if args.terms is None else args.terms
    series = normalized_qbracket(args.k, terms)
    try:
        decomposition = quasi_decompose(series, args.k)
    except NotQuasimodularError as exc:
        meta = {
            "claim": "decompose",
            "verdict": "fail",
            "k": str(args.k),
            "witness_exponent": str(exc.exponent // 24),
        }
        return SeriesDocument("report", args.k, 1, terms + 1, (), meta), 1
    meta = {"claim": "decompose", "verdict": "pass", "k": str(args.k)}
    for triple, coeff in sorted(decomposition.terms.items()):
        meta[_monomial_label(triple)] = canonical_fraction(coeff)
    return SeriesDocument("report", args.k, 1, terms + 1, (), meta), 0


def _filtration_document(args: argparse.Namespace) -> SeriesDocument:
    if args.p < 5:
        raise ValueError(f"filtration needs a prime >= 5, got {args.p}")
    terms = len(quasimodular_monomials(args.k)) + 3
    decomposition = quasi_decompose(normalized_qbracket(args.k, terms), args.k)
    weight = filtration(decomposition, args.p)
    meta = {
        "claim": "filtration",
        "k": str(args.k),
        "p": str(args.p),
        "filtration": str(weight),
    }
    return SeriesDocument("report", args.k, 1, terms + 1, (), meta)


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, staging = tempfile.mkstemp(dir=directory, prefix=".qbrackets-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(staging, out)
    except BaseException:
        os.unlink(staging)
        raise


def run(argv=None) -> int:
    """Dispatch one invocation and write one document; returns the exit code."""
    threads = os.environ.get("QB_THREADS")
    if threads is not None and (not threads.isdigit() or int(threads) < 1):
        print(f"error: QB_THREADS must be a positive integer, got {threads!r}",
              file=sys.stderr)
        return 2
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    code = 0
    try:
        if args.command == "compute":
            doc = _compute_document(args)
        elif args.command == "decompose":
            doc, code = _decompose_document(args)
        elif args.command == "filtration":
            doc = _filtration_document(args)
        else:
            report = _run_claim(args)
            doc = _report_document(report)
            code = {"pass": 0, "fail": 1, "not-applicable": 3}[report.verdict]
        text = document_to_csv(doc) if args.format == "csv" else serialize_document(doc)
        _write_output(text, args.out)
    except (TruncationError, IntegralityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, ExpressionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
