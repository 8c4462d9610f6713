"""Command-line front end: ``webcat <command> [flags]``.

Term grammar (whitespace insensitive)::

    sum    := scaled ('+' scaled)*
    scaled := [scalar ':'] seq
    seq    := tensor (';' tensor)*        left operand is the lower diagram
    tensor := atom ('*' atom)*            left operand is the left diagram
    atom   := generator | '(' sum ')'
    scalar := ['-'] int ['/' int]

``*`` binds tighter than ``;``, which binds tighter than ``+``.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import basis as basis_mod
from .evaluation import DimensionLimitError, check_equivariance, evaluate
from .exact_arith import format_scalar
from .relations import SUITES, run_instances, generate_suite
from .web_terms import (
    BRAUER,
    ORIENTED,
    PLAIN,
    BoundaryError,
    Morphism,
    as_morphism,
    format_morphism,
    format_word,
    identity,
    make,
    oriented_crossing,
    tensor,
    then,
)

EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70

FLAVOR_NAMES = {"pweb": PLAIN, "plain": PLAIN, "oriented": ORIENTED, "brauer": BRAUER}


class TermSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*;:/(),]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op" or "end"
    text: str
    line: int
    column: int


def tokenize(source: str) -> list:
    tokens = []
    pos = 0
    line_starts = [0] + [k + 1 for k, ch in enumerate(source) if ch == "\n"]

    def where(offset):
        line = max(k for k, start in enumerate(line_starts) if start <= offset)
        return line + 1, offset - line_starts[line] + 1

    while True:
        while pos < len(source) and source[pos].isspace():
            pos += 1
        if pos == len(source):
            tokens.append(Token("end", "", *where(pos)))
            return tokens
        m = _TOKEN.match(source, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected character {source[pos]!r}", *where(pos))
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), *where(start)))
        pos = m.end()


# ---------------------------------------------------------------------------
# generators per flavor

def _plain_generator(name: str, args: tuple):
    table = {"split": 2, "merge": 2, "x": 2, "cap": 0, "cup": 0, "ant": 0}
    if name == "id":
        return identity(args, PLAIN) if args != (0,) else identity((), PLAIN)
    if name in table and len(args) == table[name]:
        return make(name, args, PLAIN)
    return None


def _oriented_generator(name: str, args: tuple):
    if name in ("uid", "id"):
        return identity(tuple(x for x in args if x), ORIENTED)
    if name == "did":
        return identity(tuple(-x for x in args if x), ORIENTED)
    if name == "x" and len(args) == 2:
        return oriented_crossing(*args)
    renamed = {"split": "usplit", "merge": "umerge", "cap": "upcap", "cup": "upcup", "ant": "upant"}
    arity = {
        "usplit": 2, "umerge": 2, "dsplit": 2, "dmerge": 2, "ux": 2, "rx": 2, "lx": 2, "dx": 2,
        "lcap": 1, "lcup": 1, "rcap": 1, "rcup": 1,
        "tagin": 0, "tagout": 0, "upcap": 0, "upcup": 0, "upant": 0,
    }
    kind = renamed.get(name, name)
    if kind in arity and len(args) == arity[kind]:
        return make(kind, args, ORIENTED)
    return None


def _brauer_generator(name: str, args: tuple):
    if name == "id" and all(x == 1 for x in args):
        return identity(args, BRAUER)
    if name == "x" and args == (1, 1):
        return make("twist", (), BRAUER)
    if name in ("cap", "cup") and not args:
        return make("b" + name, (), BRAUER)
    return None


_GENERATORS = {PLAIN: _plain_generator, ORIENTED: _oriented_generator, BRAUER: _brauer_generator}


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, source: str, flavor: str):
        self.tokens = tokenize(source)
        self.k = 0
        self.flavor = flavor

    @property
    def tok(self) -> Token:
        return self.tokens[self.k]

    def advance(self) -> Token:
        t = self.tokens[self.k]
        self.k += 1
        return t

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise TermSyntaxError(message, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind != "op":
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def at_op(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def parse(self) -> Morphism:
        m = self.sum()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        return m

    def sum(self) -> Morphism:
        start = self.tok
        out = self.scaled()
        while self.at_op("+"):
            op = self.advance()
            right = self.scaled()
            out = self.combine(lambda a, b: a + b, out, right, op)
        return out if out is not None else self.error("empty term", start)

    def scaled(self) -> Morphism:
        coeff = self.try_scalar()
        return self.seq().scale(coeff) if coeff is not None else self.seq()

    def try_scalar(self):
        # a scalar prefix is a number (or -number, p/q) followed by ':'
        save = self.k
        sign = 1
        if self.at_op("-"):
            self.advance()
            sign = -1
        if self.tok.kind != "num":
            self.k = save
            if sign < 0:
                self.error("a minus sign must start a scalar prefix like '-1 : term'")
            return None
        num = int(self.advance().text)
        den = 1
        if self.at_op("/"):
            self.advance()
            if self.tok.kind != "num":
                self.error("expected a denominator")
            den_tok = self.advance()
            den = int(den_tok.text)
            if den == 0:
                self.error("zero denominator", den_tok)
        if not self.at_op(":"):
            self.k = save
            self.error("a number must be followed by ':' to scale a term")
        self.advance()
        return Fraction(sign * num, den)

    def seq(self) -> Morphism:
        out = self.tensor_expr()
        while self.at_op(";"):
            op = self.advance()
            upper = self.tensor_expr()
            out = self.combine(lambda lo, up: then(lo, up), out, upper, op)
        return out

    def tensor_expr(self) -> Morphism:
        out = self.atom()
        while self.at_op("*"):
            op = self.advance()
            right = self.atom()
            out = self.combine(lambda a, b: tensor(a, b), out, right, op)
        return out

    def combine(self, fn, left: Morphism, right: Morphism, op: Token) -> Morphism:
        try:
            return fn(left, right)
        except BoundaryError as exc:
            raise TermSyntaxError(
                f"{exc} (left operand {format_word(left.dom)}->{format_word(left.cod)}, "
                f"right operand {format_word(right.dom)}->{format_word(right.cod)})",
                op.line,
                op.column,
            ) from None

    def atom(self) -> Morphism:
        tok = self.tok
        if self.at_op("("):
            self.advance()
            inner = self.sum()
            self.expect(")")
            return inner
        if tok.kind != "name":
            self.error(f"expected a generator or '(', found {tok.text or 'end of input'!r}")
        self.advance()
        args = ()
        if self.at_op("("):
            self.advance()
            args = (self.integer(),)
            while self.at_op(","):
                self.advance()
                args += (self.integer(),)
            self.expect(")")
        try:
            m = _GENERATORS[self.flavor](tok.text, args)
        except (ValueError, KeyError) as exc:
            self.error(str(exc), tok)
        if m is None:
            shown = tok.text + (f"({','.join(map(str, args))})" if args else "")
            self.error(f"unknown {self.flavor} generator {shown}", tok)
        return m

    def integer(self) -> int:
        sign = 1
        if self.at_op("-"):
            self.advance()
            sign = -1
        if self.tok.kind != "num":
            self.error("expected an integer label")
        return sign * int(self.advance().text)


def parse_term(source: str, flavor: str = PLAIN) -> Morphism:
    """Parse a term expression into a morphism of the given flavor."""
    flavor = FLAVOR_NAMES.get(flavor, flavor)
    if flavor not in _GENERATORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    return _Parser(source, flavor).parse()


def print_term(m) -> str:
    return format_morphism(as_morphism(m))


# ---------------------------------------------------------------------------
# commands

class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _word(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative_word(text: str) -> tuple:
    word = _word(text)
    if any(x < 0 for x in word):
        raise argparse.ArgumentTypeError("labels must be nonnegative")
    return word


def _flavor(args) -> str:
    return FLAVOR_NAMES[args.flavor]


def _term(args, source: str) -> Morphism:
    try:
        return parse_term(source, _flavor(args))
    except TermSyntaxError as exc:
        raise UsageError(f"cannot parse term: {exc}") from None


def _default_n(m: Morphism) -> int:
    return basis_mod.faithful_n(m.dom, m.cod)


def cmd_eval(args, out) -> int:
    m = _term(args, args.term)
    print(evaluate(m, args.n or _default_n(m)).dump(), file=out)
    return 0


def cmd_dim(args, out) -> int:
    print(basis_mod.hom_dim(args.dom, args.cod), file=out)
    return 0


def _matrix_text(rows) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in rows) + "]"


def cmd_basis(args, out) -> int:
    for k, chi in enumerate(basis_mod.enumerate_chi(
        tuple(x for x in args.dom if x), tuple(x for x in args.cod if x)
    )):
        print(
            f"{k}: A={_matrix_text(chi.A)} B={_matrix_text(chi.B)} "
            f"C={_matrix_text(chi.C)} D={_matrix_text([chi.D])} parity={chi.parity}",
            file=out,
        )
    return 0


def cmd_decompose(args, out) -> int:
    m = _term(args, args.term)
    if m.flavor == BRAUER:
        raise UsageError("decompose takes pweb or oriented terms")
    dec = basis_mod.decompose(m, args.n)
    for k, c in enumerate(dec.coefficients):
        if c:
            print(f"{k}: {format_scalar(c)}", file=out)
    return 0


def cmd_equal(args, out) -> int:
    lhs, rhs = _term(args, args.lhs), _term(args, args.rhs)
    try:
        basis_mod._check_pair(lhs, rhs)
    except BoundaryError as exc:
        raise UsageError(str(exc)) from None
    same = basis_mod.equal(lhs, rhs, args.n)
    base = lhs if not lhs.is_zero else rhs
    n = args.n or _default_n(base)
    print(f"{'equal' if same else 'not equal'} at n={n}", file=out)
    return 0 if same else 1


def cmd_check(args, out) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    instances = []
    for suite in suites:
        instances.extend(generate_suite(suite, args.max_label, args.max_rung))
    reports = run_instances(instances, n=args.n, workers=args.workers)
    failures = [r for r in reports if not r.ok]
    for r in reports:
        if args.verbose:
            print(r.line(), file=out)
    for r in failures:
        params = ",".join(f"{k}={v}" for k, v in r.instance.params)
        print(f"FAIL {r.instance.name} {params}".rstrip(), file=out)
        print(f"  n={r.n} {r.witness}", file=out)
    if not failures:
        print(f"PASS {len(reports)}", file=out)
    return min(len(failures), 125)


def cmd_equivariance(args, out) -> int:
    m = _term(args, args.term)
    n = args.n or max(1, _default_n(m))
    L = evaluate(m, n)
    report = check_equivariance(L, n)
    if report.ok:
        print(f"equivariant at n={n} ({report.checked} checks)", file=out)
        return 0
    label, mono, _, _ = report.witness
    print(f"not equivariant at n={n}: element {label} on monomial {mono}", file=out)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgParser(prog="webcat", description="Exact computations with p(n) webs.")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgParser)
    sub.required = True

    def with_flavor(p):
        p.add_argument("--flavor", choices=sorted(FLAVOR_NAMES), default="pweb")

    p = sub.add_parser("eval", help="print the exact matrix of a term")
    p.add_argument("--term", required=True)
    p.add_argument("--n", type=_positive)
    with_flavor(p)
    p.set_defaults(func=cmd_eval)

    for name, func, helptext in (
        ("dim", cmd_dim, "dimension of Hom(dom, cod)"),
        ("basis", cmd_basis, "list the index tuples of the basis webs"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--dom", type=_nonnegative_word, required=True)
        p.add_argument("--cod", type=_nonnegative_word, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("decompose", help="coefficients of a term in the basis webs")
    p.add_argument("--term", required=True)
    p.add_argument("--n", type=_positive)
    with_flavor(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("equal", help="decide whether two terms are equal")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--n", type=_positive)
    with_flavor(p)
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("check", help="verify a relation suite")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--max-label", type=_positive, default=3)
    p.add_argument("--max-rung", type=_positive, default=2)
    p.add_argument("--n", type=_positive)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--verbose", action="store_true", help="print one line per instance")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("equivariance", help="check that a term evaluates to a p(n)-module map")
    p.add_argument("--term", required=True)
    p.add_argument("--n", type=_positive)
    with_flavor(p)
    p.set_defaults(func=cmd_equivariance)
    return parser


def run(argv, out=None, err=None) -> int:
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except DimensionLimitError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DATA
    except basis_mod.InconsistentSystemError as exc:
        print(f"internal error: {exc}", file=err)
        return EXIT_INTERNAL


def main(argv=None) -> int:
    try:
        code = run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else 0
    return code


if __name__ == "__main__":
    raise SystemExit(main())
