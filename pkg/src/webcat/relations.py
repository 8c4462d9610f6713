"""Relation instances for every web category, checked by exact evaluation.

Each suite expands a family of identities over all labels up to a bound and
returns :class:`RelationInstance` objects.  :func:`check_instance` evaluates
both sides at a rank ``n`` and reports the first disagreeing matrix entry.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .basis import contraction, enumerate_chi, explosion
from .evaluation import check_equivariance, evaluate, space_for
from .exact_arith import binom, factorial, format_scalar
from .superspace import format_monomial, orbit_representatives
from .web_terms import (
    BRAUER,
    ORIENTED,
    PLAIN,
    Gen,
    Morphism,
    antenna,
    block,
    brauer,
    brauer_id,
    cap,
    cap_between,
    crossing,
    crossing_expand,
    cup,
    cup_between,
    format_word,
    green_dot,
    green_dot_left,
    ident,
    identity,
    map_generators,
    merge,
    multi_merge,
    multi_split,
    oid,
    oriented,
    oriented_crossing,
    pwebm_gen,
    rung_left,
    rung_right,
    split,
    tensor,
    then,
    to_oriented,
    xi_term,
)

SUITES = ("glweb", "pweb", "pwebm", "oriented", "brauer", "functorial")

# domain dimension above which the faithful rank is skipped in favour of n = 3
FAITHFUL_BUDGET = 4000


@dataclass(frozen=True)
class RelationInstance:
    """One identity ``lhs == rhs`` with concrete labels.

    ``kind`` is ``"equal"`` for an identity between morphisms, or
    ``"equivariant"`` when ``lhs`` is a single map whose image must commute
    with the Lie superalgebra action (``rhs`` is then ``lhs`` again).
    ``ranks`` pins the ranks to check at; empty means the runner decides.
    """

    name: str
    params: tuple
    lhs: Morphism
    rhs: Morphism
    suite: str
    kind: str = "equal"
    ranks: tuple = ()

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})" if inner else self.name

    def weight(self) -> int:
        return sum(abs(x) for x in self.lhs.dom) + sum(abs(x) for x in self.lhs.cod)


@dataclass
class CheckReport:
    instance: RelationInstance
    n: int
    ok: bool
    witness: str = ""
    note: str = ""
    checked: list = field(default_factory=list)

    def line(self) -> str:
        head = "ok" if self.ok else "FAIL"
        text = f"{head} {self.instance.label()} n={self.n}"
        if self.note:
            text += f" [{self.note}]"
        if self.witness:
            text += f" {self.witness}"
        return text


# ---------------------------------------------------------------------------
# helpers

def _params(**kw) -> tuple:
    return tuple(kw.items())


def _align(lhs: Morphism, rhs: Morphism):
    """Give a zero side the boundary of the other side."""
    if lhs.is_zero and not rhs.is_zero:
        lhs = Morphism.zero(rhs.dom, rhs.cod, lhs.flavor)
    elif rhs.is_zero and not lhs.is_zero:
        rhs = Morphism.zero(lhs.dom, lhs.cod, rhs.flavor)
    return lhs, rhs


def _valid(m: Morphism) -> bool:
    return all(x >= 0 for x in m.dom + m.cod) or m.flavor == ORIENTED


class _Collector:
    def __init__(self, suite: str):
        self.suite = suite
        self.items: list = []

    def add(self, name: str, params: tuple, lhs, rhs, **extra):
        lhs, rhs = _align(lhs, rhs)
        if lhs.is_zero and rhs.is_zero:
            return
        if not (_valid(lhs) and _valid(rhs)):
            return
        if (lhs.dom, lhs.cod) != (rhs.dom, rhs.cod):
            raise ValueError(f"{name}{params}: sides have different boundaries")
        self.items.append(RelationInstance(name, params, lhs, rhs, self.suite, **extra))


def _labels(bound: int, start: int = 0):
    return range(start, bound + 1)


def _at(word, pos, middle, width: int = 2):
    """``middle`` applied to strands ``pos .. pos+width-1`` of ``word``.

    The width is explicit because zero labels vanish from a morphism's boundary.
    """
    word = tuple(word)
    return tensor(identity(word[:pos], middle.flavor), middle, identity(word[pos + width:], middle.flavor))


# ---------------------------------------------------------------------------
# thin-web relations (shared crossing builder)

def _braid_family(col: _Collector, X, bound: int, prefix: str = ""):
    """Crossing absorption and braid relations for a crossing builder ``X``."""
    for a, b in product(_labels(bound), repeat=2):
        col.add(prefix + "CrossAbsorb-merge", _params(a=a, b=b), then(X(a, b), merge(b, a)), merge(a, b))
        col.add(prefix + "CrossAbsorb-split", _params(a=a, b=b), then(split(b, a), X(b, a)), split(a, b))
        col.add(prefix + "DoubleCross", _params(a=a, b=b), then(X(a, b), X(b, a)), ident(a, b))
    for a, b, c in product(_labels(bound, 1), repeat=3):
        p = _params(a=a, b=b, c=c)
        lhs = then(tensor(X(a, b), ident(c)), tensor(ident(b), X(a, c)), tensor(X(b, c), ident(a)))
        rhs = then(tensor(ident(a), X(b, c)), tensor(X(a, c), ident(b)), tensor(ident(c), X(a, b)))
        col.add(prefix + "Braid", p, lhs, rhs)
        col.add(
            prefix + "MergeThroughCross-left", p,
            then(tensor(X(c, a), ident(b)), tensor(ident(a), X(c, b)), tensor(merge(a, b), ident(c))),
            then(tensor(ident(c), merge(a, b)), X(c, a + b)),
        )
        col.add(
            prefix + "MergeThroughCross-right", p,
            then(tensor(ident(a), X(b, c)), tensor(X(a, c), ident(b)), tensor(ident(c), merge(a, b))),
            then(tensor(merge(a, b), ident(c)), X(a + b, c)),
        )
        col.add(
            prefix + "SplitThroughCross-left", p,
            then(tensor(split(a, b), ident(c)), tensor(ident(a), X(b, c)), tensor(X(a, c), ident(b))),
            then(X(a + b, c), tensor(ident(c), split(a, b))),
        )
        col.add(
            prefix + "SplitThroughCross-right", p,
            then(tensor(ident(c), split(a, b)), tensor(X(c, a), ident(b)), tensor(ident(a), X(c, b))),
            then(X(c, a + b), tensor(split(a, b), ident(c))),
        )


def _crossdef_second(a: int, b: int) -> Morphism:
    out = Morphism.zero((a, b), (b, a), PLAIN)
    for r in range(0, b + 1):
        s = r + a - b
        if s < 0:
            continue
        out = out + then(rung_left(a, b, r), rung_right(a + r, b - r, s)).scale((-1) ** (b - r))
    return out


def glweb_suite(label_bound: int, rung_bound: int) -> list:
    col = _Collector("glweb")
    L, R = label_bound, rung_bound
    for a, b, c in product(_labels(L), repeat=3):
        p = _params(a=a, b=b, c=c)
        col.add(
            "Assoc-split", p,
            then(split(a + b, c), tensor(split(a, b), ident(c))),
            then(split(a, b + c), tensor(ident(a), split(b, c))),
        )
        col.add(
            "Assoc-merge", p,
            then(tensor(merge(a, b), ident(c)), merge(a + b, c)),
            then(tensor(ident(a), merge(b, c)), merge(a, b + c)),
        )
    for a, b in product(_labels(L), repeat=2):
        for r, s in product(_labels(R, 1), repeat=2):
            lhs = then(rung_right(a, b, s), rung_left(a - s, b + s, r))
            rhs = Morphism.zero((a, b), (a - s + r, b + s - r), PLAIN)
            for t in range(0, min(r, s) + 1):
                coeff = binom(a - b + r - s, t)
                rhs = rhs + then(rung_left(a, b, r - t), rung_right(a + r - t, b - r + t, s - t)).scale(coeff)
            col.add("RungSwap", _params(a=a, b=b, r=r, s=s), lhs, rhs)
        col.add("Knothole", _params(a=a, b=b), then(split(a, b), merge(a, b)), ident(a + b).scale(binom(a + b, a)))
        col.add("CrossDef", _params(a=a, b=b), crossing_expand(a, b), _crossdef_second(a, b))
    for a, b, c in product(_labels(L), repeat=3):
        word = (a, b, c)
        for s1, s2, s3 in product(_labels(R, 1), repeat=3):
            p = _params(a=a, b=b, c=c, s1=s1, s2=s2, s3=s3)
            lhs = _ladder(word, [(0, "R", s1), (1, "R", s2), (0, "R", s3)])
            rhs = None
            for t in range(0, s3 + 1):
                term = _ladder(word, [(1, "R", s3 - t), (0, "R", s1 + s3), (1, "R", s2 - s3 + t)])
                term = term.scale(binom(s1 - s2 + s3, t))
                rhs = term if rhs is None else rhs + term
            col.add("Coxeter-right", p, lhs, rhs)
            lhs = _ladder(word, [(0, "L", s1), (1, "L", s2), (0, "L", s3)])
            rhs = None
            for t in range(0, s3 + 1):
                term = _ladder(word, [(1, "L", s3 - t), (0, "L", s1 + s3), (1, "L", s2 - s3 + t)])
                term = term.scale(binom(s1 - s2 + s3, t))
                rhs = term if rhs is None else rhs + term
            col.add("Coxeter-left", p, lhs, rhs)
    _braid_family(col, lambda a, b: block(crossing_expand(a, b)), L)
    for a, b, c in product(_labels(L), repeat=3):
        d = a + b - c
        if d < 0 or d > L:
            continue
        rhs = Morphism.zero((a, b), (c, d), PLAIN)
        for t in range(0, min(a, d) + 1):
            rhs = rhs + then(
                tensor(split(a - t, t), split(b - d + t, d - t)),
                tensor(ident(a - t), block(crossing_expand(t, b - d + t)), ident(d - t)),
                tensor(merge(a - t, b - d + t), merge(t, d - t)),
            )
        col.add("RungsToCross", _params(a=a, b=b, c=c, d=d), then(merge(a, b), split(c, d)), rhs)
    return col.items


def _ladder(word, steps) -> Morphism:
    """Successive rungs on adjacent strands: ``(pos, 'R'|'L', k)``; ``R`` moves k strands rightward."""
    word = tuple(word)
    out = ident(*word)
    for pos, side, k in steps:
        x, y = word[pos], word[pos + 1]
        if side == "R":
            rung, new = rung_right(x, y, k), (x - k, y + k)
        else:
            rung, new = rung_left(x, y, k), (x + k, y - k)
        if any(v < 0 for v in new):
            return Morphism.zero(tuple(word), tuple(word), PLAIN)
        out = then(out, _at(word, pos, rung))
        word = word[:pos] + new + word[pos + 2:]
    return out


# ---------------------------------------------------------------------------
# thick webs with caps, cups and antennas

def pweb_suite(label_bound: int, rung_bound: int) -> list:
    col = _Collector("pweb")
    L, R = label_bound, rung_bound
    col.add("Straighten-left", (), then(tensor(cup(), ident(1)), tensor(ident(1), cap())), ident(1))
    col.add("Straighten-right", (), then(tensor(ident(1), cup()), tensor(cap(), ident(1))), ident(1).scale(-1))
    col.add("AntennaRetract", (), then(merge(1, 1), antenna()), cap())
    for a, b in product(_labels(L), repeat=2):
        for r in _labels(R, 1):
            p = _params(a=a, b=b, r=r)
            col.add(
                "CapRungSwap-right", p,
                then(rung_right(a, b, r), cap_between(a - r, b + r)),
                then(cap_between(a, b), rung_right(a - 1, b - 1, r))
                + then(tensor(green_dot(a), ident(b)), rung_right(a - 2, b, r - 1)).scale(2),
            )
            col.add(
                "CapRungSwap-left", p,
                then(rung_left(a, b, r), cap_between(a + r, b - r)),
                then(cap_between(a, b), rung_left(a - 1, b - 1, r))
                + then(tensor(ident(a), green_dot_left(b)), rung_left(a, b - 2, r - 1)).scale(2),
            )
            col.add(
                "CupRungSwap-right", p,
                then(cup_between(a, b), rung_right(a + 1, b + 1, r)),
                then(rung_right(a, b, r), cup_between(a - r, b + r)),
            )
            col.add(
                "CupRungSwap-left", p,
                then(cup_between(a, b), rung_left(a + 1, b + 1, r)),
                then(rung_left(a, b, r), cup_between(a + r, b - r)),
            )
        p = _params(a=a, b=b)
        col.add(
            "BubbleSwap", p,
            then(cup_between(a, b), cap_between(a + 1, b + 1)) + then(cap_between(a, b), cup_between(a - 1, b - 1)),
            ident(a, b).scale(a - b),
        )
    for a in _labels(L):
        p = _params(a=a)
        if a >= 2:
            col.add("DotSwitch", p, green_dot_left(a), green_dot(a))
            col.add(
                "DotAbsorb-right", p,
                then(merge(a, 1), green_dot(a + 1)),
                then(tensor(split(a - 1, 1), ident(1)), tensor(ident(a - 1), cap()))
                + then(tensor(green_dot(a), ident(1)), merge(a - 2, 1)),
            )
            col.add(
                "DotAbsorb-left", p,
                then(merge(1, a), green_dot_left(a + 1)),
                then(tensor(ident(1), split(1, a - 1)), tensor(cap(), ident(a - 1)))
                + then(tensor(ident(1), green_dot_left(a)), merge(1, a - 2)),
            )
        col.add(
            "CapThroughCross", p,
            then(tensor(crossing(1, a), ident(1)), tensor(ident(a), cap())),
            then(tensor(ident(1), crossing(a, 1)), tensor(cap(), ident(a))),
        )
        col.add(
            "CupThroughCross", p,
            then(tensor(ident(a), cup()), tensor(crossing(a, 1), ident(1))),
            then(tensor(cup(), ident(a)), tensor(ident(1), crossing(1, a))),
        )
        col.add(
            "DotThroughCross-left", p,
            then(crossing(2, a), tensor(ident(a), antenna())),
            tensor(antenna(), ident(a)),
        )
        col.add(
            "DotThroughCross-right", p,
            then(crossing(a, 2), tensor(antenna(), ident(a))),
            tensor(ident(a), antenna()),
        )
    col.add("TwistedCup", (), then(cup(), crossing(1, 1)), cup().scale(-1))
    col.add("TwistedCap", (), then(crossing(1, 1), cap()), cap())
    col.add("Bubble", (), then(cup(), cap()), Morphism.zero((), (), PLAIN), )
    for a, b, c in product(_labels(L), repeat=3):
        p = _params(a=a, b=b, c=c)
        col.add(
            "BubbleShift-left", p,
            then(_at((a, b, c), 0, cup_between(a, b)), _at((a + 1, b + 1, c), 1, cap_between(b + 1, c)))
            + then(_at((a, b, c), 1, cap_between(b, c)), _at((a, b - 1, c - 1), 0, cup_between(a, b - 1))),
            then(_at((a, b, c), 1, rung_left(b, c, 1)), _at((a, b + 1, c - 1), 0, rung_left(a, b + 1, 1)))
            - then(_at((a, b, c), 0, rung_left(a, b, 1)), _at((a + 1, b - 1, c), 1, rung_left(b - 1, c, 1))),
        )
        col.add(
            "BubbleShift-right", p,
            then(_at((a, b, c), 1, cup_between(b, c)), _at((a, b + 1, c + 1), 0, cap_between(a, b + 1)))
            + then(_at((a, b, c), 0, cap_between(a, b)), _at((a - 1, b - 1, c), 1, cup_between(b - 1, c))),
            then(_at((a, b, c), 1, rung_right(b, c, 1)), _at((a, b - 1, c + 1), 0, rung_right(a, b - 1, 1)))
            - then(_at((a, b, c), 0, rung_right(a, b, 1)), _at((a - 1, b + 1, c), 1, rung_right(b + 1, c, 1))),
        )
    zero = Morphism.zero((2, 2), (), PLAIN)
    col.add(
        "NestedCapsZero", (),
        then(tensor(split(1, 1), split(1, 1)), tensor(ident(1), cap(), ident(1)), cap()),
        zero,
    )
    col.add(
        "NestedCupsZero", (),
        then(cup(), tensor(ident(1), cup(), ident(1)), tensor(merge(1, 1), merge(1, 1))),
        Morphism.zero((), (2, 2), PLAIN),
    )
    col.add("DoubleDotZero", (), then(split(2, 2), tensor(antenna(), antenna())), Morphism.zero((4,), (), PLAIN))
    col.add("TensorSwap", (), crossing(1, 1), then(merge(1, 1), split(1, 1)) - ident(1, 1))
    return col.items


# ---------------------------------------------------------------------------
# generators e, f, b, c of the m-strand subcategory and their commutators

class _Op:
    """A family of morphisms indexed by the bottom word.

    ``shift`` maps a bottom word to the top word; it is tracked separately
    because zero labels drop out of a morphism's codomain.
    """

    def __init__(self, fn, shift, parity: int):
        self.fn = fn
        self.shift = shift
        self.parity = parity

    def __call__(self, word) -> Morphism:
        word = tuple(word)
        top = self.shift(word)
        if any(x < 0 for x in word + top):
            return Morphism.zero(word, word, PLAIN)
        return self.fn(word)

    def after(self, other: "_Op") -> "_Op":
        def fn(word):
            first = other(word)
            if first.is_zero:
                return first
            return then(first, self(other.shift(word)))

        return _Op(fn, lambda w: self.shift(other.shift(w)), (self.parity + other.parity) % 2)


def _bracket(x: _Op, y: _Op) -> _Op:
    sign = -1 if (x.parity and y.parity) else 1

    def fn(word):
        return x.after(y)(word) - y.after(x)(word).scale(sign)

    return _Op(fn, lambda w: x.shift(y.shift(w)), (x.parity + y.parity) % 2)


def _shift(changes):
    def fn(word):
        out = list(word)
        for pos, d in changes:
            out[pos - 1] += d
        return tuple(out)

    return fn


def _E(i):
    return _Op(lambda w: pwebm_gen("e", (i, i + 1), 1, w), _shift([(i, 1), (i + 1, -1)]), 0)


def _F(i):
    return _Op(lambda w: pwebm_gen("f", (i, i + 1), 1, w), _shift([(i, -1), (i + 1, 1)]), 0)


def _B(r, s):
    return _Op(lambda w: pwebm_gen("b", (r, s), 0, w), _shift([(r, -1), (s, -1)]), 1)


def _C(r, s):
    return _Op(lambda w: pwebm_gen("c", (r, s), 0, w), _shift([(r, 1), (s, 1)]), 1)


def _Bdot(u):
    return _Op(lambda w: pwebm_gen("b_single", (u,), 0, w), _shift([(u, -2)]), 1)


def _scaled_id(word, c) -> Morphism:
    return ident(*word).scale(c)


def pwebm_suite(label_bound: int, rung_bound: int, max_strands: int = 3) -> list:
    col = _Collector("pwebm")
    for m in range(2, max_strands + 1):
        idx = range(1, m)
        for word in product(_labels(label_bound), repeat=m):
            def add(name, lhs_op, rhs, **p):
                lhs = lhs_op(word)
                if callable(rhs):
                    rhs = rhs(word)
                col.add(name, _params(m=m, word=format_word(word), **p), lhs, rhs)

            zero = lambda w: Morphism.zero(w, w, PLAIN)  # noqa: E731
            for i, j in product(idx, repeat=2):
                diag = (word[i - 1] - word[i]) if i == j else 0
                add("ef", _bracket(_E(i), _F(j)), _scaled_id(word, diag), i=i, j=j)
                if abs(i - j) != 1:
                    add("ee-commute", _bracket(_E(i), _E(j)), zero, i=i, j=j)
                    add("ff-commute", _bracket(_F(i), _F(j)), zero, i=i, j=j)
                else:
                    add("ee-serre", _bracket(_E(i), _bracket(_E(i), _E(j))), zero, i=i, j=j)
                    add("ff-serre", _bracket(_F(i), _bracket(_F(i), _F(j))), zero, i=i, j=j)
                add("bb", _bracket(_B(i, i + 1), _B(j, j + 1)), zero, i=i, j=j)
                add("cc", _bracket(_C(i, i + 1), _C(j, j + 1)), zero, i=i, j=j)
                bc = _bracket(_B(i, i + 1), _C(j, j + 1))
                if j == i:
                    add("bc", bc, _scaled_id(word, word[i - 1] - word[i]), i=i, j=j)
                elif j == i - 1:
                    add("bc", bc, _bracket(_E(i - 1), _E(i))(word), i=i, j=j)
                elif j == i + 1:
                    add("bc", bc, _bracket(_F(i), _F(i + 1))(word), i=i, j=j)
                else:
                    add("bc", bc, zero, i=i, j=j)
                if j not in (i, i + 1):
                    add("be-commute", _bracket(_B(i, i + 1), _E(j)), zero, i=i, j=j)
                if j not in (i, i - 1):
                    add("bf-commute", _bracket(_B(i, i + 1), _F(j)), zero, i=i, j=j)
                if j != i - 1:
                    add("ec-commute", _bracket(_E(j), _C(i, i + 1)), zero, i=i, j=j)
                if j != i + 1:
                    add("fc-commute", _bracket(_F(j), _C(i, i + 1)), zero, i=i, j=j)
                bee = _bracket(_bracket(_B(i, i + 1), _E(i)), _E(j))
                if j == i + 1:
                    add("bee", bee, lambda w: _B(i + 1, i + 2)(w).scale(2), i=i, j=j)
                else:
                    add("bee", bee, zero, i=i, j=j)
                if i + 1 < m:
                    cee = _bracket(_bracket(_C(i + 1, i + 2), _E(i)), _E(j))
                    if j == i + 1:
                        add("cee", cee, _C(i, i + 1), i=i, j=j)
                    elif j != i - 1:
                        add("cee", cee, zero, i=i, j=j)
            for i in idx:
                add("be-dot", _bracket(_B(i, i + 1), _E(i)), lambda w: _Bdot(i + 1)(w).scale(2), i=i)
                if i + 1 < m:
                    add("bf-dot", _bracket(_B(i + 1, i + 2), _F(i + 1)), lambda w: _Bdot(i + 1)(w).scale(2), i=i)
                    add("be-long", _bracket(_B(i, i + 1), _E(i + 1)), _B(i, i + 2), i=i)
                    add("bf-long", _bracket(_B(i + 1, i + 2), _F(i)), _B(i, i + 2), i=i)
                    add("ec-long", _bracket(_E(i), _C(i + 1, i + 2)), _C(i, i + 2), i=i)
                    add("fc-long", _bracket(_F(i + 1), _C(i, i + 1)), _C(i, i + 2), i=i)
            add("bef", _bracket(_bracket(_B(1, 2), _E(1)), _F(1)), lambda w: _B(1, 2)(w).scale(2))
            for j in idx:
                add("bff", _bracket(_bracket(_B(1, 2), _F(1)), _F(j)), zero, j=j)
    return col.items


# ---------------------------------------------------------------------------
# oriented webs

def _o_merge(x, y):
    if x >= 0 and y >= 0:
        return oriented("umerge", x, y)
    if x <= 0 and y <= 0:
        return oriented("dsplit", -x, -y)
    return None


def _o_split(x, y):
    if x >= 0 and y >= 0:
        return oriented("usplit", x, y)
    if x <= 0 and y <= 0:
        return oriented("dmerge", -x, -y)
    return None


def _o_cap(x):
    """Cap with domain ``(x, -x)``."""
    return oriented("rcap", x) if x > 0 else oriented("lcap", -x)


def _o_cup(x):
    """Cup with codomain ``(x, -x)``."""
    return oriented("lcup", x) if x > 0 else oriented("rcup", -x)


def _signed(labels):
    """All sign assignments of positive labels, zero labels kept as they are."""
    choices = [((v,) if v == 0 else (v, -v)) for v in labels]
    return product(*choices)


def oriented_suite(label_bound: int, rung_bound: int) -> list:
    col = _Collector("oriented")
    L = label_bound
    X = oriented_crossing
    for a in _labels(L, 1):
        p = _params(a=a)
        col.add(
            "LeftStraighten-up", p,
            then(tensor(oriented("lcup", a), oid(a)), tensor(oid(a), oriented("lcap", a))), oid(a),
        )
        col.add(
            "LeftStraighten-down", p,
            then(tensor(oid(-a), oriented("lcup", a)), tensor(oriented("lcap", a), oid(-a))), oid(-a),
        )
        col.add("BubbleVanish", p, then(oriented("rcup", a), oriented("lcap", a)), Morphism.zero((), (), ORIENTED))
    for a, b in product(_labels(L, 1), repeat=2):
        p = _params(a=a, b=b)
        col.add("LRCross-down-up", p, then(oriented("lx", a, b), oriented("rx", b, a)), oid(-a, b))
        col.add("LRCross-up-down", p, then(oriented("rx", a, b), oriented("lx", b, a)), oid(a, -b))
    for x, y in product(*([list(range(-L, L + 1))] * 2)):
        if 0 in (x, y):
            continue
        p = _params(a=x, b=y)
        col.add("O-DoubleCross", p, then(X(x, y), X(y, x)), oid(x, y))
        if (x > 0) == (y > 0):
            col.add("O-CrossAbsorb-merge", p, then(X(x, y), _o_merge(y, x)), _o_merge(x, y))
            col.add("O-CrossAbsorb-split", p, then(_o_split(y, x), X(y, x)), _o_split(x, y))
        # a cap or cup of label y passing a strand x
        q = _params(a=x, b=y)
        col.add(
            "O-CapThroughCross", q,
            then(tensor(X(y, x), oid(-y)), tensor(oid(x), _o_cap(y))),
            then(tensor(oid(y), X(x, -y)), tensor(_o_cap(y), oid(x))),
        )
        col.add(
            "O-CupThroughCross", q,
            then(tensor(oid(x), _o_cup(y)), tensor(X(x, y), oid(-y))),
            then(tensor(_o_cup(y), oid(x)), tensor(oid(y), X(-y, x))),
        )
    for x, y, z in product(*([[v for v in range(-L, L + 1) if v]] * 3)):
        p = _params(a=x, b=y, c=z)
        col.add(
            "O-Braid", p,
            then(tensor(X(x, y), oid(z)), tensor(oid(y), X(x, z)), tensor(X(y, z), oid(x))),
            then(tensor(oid(x), X(y, z)), tensor(X(x, z), oid(y)), tensor(oid(z), X(x, y))),
        )
        if (x > 0) != (y > 0):
            continue
        a, b, c = x, y, z
        col.add(
            "O-MergeThroughCross-left", p,
            then(tensor(X(c, a), oid(b)), tensor(oid(a), X(c, b)), tensor(_o_merge(a, b), oid(c))),
            then(tensor(oid(c), _o_merge(a, b)), X(c, a + b)),
        )
        col.add(
            "O-MergeThroughCross-right", p,
            then(tensor(oid(a), X(b, c)), tensor(X(a, c), oid(b)), tensor(oid(c), _o_merge(a, b))),
            then(tensor(_o_merge(a, b), oid(c)), X(a + b, c)),
        )
        col.add(
            "O-SplitThroughCross-left", p,
            then(tensor(_o_split(a, b), oid(c)), tensor(oid(a), X(b, c)), tensor(X(a, c), oid(b))),
            then(X(a + b, c), tensor(oid(c), _o_split(a, b))),
        )
        col.add(
            "O-SplitThroughCross-right", p,
            then(tensor(oid(c), _o_split(a, b)), tensor(X(c, a), oid(b)), tensor(oid(a), X(c, b))),
            then(X(c, a + b), tensor(_o_split(a, b), oid(c))),
        )
    for x in [v for v in range(-L, L + 1) if v]:
        p = _params(a=x)
        col.add("O-TwistedCap", p, _o_cap(x), then(X(x, -x), _o_cap(-x)))
        col.add("O-TwistedCup", p, _o_cup(x), then(_o_cup(-x), X(-x, x)))
        col.add("O-Bubble", p, then(_o_cup(x), _o_cap(x)), Morphism.zero((), (), ORIENTED))
        col.add("O-Zigzag-left", p, then(tensor(_o_cup(x), oid(x)), tensor(oid(x), _o_cap(-x))), oid(x))
        col.add("O-Zigzag-right", p, then(tensor(oid(x), _o_cup(-x)), tensor(_o_cap(x), oid(x))), oid(x))
    for x, y in product(*([[v for v in range(-L, L + 1) if v]] * 2)):
        if (x > 0) != (y > 0) or abs(x) + abs(y) > L + 1:
            continue
        a, b = x, y
        p = _params(a=a, b=b)
        # caps swallowing a merge
        col.add(
            "O-CapMerge-right", p,
            then(tensor(_o_split(b, a), oid(-a, -b)), tensor(oid(b), _o_cap(a), oid(-b)), _o_cap(b)),
            then(tensor(oid(a + b), _o_merge(-a, -b)), _o_cap(a + b)),
        )
        col.add(
            "O-CapMerge-left", p,
            then(tensor(oid(-a, -b), _o_split(b, a)), tensor(oid(-a), _o_cap(-b), oid(a)), _o_cap(-a)),
            then(tensor(_o_merge(-a, -b), oid(a + b)), _o_cap(-(a + b))),
        )
        col.add(
            "O-CupSplit-right", p,
            then(_o_cup(b), tensor(oid(b), _o_cup(a), oid(-b)), tensor(_o_merge(b, a), oid(-a, -b))),
            then(_o_cup(a + b), tensor(oid(a + b), _o_split(-a, -b))),
        )
        col.add(
            "O-CupSplit-left", p,
            then(_o_cup(-a), tensor(oid(-a), _o_cup(-b), oid(a)), tensor(oid(-a, -b), _o_merge(b, a))),
            then(_o_cup(-(a + b)), tensor(_o_split(-a, -b), oid(a + b))),
        )
    tin, tout = oriented("tagin"), oriented("tagout")
    col.add("TagCap-in", (), then(tensor(tin, oid(1)), oriented("lcap", 1)), then(tensor(oid(1), tin), oriented("rcap", 1)))
    col.add("TagCup-in", (), then(oriented("lcup", 1), tensor(tin, oid(-1))), then(oriented("rcup", 1), tensor(oid(-1), tin)))
    col.add(
        "TagCap-out", (),
        then(tensor(tout, oid(-1)), oriented("rcap", 1)),
        then(tensor(oid(-1), tout), oriented("lcap", 1)).scale(-1),
    )
    col.add(
        "TagCup-out", (),
        then(oriented("rcup", 1), tensor(tout, oid(1))),
        then(oriented("lcup", 1), tensor(oid(1), tout)).scale(-1),
    )
    for x in [v for v in range(-L, L + 1) if v]:
        p = _params(a=x)
        col.add("TagIn-through-left", p, then(tensor(tin, oid(x)), X(-1, x)), then(X(1, x), tensor(oid(x), tin)))
        col.add("TagIn-through-right", p, then(tensor(oid(x), tin), X(x, -1)), then(X(x, 1), tensor(tin, oid(x))))
        col.add("TagOut-through-left", p, then(tensor(tout, oid(x)), X(1, x)), then(X(-1, x), tensor(oid(x), tout)))
        col.add("TagOut-through-right", p, then(tensor(oid(x), tout), X(x, 1)), then(X(x, -1), tensor(tout, oid(x))))
    col.add("TagOutIn", (), then(tin, tout), oid(1))
    col.add("TagInOut", (), then(tout, tin), oid(-1))
    col.add(
        "TagInAsBend", (), tin,
        then(tensor(oid(1), oriented("lcup", 1)), tensor(oriented("upcap"), oid(-1))),
    )
    col.add(
        "TagOutAsBend", (), tout,
        then(tensor(oid(-1), oriented("upcup")), tensor(oriented("lcap", 1), oid(1))),
    )
    return col.items


# ---------------------------------------------------------------------------
# marked Brauer category

def brauer_suite(label_bound: int, rung_bound: int) -> list:
    col = _Collector("brauer")
    t, bcap, bcup, i1 = brauer("twist"), brauer("bcap"), brauer("bcup"), brauer_id(1)
    col.add("MB-straighten-left", (), then(tensor(bcup, i1), tensor(i1, bcap)), i1)
    col.add("MB-straighten-right", (), then(tensor(i1, bcup), tensor(bcap, i1)), i1.scale(-1))
    col.add("MB-twist-square", (), then(t, t), brauer_id(2))
    col.add("MB-braid", (), then(tensor(t, i1), tensor(i1, t), tensor(t, i1)), then(tensor(i1, t), tensor(t, i1), tensor(i1, t)))
    col.add("MB-pitch-cap", (), then(tensor(t, i1), tensor(i1, bcap)), then(tensor(i1, t), tensor(bcap, i1)))
    col.add("MB-pitch-cup", (), then(tensor(bcup, i1), tensor(i1, t)), then(tensor(i1, bcup), tensor(t, i1)))
    col.add("MB-twisted-cup", (), then(bcup, t), bcup.scale(-1))
    col.add("MB-twisted-cap", (), then(t, bcap), bcap)
    col.add("MB-bubble", (), then(bcup, bcap), Morphism.zero((), (), BRAUER))
    return col.items


# ---------------------------------------------------------------------------
# functors and module-level facts

def _embed_expanded(m) -> Morphism:
    """Marked Brauer diagram to webs, with the twist written through its rung expansion."""

    def fn(g: Gen) -> Morphism:
        if g.kind == "id":
            return identity(g.params, PLAIN)
        return {"twist": lambda: crossing_expand(1, 1), "bcap": cap, "bcup": cup}[g.kind]()

    return map_generators(m, fn, PLAIN)


def _brauer_samples() -> list:
    """A deterministic family of marked Brauer diagrams on up to four points."""
    t, bcap, bcup, i1 = brauer("twist"), brauer("bcap"), brauer("bcup"), brauer_id(1)
    return [
        ("twist", t),
        ("cap", bcap),
        ("cup", bcup),
        ("twist-cap", then(tensor(t, i1), tensor(i1, bcap))),
        ("cup-twist", then(tensor(bcup, i1), tensor(i1, t))),
        ("cap-cup", then(bcap, bcup)),
        ("braid", then(tensor(t, i1), tensor(i1, t))),
        ("nested-caps", then(tensor(i1, bcap, i1), bcap)),
        ("nested-cups", then(bcup, tensor(i1, bcup, i1))),
        ("through-cap", then(tensor(bcup, brauer_id(2)), tensor(i1, t, i1), tensor(i1, i1, bcap))),
    ]


def _plain_generators(bound: int):
    yield "cap", cap()
    yield "cup", cup()
    yield "ant", antenna()
    for a, b in product(_labels(bound, 1), repeat=2):
        if a + b <= bound:
            yield f"split({a},{b})", split(a, b)
            yield f"merge({a},{b})", merge(a, b)
        yield f"x({a},{b})", crossing(a, b)


def _oriented_generators(bound: int):
    for kind in ("tagin", "tagout", "upcap", "upcup", "upant"):
        yield kind, oriented(kind)
    for a in _labels(bound, 1):
        for kind in ("lcap", "lcup", "rcap", "rcup"):
            yield f"{kind}({a})", oriented(kind, a)
    for a, b in product(_labels(bound, 1), repeat=2):
        for kind in ("ux", "rx", "lx", "dx"):
            yield f"{kind}({a},{b})", oriented(kind, a, b)
        if a + b <= bound:
            for kind in ("usplit", "umerge", "dsplit", "dmerge"):
                yield f"{kind}({a},{b})", oriented(kind, a, b)


def functorial_suite(label_bound: int, rung_bound: int) -> list:
    col = _Collector("functorial")
    L = label_bound
    for a, b in product(_labels(L, 1), repeat=2):
        col.add("CrossIsSwap", _params(a=a, b=b), crossing_expand(a, b), crossing(a, b))
    for k in _labels(max(L, 1), 1):
        col.add("SplitMergeFactorial", _params(k=k), then(multi_split([1] * k), multi_merge([1] * k)), ident(k).scale(factorial(k)))
    for a, b in _small_pairs(L):
        for idx, chi in enumerate(enumerate_chi(a, b)):
            f = xi_term(chi)
            scale = math.prod(math.factorial(v) for v in a + b)
            col.add(
                "ContractExplode", _params(dom=format_word(a), cod=format_word(b), xi=idx),
                contraction(explosion(f), a, b), f.scale(scale),
            )
    for name, g in _plain_generators(L):
        col.add("Equivariant", _params(gen=name), g, g, kind="equivariant", ranks=(1, 2, 3))
    for name, g in _oriented_generators(L):
        col.add("Equivariant", _params(gen=name), g, g, kind="equivariant", ranks=(1, 2, 3))
    for name, g in (("twist", brauer("twist")), ("bcap", brauer("bcap")), ("bcup", brauer("bcup"))):
        col.add("Equivariant", _params(gen=name), g, g, kind="equivariant", ranks=(1, 2, 3))
    for name, d in _brauer_samples():
        col.add("BrauerSquare", _params(diagram=name), d, _embed_expanded(d))
    for name, m in _upward_samples(L):
        col.add("UpwardEmbedding", _params(web=name), to_oriented(m), m)
    return col.items


def _small_pairs(bound: int):
    """Objects with at most two strands each and total weight at most four."""
    words = [()] + [(a,) for a in _labels(bound, 1)] + [(a, b) for a, b in product(_labels(bound, 1), repeat=2)]
    for a, b in product(words, repeat=2):
        if sum(a) + sum(b) <= 4 and (sum(a) + sum(b)) % 2 == 0 and (a or b):
            yield a, b


def _upward_samples(bound: int):
    yield "straighten", then(tensor(cup(), ident(1)), tensor(ident(1), cap()))
    yield "antenna", antenna()
    yield "tensor-swap", crossing_expand(1, 1)
    for a, b in product(_labels(bound, 1), repeat=2):
        yield f"x({a},{b})", crossing(a, b)
        yield f"rungs({a},{b})", then(rung_right(a, b, 1), rung_left(a - 1, b + 1, 1)) if a >= 1 else ident(a, b)
    for a in _labels(bound, 2):
        yield f"dot({a})", green_dot(a)


_BUILDERS = {
    "glweb": glweb_suite,
    "pweb": pweb_suite,
    "pwebm": pwebm_suite,
    "oriented": oriented_suite,
    "brauer": brauer_suite,
    "functorial": functorial_suite,
}


def generate_suite(suite: str, label_bound: int = 3, rung_bound: int = 2) -> list:
    """All instances of a suite with labels up to ``label_bound`` and rungs up to ``rung_bound``."""
    if suite not in _BUILDERS:
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    if label_bound < 1 or rung_bound < 1:
        raise ValueError("bounds must be at least 1")
    return _BUILDERS[suite](label_bound, rung_bound)


# ---------------------------------------------------------------------------
# checking

def choose_rank(inst: RelationInstance) -> tuple:
    """``(n, note)``: the faithful rank when its domain is small enough, otherwise 3."""
    faithful = max(3, -(-inst.weight() // 2))
    if faithful == 3:
        return 3, ""
    flavor = inst.lhs.flavor
    dims = [space_for(w, faithful, flavor).dimension() for w in (inst.lhs.dom, inst.lhs.cod)]
    if max(dims) <= FAITHFUL_BUDGET:
        return faithful, ""
    return 3, f"faithful n={faithful} skipped"


def _describe(L, dom_mono, cod_mono, lv, rv) -> str:
    src = format_monomial(dom_mono, L.dom.duals)
    tgt = format_monomial(cod_mono, L.cod.duals)
    return f"at {src} -> {tgt}: lhs {format_scalar(Fraction(lv))} rhs {format_scalar(Fraction(rv))}"


def check_instance(inst: RelationInstance, n: int, reduced: bool = True) -> CheckReport:
    """Evaluate both sides at rank ``n`` and compare exactly.

    With ``reduced`` the difference is first evaluated on one monomial per
    index-relabeling orbit, which decides equality because every generator
    commutes with relabeling.  Only a nonzero difference triggers the full
    matrices, to locate the first differing entry.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if inst.kind == "equivariant":
        L = evaluate(inst.lhs, n)
        rep = check_equivariance(L, n)
        witness = "" if rep.ok else f"element {rep.witness[0]} on {format_monomial(rep.witness[1], L.dom.duals)}"
        return CheckReport(inst, n, rep.ok, witness)
    if inst.lhs.flavor == inst.rhs.flavor:
        diff = inst.lhs - inst.rhs
        cols = orbit_representatives(space_for(diff.dom, n, diff.flavor)) if reduced else None
        if evaluate(diff, n, cols).is_zero():
            return CheckReport(inst, n, True)
    lhs, rhs = evaluate(inst.lhs, n), evaluate(inst.rhs, n)
    if lhs == rhs:
        return CheckReport(inst, n, True)
    first = lhs.first_difference(rhs)
    witness = _describe(lhs, *first) if first else "boundary spaces differ"
    return CheckReport(inst, n, False, witness)


def _run_one(inst: RelationInstance, n: int | None) -> CheckReport:
    if inst.ranks and n is None:
        report = None
        for k in inst.ranks:
            report = check_instance(inst, k)
            if not report.ok:
                return report
        report.checked = list(inst.ranks)
        return report
    note = ""
    if n is None:
        n, note = choose_rank(inst)
    report = check_instance(inst, n)
    report.note = note
    return report


def _run_packed(args):
    return _run_one(*args)


def run_instances(instances, n: int | None = None, workers: int = 1) -> list:
    """Check every instance; reports come back in instance order whatever the worker count."""
    jobs = [(inst, n) for inst in instances]
    if workers <= 1:
        return [_run_one(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_packed, jobs, chunksize=4))


def run_suite(suite: str, label_bound: int = 3, rung_bound: int = 2, n: int | None = None, workers: int = 1) -> list:
    return run_instances(generate_suite(suite, label_bound, rung_bound), n=n, workers=workers)
