"""Web diagrams as terms: generators, composition and tensor trees, linear combinations.

Three flavors of diagram share one term syntax:

* ``plain``: unoriented webs with labels >= 0 (split, merge, cap, cup, antenna, crossing);
* ``oriented``: signed labels, ``+a`` an upward strand and ``-a`` a downward one;
* ``brauer``: thin strands only, with twist, cap and cup.

Diagrams are read bottom to top.  ``compose(top, bottom)`` stacks ``top`` above
``bottom``; ``tensor(left, right)`` places diagrams side by side.
"""

from __future__ import annotations

from fractions import Fraction
from .exact_arith import format_scalar, scalar

PLAIN = "plain"
ORIENTED = "oriented"
BRAUER = "brauer"
FLAVORS = (PLAIN, ORIENTED, BRAUER)


class BoundaryError(ValueError):
    """Raised when two diagrams cannot be composed or tensored."""


def clean_word(labels) -> tuple:
    return tuple(int(x) for x in labels if x != 0)


def format_word(word) -> str:
    return "(" + ",".join(str(x) for x in word) + ")"


# ---------------------------------------------------------------------------
# generator signatures: kind -> (flavor, dom, cod, parity)

def _plain_signature(kind, p):
    if kind == "split":
        a, b = p
        return (a + b,), (a, b), 0
    if kind == "merge":
        a, b = p
        return (a, b), (a + b,), 0
    if kind == "cap":
        return (1, 1), (), 1
    if kind == "cup":
        return (), (1, 1), 1
    if kind == "ant":
        return (2,), (), 1
    if kind == "x":
        a, b = p
        return (a, b), (b, a), 0
    raise KeyError(kind)


def _oriented_signature(kind, p):
    if kind == "usplit":
        a, b = p
        return (a + b,), (a, b), 0
    if kind == "umerge":
        a, b = p
        return (a, b), (a + b,), 0
    if kind == "dsplit":
        a, b = p
        return (-a, -b), (-(a + b),), 0
    if kind == "dmerge":
        a, b = p
        return (-(a + b),), (-a, -b), 0
    if kind == "lcap":
        (a,) = p
        return (-a, a), (), 0
    if kind == "lcup":
        (a,) = p
        return (), (a, -a), 0
    if kind == "rcap":
        (a,) = p
        return (a, -a), (), 0
    if kind == "rcup":
        (a,) = p
        return (), (-a, a), 0
    if kind == "tagin":
        return (1,), (-1,), 1
    if kind == "tagout":
        return (-1,), (1,), 1
    if kind == "upcap":
        return (1, 1), (), 1
    if kind == "upcup":
        return (), (1, 1), 1
    if kind == "upant":
        return (2,), (), 1
    if kind == "ux":
        a, b = p
        return (a, b), (b, a), 0
    if kind == "rx":
        a, b = p
        return (a, -b), (-b, a), 0
    if kind == "lx":
        a, b = p
        return (-a, b), (b, -a), 0
    if kind == "dx":
        a, b = p
        return (-a, -b), (-b, -a), 0
    raise KeyError(kind)


def _brauer_signature(kind, p):
    if kind == "twist":
        return (1, 1), (1, 1), 0
    if kind == "bcap":
        return (1, 1), (), 1
    if kind == "bcup":
        return (), (1, 1), 1
    raise KeyError(kind)


_SIGNATURES = {PLAIN: _plain_signature, ORIENTED: _oriented_signature, BRAUER: _brauer_signature}

# oriented pieces that are defined as composites of the primitive ones
MACRO_KINDS = frozenset({"rcap", "rcup", "upcap", "upcup", "upant", "lx", "dx", "dsplit", "dmerge"})


# ---------------------------------------------------------------------------
# terms

class Term:
    __slots__ = ("dom", "cod", "parity", "flavor", "_hash")

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._key() == other._key()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{type(self).__name__} {format_term(self)}>"


class Gen(Term):
    """A generator (or an identity when ``kind == 'id'``, with ``params`` the word)."""

    __slots__ = ("kind", "params")

    def __init__(self, kind: str, params: tuple, flavor: str):
        self.kind = kind
        self.params = tuple(params)
        self.flavor = flavor
        if kind == "id":
            self.dom = self.cod = self.params
            self.parity = 0
        elif kind == "block":
            (inner,) = self.params
            self.dom, self.cod, self.parity = inner.dom, inner.cod, inner.parity or 0
        else:
            self.dom, self.cod, self.parity = _SIGNATURES[flavor](kind, self.params)
            self.dom = clean_word(self.dom)
            self.cod = clean_word(self.cod)
        self._hash = hash(("G", kind, self.params, flavor))

    def _key(self):
        return (self.kind, self.params, self.flavor)

    @property
    def is_identity(self) -> bool:
        return self.kind == "id"


class Compose(Term):
    __slots__ = ("top", "bottom")

    def __init__(self, top: Term, bottom: Term):
        self.top, self.bottom = top, bottom
        self.dom, self.cod = bottom.dom, top.cod
        self.parity = (top.parity + bottom.parity) % 2
        self.flavor = top.flavor
        self._hash = hash(("C", top._hash, bottom._hash))

    def _key(self):
        return (self.top, self.bottom)


class Tensor(Term):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        self.left, self.right = left, right
        self.dom = left.dom + right.dom
        self.cod = left.cod + right.cod
        self.parity = (left.parity + right.parity) % 2
        self.flavor = left.flavor
        self._hash = hash(("T", left._hash, right._hash))

    def _key(self):
        return (self.left, self.right)


def _is_id(t: Term) -> bool:
    return isinstance(t, Gen) and t.kind == "id"


def compose_terms(top: Term, bottom: Term) -> Term:
    if top.flavor != bottom.flavor:
        raise BoundaryError(f"cannot compose {top.flavor} with {bottom.flavor} diagrams")
    if bottom.cod != top.dom:
        raise BoundaryError(
            f"codomain {format_word(bottom.cod)} of the lower diagram does not match "
            f"domain {format_word(top.dom)} of the upper diagram"
        )
    if _is_id(top):
        return bottom
    if _is_id(bottom):
        return top
    return Compose(top, bottom)


def tensor_terms(left: Term, right: Term) -> Term:
    if left.flavor != right.flavor:
        raise BoundaryError(f"cannot tensor {left.flavor} with {right.flavor} diagrams")
    if _is_id(left) and not left.params:
        return right
    if _is_id(right) and not right.params:
        return left
    if _is_id(left) and _is_id(right):
        return Gen("id", left.params + right.params, left.flavor)
    return Tensor(left, right)


def count_odd_generators(t: Term) -> int:
    if isinstance(t, Gen):
        return t.parity
    if isinstance(t, Compose):
        return count_odd_generators(t.top) + count_odd_generators(t.bottom)
    return count_odd_generators(t.left) + count_odd_generators(t.right)


def iter_generators(t: Term):
    if isinstance(t, Gen):
        yield t
    elif isinstance(t, Compose):
        yield from iter_generators(t.bottom)
        yield from iter_generators(t.top)
    else:
        yield from iter_generators(t.left)
        yield from iter_generators(t.right)


# ---------------------------------------------------------------------------
# morphisms

class Morphism:
    """A finite linear combination of terms sharing domain, codomain and flavor."""

    __slots__ = ("dom", "cod", "flavor", "terms")

    def __init__(self, dom, cod, flavor: str, terms=None):
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.flavor = flavor
        self.terms: dict = {}
        for t, c in (terms or {}).items():
            c = scalar(c)
            if c:
                self.terms[t] = self.terms.get(t, 0) + c
        self.terms = {t: c for t, c in self.terms.items() if c}

    @classmethod
    def of(cls, term: Term, coeff=1) -> "Morphism":
        return cls(term.dom, term.cod, term.flavor, {term: coeff})

    @classmethod
    def zero(cls, dom, cod, flavor: str) -> "Morphism":
        return cls(dom, cod, flavor)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def parity(self) -> int | None:
        """Common parity of the terms, or None for a zero or inhomogeneous combination."""
        ps = {t.parity for t in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def _check_same(self, other: "Morphism"):
        if self.flavor != other.flavor:
            raise BoundaryError(f"cannot add {self.flavor} and {other.flavor} morphisms")
        if (self.dom, self.cod) != (other.dom, other.cod) and not (self.is_zero or other.is_zero):
            raise BoundaryError(
                f"cannot add morphisms {format_word(self.dom)}->{format_word(self.cod)} and "
                f"{format_word(other.dom)}->{format_word(other.cod)}"
            )

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_same(other)
        base = other if self.is_zero else self
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return Morphism(base.dom, base.cod, self.flavor, out)

    def __neg__(self) -> "Morphism":
        return Morphism(self.dom, self.cod, self.flavor, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, c) -> "Morphism":
        c = scalar(c)
        return Morphism(self.dom, self.cod, self.flavor, {t: c * v for t, v in self.terms.items()})

    def __rmul__(self, c) -> "Morphism":
        return self.scale(c)

    def then(self, upper: "Morphism") -> "Morphism":
        """``upper`` stacked on top of ``self``."""
        return compose(upper, self)

    def __repr__(self):
        return f"<Morphism {format_word(self.dom)}->{format_word(self.cod)} {format_morphism(self)}>"

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and self.flavor == other.flavor
            and self.terms == other.terms
            and (self.is_zero or (self.dom, self.cod) == (other.dom, other.cod))
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))


def as_morphism(x) -> Morphism:
    if isinstance(x, Morphism):
        return x
    if isinstance(x, Term):
        return Morphism.of(x)
    raise TypeError(f"expected a Term or Morphism, got {type(x).__name__}")


def compose(top, bottom, *more) -> Morphism:
    """``top`` after ``bottom``; extra arguments continue downward."""
    if more:
        return compose(top, compose(bottom, *more))
    top, bottom = as_morphism(top), as_morphism(bottom)
    if top.flavor != bottom.flavor:
        raise BoundaryError(f"cannot compose {top.flavor} with {bottom.flavor} morphisms")
    if top.is_zero or bottom.is_zero:
        return Morphism.zero(bottom.dom, top.cod, top.flavor)
    if bottom.cod != top.dom:
        raise BoundaryError(
            f"codomain {format_word(bottom.cod)} of the lower morphism does not match "
            f"domain {format_word(top.dom)} of the upper morphism"
        )
    out: dict = {}
    for t1, c1 in top.terms.items():
        for t2, c2 in bottom.terms.items():
            t = compose_terms(t1, t2)
            out[t] = out.get(t, 0) + c1 * c2
    return Morphism(bottom.dom, top.cod, top.flavor, out)


def then(*layers) -> Morphism:
    """Stack morphisms bottom to top: ``then(f, g, h) == compose(h, g, f)``."""
    return compose(*reversed(layers)) if len(layers) > 1 else as_morphism(layers[0])


def tensor(*factors) -> Morphism:
    """Left-to-right tensor product; a single factor is returned as is."""
    if not factors:
        raise ValueError("tensor needs at least one factor")
    if len(factors) == 1:
        return as_morphism(factors[0])
    if len(factors) > 2:
        return tensor(tensor(*factors[:-1]), factors[-1])
    left, right = as_morphism(factors[0]), as_morphism(factors[1])
    if left.flavor != right.flavor:
        raise BoundaryError(f"cannot tensor {left.flavor} with {right.flavor} morphisms")
    dom, cod = left.dom + right.dom, left.cod + right.cod
    if left.is_zero or right.is_zero:
        return Morphism.zero(dom, cod, left.flavor)
    out: dict = {}
    for t1, c1 in left.terms.items():
        for t2, c2 in right.terms.items():
            t = tensor_terms(t1, t2)
            out[t] = out.get(t, 0) + c1 * c2
    return Morphism(dom, cod, left.flavor, out)


def linear_combination(pairs, dom, cod, flavor) -> Morphism:
    out = Morphism.zero(dom, cod, flavor)
    for c, m in pairs:
        out = out + as_morphism(m).scale(c)
    return out


# ---------------------------------------------------------------------------
# generator constructors

def _zero(dom, cod, flavor):
    return Morphism.zero(tuple(dom), tuple(cod), flavor)


def make(kind: str, params=(), flavor: str = PLAIN) -> Morphism:
    """Build a generator; a negative label anywhere gives the zero morphism."""
    params = tuple(int(p) for p in params)
    if kind == "id":
        word = params
        if flavor != ORIENTED and any(x < 0 for x in word):
            return _zero(word, word, flavor)
        return Morphism.of(Gen("id", clean_word(word), flavor))
    dom, cod, _ = _SIGNATURES[flavor](kind, params)
    if any(p < 0 for p in params):
        return _zero(dom, cod, flavor)
    if kind in ("split", "usplit", "dsplit", "merge", "umerge", "dmerge") and 0 in params:
        return identity(clean_word(dom), flavor)
    if kind in ("x", "ux", "rx", "lx", "dx") and 0 in params:
        return identity(clean_word(dom), flavor)
    if kind in ("lcap", "lcup", "rcap", "rcup") and params[0] == 0:
        return identity((), flavor)
    return Morphism.of(Gen(kind, params, flavor))


def identity(word=(), flavor: str = PLAIN) -> Morphism:
    return make("id", tuple(word), flavor)


def split(a, b):
    return make("split", (a, b))


def merge(a, b):
    return make("merge", (a, b))


def cap():
    return make("cap")


def cup():
    return make("cup")


def antenna():
    return make("ant")


def crossing(a, b):
    return make("x", (a, b))


def ident(*labels):
    return identity(labels)


def block(m) -> Morphism:
    """Wrap a linear combination as a single opaque piece.

    Composites containing a block stay factored instead of being multiplied
    out term by term, and evaluation computes the block's matrix once.
    """
    m = as_morphism(m)
    if m.is_zero:
        return m
    return Morphism.of(Gen("block", (m,), m.flavor))


def unblock(m) -> Morphism:
    """Multiply every block back out into ordinary terms."""

    def fn(g: Gen) -> Morphism:
        if g.kind == "block":
            return unblock(g.params[0])
        if g.kind == "id":
            return identity(g.params, g.flavor)
        return Morphism.of(g)

    m = as_morphism(m)
    return map_generators(m, fn, m.flavor)


# ---------------------------------------------------------------------------
# derived plain constructions

def rung_right(x: int, y: int, k: int) -> Morphism:
    """(x, y) -> (x-k, y+k): k strands leave the left edge and join the right one."""
    return then(tensor(split(x - k, k), ident(y)), tensor(ident(x - k), merge(k, y)))


def rung_left(x: int, y: int, k: int) -> Morphism:
    """(x, y) -> (x+k, y-k): k strands leave the right edge and join the left one."""
    return then(tensor(ident(x), split(k, y - k)), tensor(merge(x, k), ident(y - k)))


def crossing_expand(a: int, b: int) -> Morphism:
    """The crossing x(a,b) written as a signed sum of two-rung ladders."""
    out = Morphism.zero((a, b), (b, a), PLAIN)
    for s in range(0, a + 1):
        r = s - (a - b)
        if r < 0:
            continue
        ladder = then(rung_right(a, b, s), rung_left(a - s, b + s, r))
        out = out + ladder.scale((-1) ** (a - s))
    return Morphism(clean_word((a, b)), clean_word((b, a)), PLAIN, out.terms)


def green_dot(a: int) -> Morphism:
    """Split two strands off the right of an a-strand and close them with an antenna."""
    if a < 2:
        return _zero((a,), (a - 2,), PLAIN)
    return then(split(a - 2, 2), tensor(ident(a - 2), antenna()))


def green_dot_left(a: int) -> Morphism:
    """Mirror of :func:`green_dot`: the antenna closes two strands split off the left."""
    if a < 2:
        return _zero((a,), (a - 2,), PLAIN)
    return then(split(2, a - 2), tensor(antenna(), ident(a - 2)))


def cap_between(x: int, y: int) -> Morphism:
    """(x, y) -> (x-1, y-1): one strand off each edge, joined by a cap."""
    return then(tensor(split(x - 1, 1), split(1, y - 1)), tensor(ident(x - 1), cap(), ident(y - 1)))


def cup_between(x: int, y: int) -> Morphism:
    """(x, y) -> (x+1, y+1): a cup whose ends merge into the two edges."""
    return then(tensor(ident(x), cup(), ident(y)), tensor(merge(x, 1), merge(1, y)))


def multi_split(parts) -> Morphism:
    """Left-nested split of sum(parts) into parts, zero parts removed."""
    parts = [p for p in parts if p != 0]
    if any(p < 0 for p in parts):
        return _zero((sum(parts),), tuple(parts), PLAIN)
    if len(parts) <= 1:
        return ident(*parts)
    head = parts[:-1]
    return then(split(sum(head), parts[-1]), tensor(multi_split(head), ident(parts[-1])))


def multi_merge(parts) -> Morphism:
    parts = [p for p in parts if p != 0]
    if any(p < 0 for p in parts):
        return _zero(tuple(parts), (sum(parts),), PLAIN)
    if len(parts) <= 1:
        return ident(*parts)
    head = parts[:-1]
    return then(tensor(multi_merge(head), ident(parts[-1])), merge(sum(head), parts[-1]))


def at_position(word, pos: int, width: int, middle: Morphism) -> Morphism:
    """``middle`` acting on ``word[pos:pos+width]`` with identities on either side."""
    word = tuple(word)
    flavor = middle.flavor
    return tensor(identity(word[:pos], flavor), middle, identity(word[pos + width:], flavor))


def permutation(labels, order) -> Morphism:
    """Crossings moving strand ``order[k]`` of ``labels`` to position k.

    Built by bubble sort from the left, so the result is deterministic.
    """
    labels = list(labels)
    target = {src: k for k, src in enumerate(order)}
    if sorted(target) != list(range(len(labels))):
        raise ValueError("order must be a permutation of the strand positions")
    current = list(range(len(labels)))
    out = ident(*labels)
    changed = True
    while changed:
        changed = False
        for k in range(len(current) - 1):
            if target[current[k]] > target[current[k + 1]]:
                word = [labels[c] for c in current]
                out = then(out, at_position(word, k, 2, crossing(word[k], word[k + 1])))
                current[k], current[k + 1] = current[k + 1], current[k]
                changed = True
    return out


def pwebm_gen(kind: str, indices, t: int, word) -> Morphism:
    """The e, f, b, c and b_single generators on a word of length m (indices are 1-based)."""
    word = tuple(word)
    m = len(word)
    if kind == "b_single":
        (u,) = indices
        if not 1 <= u <= m:
            raise ValueError("strand index out of range")
        u -= 1
        return tensor(ident(*word[:u]), green_dot(word[u]), ident(*word[u + 1:]))
    r, s = indices
    if not 1 <= r < s <= m:
        raise ValueError("need 1 <= r < s <= m")
    r -= 1
    s -= 1
    left, mid, right = word[:r], word[r + 1:s], word[s + 1:]
    ar, as_ = word[r], word[s]
    if kind == "e":
        lower = tensor(ident(*left, ar, *mid), split(t, as_ - t), ident(*right))
        block = _move_left(mid, t)
        middle = tensor(ident(*left, ar), block, ident(as_ - t, *right))
        upper = tensor(ident(*left), merge(ar, t), ident(*mid, as_ - t, *right))
        return then(lower, middle, upper)
    if kind == "f":
        lower = tensor(ident(*left), split(ar - t, t), ident(*mid, as_, *right))
        block = _move_right(mid, t)
        middle = tensor(ident(*left, ar - t), block, ident(as_, *right))
        upper = tensor(ident(*left, ar - t, *mid), merge(t, as_), ident(*right))
        return then(lower, middle, upper)
    if kind == "b":
        lower = tensor(ident(*left), split(ar - 1, 1), ident(*mid), split(1, as_ - 1), ident(*right))
        block = _move_right(mid, 1)
        middle = tensor(ident(*left, ar - 1), block, ident(1, as_ - 1, *right))
        upper = tensor(ident(*left, ar - 1, *mid), cap(), ident(as_ - 1, *right))
        return then(lower, middle, upper)
    if kind == "c":
        lower = tensor(ident(*left, ar, *mid), cup(), ident(as_, *right))
        block = _move_left(mid, 1)
        middle = tensor(ident(*left, ar), block, ident(1, as_, *right))
        upper = tensor(ident(*left), merge(ar, 1), ident(*mid), merge(1, as_), ident(*right))
        return then(lower, middle, upper)
    raise ValueError(f"unknown generator kind {kind!r}")


def _move_left(mid, t) -> Morphism:
    """(mid..., t) -> (t, mid...) by crossings."""
    word = tuple(mid) + (t,)
    return permutation(word, (len(mid),) + tuple(range(len(mid))))


def _move_right(mid, t) -> Morphism:
    """(t, mid...) -> (mid..., t) by crossings."""
    word = (t,) + tuple(mid)
    return permutation(word, tuple(range(1, len(mid) + 1)) + (0,))


# ---------------------------------------------------------------------------
# basis webs

class ChiTuple:
    """Combinatorial data (A, B, C, D) indexing a basis web from ``a`` to ``b``."""

    __slots__ = ("A", "B", "C", "D", "a", "b")

    def __init__(self, A, B, C, D, a, b):
        self.A = tuple(tuple(int(x) for x in row) for row in A)
        self.B = tuple(tuple(int(x) for x in row) for row in B)
        self.C = tuple(tuple(int(x) for x in row) for row in C)
        self.D = tuple(int(x) for x in D)
        self.a = tuple(a)
        self.b = tuple(b)

    def _key(self):
        return (self.a, self.b, self.A, self.B, self.D, self.C)

    def __eq__(self, other):
        return isinstance(other, ChiTuple) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"ChiTuple(A={self.A}, B={self.B}, C={self.C}, D={self.D}, a={self.a}, b={self.b})"

    def validate(self):
        t, u = len(self.a), len(self.b)
        if len(self.A) != t or any(len(r) != t for r in self.A):
            raise ValueError("A must be t x t")
        if len(self.B) != u or any(len(r) != u for r in self.B):
            raise ValueError("B must be u x u")
        if len(self.C) != t or any(len(r) != u for r in self.C):
            raise ValueError("C must be t x u")
        if len(self.D) != t:
            raise ValueError("D must have length t")
        for M, k in ((self.A, t), (self.B, u)):
            for i in range(k):
                if M[i][i] != 0:
                    raise ValueError("A and B need a zero diagonal")
                for j in range(k):
                    if M[i][j] not in (0, 1) or M[i][j] != M[j][i]:
                        raise ValueError("A and B must be symmetric 0/1 matrices")
        if any(d not in (0, 1) for d in self.D) or any(x < 0 for r in self.C for x in r):
            raise ValueError("D must be 0/1 and C nonnegative")
        for i in range(t):
            if 2 * self.D[i] + sum(self.A[i]) + sum(self.C[i]) != self.a[i]:
                raise ValueError(f"row constraint fails at domain strand {i + 1}")
        for j in range(u):
            if sum(self.B[k][j] for k in range(u)) + sum(self.C[i][j] for i in range(t)) != self.b[j]:
                raise ValueError(f"column constraint fails at codomain strand {j + 1}")

    @property
    def cap_pairs(self):
        t = len(self.a)
        return [(i, j) for i in range(t) for j in range(i + 1, t) if self.A[i][j]]

    @property
    def cup_pairs(self):
        u = len(self.b)
        return [(k, l) for k in range(u) for l in range(k + 1, u) if self.B[k][l]]

    @property
    def parity(self) -> int:
        return (len(self.cap_pairs) + len(self.cup_pairs) + sum(self.D)) % 2


def xi_term(chi: ChiTuple) -> Morphism:
    """The basis web attached to ``chi``.

    Bottom to top: green dots, multi-splits (cap strands then through strands),
    a crossing block bringing cap partners together, caps, cups to the right of
    the through strands, a second crossing block sorting strands by target, and
    multi-merges (cup strands then through strands).
    """
    chi.validate()
    a, b = chi.a, chi.b
    t, u = len(a), len(b)
    if any(x == 0 for x in a) or any(x == 0 for x in b):
        raise ValueError("basis webs are indexed by words without zero labels")

    dots = tensor(*[green_dot(a[i]) if chi.D[i] else ident(a[i]) for i in range(t)]) if t else ident()

    tokens = []  # (kind, i, j, label)
    splits = []
    for i in range(t):
        parts = []
        for j in range(t):
            if chi.A[i][j]:
                tokens.append(("A", i, j, 1))
                parts.append(1)
        for j in range(u):
            if chi.C[i][j]:
                tokens.append(("C", i, j, chi.C[i][j]))
                parts.append(chi.C[i][j])
        splits.append(multi_split(parts))
    split_layer = tensor(*splits) if splits else ident()

    position = {tok[:3]: k for k, tok in enumerate(tokens)}
    order = []
    for i, j in chi.cap_pairs:
        order += [position[("A", i, j)], position[("A", j, i)]]
    through = [k for k, tok in enumerate(tokens) if tok[0] == "C"]
    order += through
    labels = [tok[3] for tok in tokens]
    gather = permutation(labels, order) if labels else ident()
    through_labels = [labels[k] for k in through]
    n_caps = len(chi.cap_pairs)
    caps = tensor(*([cap()] * n_caps), ident(*through_labels)) if n_caps else ident(*through_labels)

    upper_tokens = [tokens[k] for k in through]
    cups = ident(*through_labels)
    for k, l in chi.cup_pairs:
        cups = then(cups, tensor(ident(*[tok[3] for tok in upper_tokens]), cup()))
        upper_tokens += [("B", k, l, 1), ("B", l, k, 1)]

    position = {tok[:3]: p for p, tok in enumerate(upper_tokens)}
    order = []
    merges = []
    for j in range(u):
        parts = []
        for k in range(u):
            if chi.B[j][k]:
                order.append(position[("B", j, k)])
                parts.append(1)
        for i in range(t):
            if chi.C[i][j]:
                order.append(position[("C", i, j)])
                parts.append(chi.C[i][j])
        merges.append(multi_merge(parts))
    upper_labels = [tok[3] for tok in upper_tokens]
    sort = permutation(upper_labels, order) if upper_labels else ident()
    merge_layer = tensor(*merges) if merges else ident()

    out = then(dots, split_layer, gather, caps, cups, sort, merge_layer)
    return Morphism(a, b, PLAIN, out.terms)


# ---------------------------------------------------------------------------
# oriented constructions

def oriented(kind: str, *params) -> Morphism:
    return make(kind, params, ORIENTED)


def oid(*word) -> Morphism:
    return identity(word, ORIENTED)


def oriented_crossing(x: int, y: int) -> Morphism:
    """Crossing of two signed strands: (x, y) -> (y, x)."""
    a, b = abs(x), abs(y)
    if x >= 0 and y >= 0:
        return oriented("ux", a, b)
    if x >= 0:
        return oriented("rx", a, b)
    if y >= 0:
        return oriented("lx", a, b)
    return oriented("dx", a, b)


def nested_lcups(word) -> Morphism:
    """Cups producing ``(word..., reversed dual word...)``: nested left cups."""
    word = tuple(word)
    if not word:
        return oid()
    inner = nested_lcups(word[1:])
    outer = oriented("lcup", word[0])
    return then(outer, tensor(oid(word[0]), inner, oid(-word[0])))


def macro_definition(g: Gen) -> Morphism:
    """Composite of primitive oriented generators that defines a derived piece."""
    k, p = g.kind, g.params
    if k == "rcap":
        (a,) = p
        return then(oriented("rx", a, a), oriented("lcap", a))
    if k == "rcup":
        (a,) = p
        return then(oriented("lcup", a), oriented("rx", a, a))
    if k == "upcap":
        return then(tensor(oriented("tagin"), oid(1)), oriented("lcap", 1))
    if k == "upcup":
        return then(oriented("lcup", 1), tensor(oid(1), oriented("tagout")))
    if k == "upant":
        return then(oriented("usplit", 1, 1), oriented("upcap")).scale(Fraction(1, 2))
    if k == "lx":
        a, b = p
        return then(
            tensor(oid(-a, b), oriented("lcup", a)),
            tensor(oid(-a), oriented("ux", b, a), oid(-a)),
            tensor(oriented("lcap", a), oid(b, -a)),
        )
    if k == "dx":
        a, b = p
        cups = then(oriented("lcup", a), tensor(oid(a), oriented("lcup", b), oid(-a)))
        return then(
            tensor(oid(-a, -b), cups),
            tensor(oid(-a, -b), oriented("ux", a, b), oid(-b, -a)),
            tensor(oid(-a), oriented("lcap", b), oid(a, -b, -a)),
            tensor(oriented("lcap", a), oid(-b, -a)),
        )
    if k == "dsplit":
        a, b = p
        return then(
            tensor(oid(-a, -b), oriented("lcup", a + b)),
            tensor(oid(-a, -b), oriented("usplit", b, a), oid(-(a + b))),
            tensor(oid(-a), oriented("lcap", b), oid(a, -(a + b))),
            tensor(oriented("lcap", a), oid(-(a + b))),
        )
    if k == "dmerge":
        a, b = p
        cups = then(oriented("lcup", b), tensor(oid(b), oriented("lcup", a), oid(-b)))
        return then(
            tensor(oid(-(a + b)), cups),
            tensor(oid(-(a + b)), oriented("umerge", b, a), oid(-a, -b)),
            tensor(oriented("lcap", a + b), oid(-a, -b)),
        )
    raise KeyError(k)


# ---------------------------------------------------------------------------
# functors on terms

def map_generators(m, fn, flavor: str) -> Morphism:
    """Covariant, generator-by-generator replacement; ``fn(gen)`` returns a Morphism."""
    m = as_morphism(m)

    def walk(t: Term) -> Morphism:
        if isinstance(t, Gen):
            return fn(t)
        if isinstance(t, Compose):
            return compose(walk(t.top), walk(t.bottom))
        return tensor(walk(t.left), walk(t.right))

    out = None
    for t, c in m.terms.items():
        piece = walk(t).scale(c)
        out = piece if out is None else out + piece
    if out is None:
        return Morphism.zero(m.dom, m.cod, flavor)
    return out


def brauer_embed(m) -> Morphism:
    """Marked Brauer diagrams into thin-strand webs."""

    def fn(g: Gen) -> Morphism:
        if g.kind == "id":
            return identity(g.params, PLAIN)
        return {"twist": lambda: crossing(1, 1), "bcap": cap, "bcup": cup}[g.kind]()

    return map_generators(m, fn, PLAIN)


def to_oriented(m) -> Morphism:
    """Plain webs drawn with every strand pointing up."""

    def fn(g: Gen) -> Morphism:
        k, p = g.kind, g.params
        if k == "id":
            return oid(*p)
        table = {"split": "usplit", "merge": "umerge", "cap": "upcap", "cup": "upcup", "ant": "upant", "x": "ux"}
        return oriented(table[k], *p)

    return map_generators(m, fn, ORIENTED)


def brauer(kind: str) -> Morphism:
    return make(kind, (), BRAUER)


def brauer_id(k: int = 1) -> Morphism:
    return identity((1,) * k, BRAUER)


_REFL_PLAIN = {"split": "merge", "merge": "split", "cap": "cup", "cup": "cap"}
_REFL_ORIENTED = {
    "usplit": "dsplit", "dsplit": "usplit", "umerge": "dmerge", "dmerge": "umerge",
    "lcap": "lcup", "lcup": "lcap", "rcap": "rcup", "rcup": "rcap",
    "tagin": "tagin", "tagout": "tagout",
}
_REFL_BRAUER = {"bcap": "bcup", "bcup": "bcap", "twist": "twist"}


def _refl_gen(g: Gen) -> Morphism:
    k, p, fl = g.kind, g.params, g.flavor
    if k == "id":
        if fl == ORIENTED:
            return identity(tuple(-x for x in p), fl)
        return identity(p, fl)
    if fl == PLAIN:
        if k in _REFL_PLAIN:
            return make(_REFL_PLAIN[k], p)
        if k == "x":
            return crossing(p[1], p[0])
        if k == "ant":
            return then(cup(), merge(1, 1)).scale(Fraction(1, 2))
    elif fl == BRAUER:
        return brauer(_REFL_BRAUER[k])
    else:
        if k in _REFL_ORIENTED:
            return oriented(_REFL_ORIENTED[k], *p)
        if k in ("rx", "lx"):
            return oriented(k, p[1], p[0])
        if k == "ux":
            return oriented("dx", p[1], p[0])
        if k == "dx":
            return oriented("ux", p[1], p[0])
        if k in MACRO_KINDS:
            return _refl_morphism(macro_definition(g), expand=True)
    raise KeyError(k)


def _refl_morphism(m: Morphism, expand: bool = False) -> Morphism:
    def walk(t: Term) -> Morphism:
        if isinstance(t, Gen):
            return _refl_gen(t)
        if isinstance(t, Compose):
            return compose(walk(t.bottom), walk(t.top))
        return tensor(walk(t.left), walk(t.right))

    def flip(word):
        return tuple(-x for x in word) if m.flavor == ORIENTED else word

    out = Morphism.zero(flip(m.cod), flip(m.dom), m.flavor)
    for t, c in m.terms.items():
        k = count_odd_generators(t)
        sign = -1 if (k * (k - 1) // 2) % 2 else 1
        out = out + walk(t).scale(sign * c)
    return out


def refl(m) -> Morphism:
    """Mirror a diagram top to bottom, with the sign (-1)^{k(k-1)/2} for k odd generators."""
    return _refl_morphism(as_morphism(m))


# ---------------------------------------------------------------------------
# printing

def _format_labels(params) -> str:
    return ",".join(str(x) for x in params)


def format_generator(g: Gen) -> str:
    k, p, fl = g.kind, g.params, g.flavor
    if k == "block":
        return f"({format_morphism(p[0])})"
    if k == "id":
        if not p:
            return "id(0)"
        if fl == ORIENTED:
            return " * ".join(f"uid({x})" if x > 0 else f"did({-x})" for x in p)
        return " * ".join(f"id({x})" for x in p)
    names = {"usplit": "split", "umerge": "merge", "ux": "x", "upcap": "cap", "upcup": "cup", "upant": "ant",
             "twist": "x", "bcap": "cap", "bcup": "cup"}
    name = names.get(k, k) if fl != PLAIN else k
    if fl == BRAUER and k == "twist":
        return "x(1,1)"
    if not p:
        return name
    return f"{name}({_format_labels(p)})"


def format_term(t: Term) -> str:
    if isinstance(t, Gen):
        s = format_generator(t)
        return f"({s})" if " * " in s else s
    if isinstance(t, Compose):
        return f"({format_term(t.bottom)} ; {format_term(t.top)})"
    return f"({format_term(t.left)} * {format_term(t.right)})"


def format_morphism(m: Morphism) -> str:
    if m.is_zero:
        return "0"
    pieces = []
    for t, c in sorted(m.terms.items(), key=lambda kv: format_term(kv[0])):
        body = format_term(t)
        pieces.append(body if c == 1 else f"{format_scalar(c)} : {body}")
    return " + ".join(pieces)

