"""Evaluate web diagrams as exact sparse matrices on tensor products of symmetric powers.

A term is flattened into layers, each a single generator placed after some
number of strands.  Basis monomials of the domain are pushed through the
layers one at a time; generator matrices are built once per ``(generator, n)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from . import _accel
from .exact_arith import format_scalar
from .superspace import (
    PnElement,
    Space,
    format_monomial,
    monomial_parity,
    normalize_slot,
    orbit_representatives,
    pn_act,
    pn_basis,
    relabel_signed,
    slot_basis,
    slot_parity,
)
from .web_terms import (
    MACRO_KINDS,
    ORIENTED,
    BoundaryError,
    Compose,
    Gen,
    Morphism,
    Tensor,
    Term,
    as_morphism,
    format_word,
    macro_definition,
)

DEFAULT_MAX_DIM = 200000


class DimensionLimitError(RuntimeError):
    """A basis enumeration would exceed the configured size cap."""


def max_dim() -> int:
    raw = os.environ.get("WEBCAT_MAX_DIM")
    return int(raw) if raw else DEFAULT_MAX_DIM


def space_for(word, n: int, flavor: str) -> Space:
    if flavor == ORIENTED:
        return Space.of([abs(x) for x in word], n, [x < 0 for x in word])
    return Space.of(word, n)


def _checked_basis(space: Space) -> list:
    dim = space.dimension()
    cap = max_dim()
    if dim > cap:
        raise DimensionLimitError(
            f"basis of {space.weights} at n={space.n} has {dim} monomials, above the cap {cap} (WEBCAT_MAX_DIM)"
        )
    return space.basis()


@dataclass
class LinearMap:
    """Sparse matrix: ``columns[domain monomial] = {codomain monomial: coefficient}``."""

    dom: Space
    cod: Space
    parity: int
    columns: dict = field(default_factory=dict)
    dom_word: tuple = ()
    cod_word: tuple = ()

    def apply(self, vector: dict) -> dict:
        out: dict = {}
        for mono, c in vector.items():
            for img, d in self.columns.get(mono, {}).items():
                out[img] = out.get(img, 0) + c * d
        return {k: v for k, v in out.items() if v}

    def scaled(self, c) -> "LinearMap":
        cols = {}
        if c:
            cols = {m: {k: v * c for k, v in col.items()} for m, col in self.columns.items()}
        return LinearMap(self.dom, self.cod, self.parity, cols, self.dom_word, self.cod_word)

    def add(self, other: "LinearMap") -> "LinearMap":
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise BoundaryError("cannot add linear maps with different domains or codomains")
        cols = {m: dict(col) for m, col in self.columns.items()}
        for m, col in other.columns.items():
            tgt = cols.setdefault(m, {})
            for k, v in col.items():
                tgt[k] = tgt.get(k, 0) + v
        cols = {m: {k: v for k, v in col.items() if v} for m, col in cols.items()}
        cols = {m: col for m, col in cols.items() if col}
        return LinearMap(self.dom, self.cod, self.parity, cols, self.dom_word, self.cod_word)

    def is_zero(self) -> bool:
        return not any(self.columns.values())

    def entries(self):
        """Nonzero entries ``(domain monomial, codomain monomial, coefficient)`` in basis order."""
        dom_order = {m: k for k, m in enumerate(self.dom.basis())}
        cod_order = {m: k for k, m in enumerate(self.cod.basis())}
        for m in sorted(self.columns, key=dom_order.__getitem__):
            col = self.columns[m]
            for img in sorted(col, key=cod_order.__getitem__):
                yield m, img, col[img]

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        if (self.dom, self.cod) != (other.dom, other.cod):
            return False
        return _clean(self.columns) == _clean(other.columns)

    def first_difference(self, other: "LinearMap"):
        """The first entry, in basis order, where the two maps disagree (or None)."""
        diff = self.add(other.scaled(-1))
        for entry in diff.entries():
            m, img, _ = entry
            return m, img, self.columns.get(m, {}).get(img, 0), other.columns.get(m, {}).get(img, 0)
        return None

    def dump(self) -> str:
        lines = [
            f"dom={format_word(self.dom_word)} cod={format_word(self.cod_word)} n={self.dom.n} parity={self.parity}"
        ]
        for m, img, c in self.entries():
            lines.append(
                f"{format_monomial(m, self.dom.duals)} -> {format_scalar(Fraction(c))} {format_monomial(img, self.cod.duals)}"
            )
        return "\n".join(lines)


def _clean(columns: dict) -> dict:
    out = {}
    for m, col in columns.items():
        col = {k: Fraction(v) for k, v in col.items() if v}
        if col:
            out[m] = col
    return out


# ---------------------------------------------------------------------------
# generator matrices

def split_signs(word: tuple, a: int):
    """Yield ``(sign, left part, right part)`` over position subsets of size ``a``."""
    size = len(word)
    for T in combinations(range(size), a):
        tset = set(T)
        U = [p for p in range(size) if p not in tset]
        eps = 0
        for t in T:
            if word[t] < 0:
                for u in U:
                    if u < t and word[u] < 0:
                        eps ^= 1
        yield (-1 if eps else 1), tuple(word[t] for t in T), tuple(word[u] for u in U)


def _table_split(a: int, b: int, n: int) -> dict:
    table = {}
    for x in slot_basis(a + b, n):
        acc: dict = {}
        for sign, xt, xu in split_signs(x, a):
            acc[(xt, xu)] = acc.get((xt, xu), 0) + sign
        table[(x,)] = tuple((k, v) for k, v in acc.items() if v)
    return table


def _table_merge(a: int, b: int, n: int) -> dict:
    table = {}
    for x in slot_basis(a, n):
        for y in slot_basis(b, n):
            res = normalize_slot(x + y)
            if res is not None:
                table[(x, y)] = (((res[1],), res[0]),)
    return table


def _table_cap(n: int) -> dict:
    return {((i,), (-i,)): (((), 1),) for i in list(range(1, n + 1)) + [-i for i in range(1, n + 1)]}


def _table_cup(n: int) -> dict:
    col = tuple((((i,), (-i,)), -1 if i < 0 else 1) for i in list(range(1, n + 1)) + [-i for i in range(1, n + 1)])
    return {(): col}


def _table_antenna(n: int) -> dict:
    return {((i, -i),): (((), 1),) for i in range(1, n + 1)}


def _table_swap(a: int, b: int, n: int) -> dict:
    table = {}
    for x in slot_basis(a, n):
        px = slot_parity(x)
        for y in slot_basis(b, n):
            table[(x, y)] = (((y, x), -1 if (px and slot_parity(y)) else 1),)
    return table


def _table_eval(a: int, n: int) -> dict:
    return {(g, g): (((), 1),) for g in slot_basis(a, n)}


def _table_coeval(a: int, n: int) -> dict:
    return {(): tuple(((g, g), 1) for g in slot_basis(a, n))}


def _table_tag(n: int) -> dict:
    idx = list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
    return {((i,),): ((((-i,),), 1),) for i in idx}


@lru_cache(maxsize=None)
def generator_table(g: Gen, n: int) -> dict:
    """Sparse matrix of a generator as ``{input slots: ((output slots, coeff), ...)}``."""
    k, p = g.kind, g.params
    if k in ("split", "usplit"):
        return _table_split(p[0], p[1], n)
    if k in ("merge", "umerge"):
        return _table_merge(p[0], p[1], n)
    if k in ("cap", "bcap"):
        return _table_cap(n)
    if k in ("cup", "bcup"):
        return _table_cup(n)
    if k == "ant":
        return _table_antenna(n)
    if k in ("x", "ux", "rx"):
        return _table_swap(p[0], p[1], n)
    if k == "twist":
        return _table_swap(1, 1, n)
    if k == "lcap":
        return _table_eval(p[0], n)
    if k == "lcup":
        return _table_coeval(p[0], n)
    if k in ("tagin", "tagout"):
        return _table_tag(n)
    if k == "block":
        return symmetric_table(p[0], n)
    if k in MACRO_KINDS:
        return symmetric_table(macro_definition(g), n)
    raise KeyError(f"no evaluation rule for generator {k!r}")


def symmetric_table(m: Morphism, n: int) -> dict:
    """Generator-style table of a composite, computed on orbit representatives.

    The remaining columns follow from L(s.x) = s.L(x) for index relabelings s,
    which every generator satisfies.
    """
    dom = space_for(m.dom, n, m.flavor)
    reps = orbit_representatives(dom)
    known = evaluate(m, n, reps).columns
    perms = list(permutations(range(1, n + 1)))
    table: dict = {}
    for rep in reps:
        col = known.get(rep)
        for perm in perms:
            sign, mono = relabel_signed(rep, perm)
            if mono in table:
                continue
            if not col:
                table[mono] = ()
                continue
            image: dict = {}
            for img, c in col.items():
                s, moved = relabel_signed(img, perm)
                image[moved] = image.get(moved, 0) + sign * s * c
            table[mono] = tuple((k, v) for k, v in image.items() if v)
    return {mono: col for mono, col in table.items() if col}


def eval_generator(g, n: int) -> LinearMap:
    if isinstance(g, Morphism):
        (g,) = g.terms
    if not isinstance(g, Gen):
        raise TypeError("eval_generator expects a single generator")
    return evaluate(Morphism.of(g), n)


# ---------------------------------------------------------------------------
# term evaluation

def flatten(t: Term, offset: int = 0, out=None) -> list:
    """Generators of ``t`` as ``(generator, strands to the left)``, bottom layer first."""
    if out is None:
        out = []
    if isinstance(t, Gen):
        if t.kind != "id":
            out.append((t, offset))
    elif isinstance(t, Compose):
        flatten(t.bottom, offset, out)
        flatten(t.top, offset, out)
    elif isinstance(t, Tensor):
        # (f (x) g) = (f (x) 1) o (1 (x) g): the right factor acts first, no extra sign
        flatten(t.right, offset + len(t.left.dom), out)
        flatten(t.left, offset, out)
    else:
        raise TypeError(type(t).__name__)
    return out


def _layers(t: Term, n: int) -> list:
    return [(generator_table(g, n), off, len(g.dom), bool(g.parity)) for g, off in flatten(t)]


def evaluate_term(t: Term, n: int, columns=None) -> dict:
    basis = _checked_basis(space_for(t.dom, n, t.flavor)) if columns is None else list(columns)
    return _accel.push_columns(basis, _layers(t, n))


def evaluate(m, n: int, columns=None) -> LinearMap:
    """The exact matrix of a morphism (or term) at rank ``n``.

    ``columns`` restricts the computation to the given domain monomials.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    m = as_morphism(m)
    dom = space_for(m.dom, n, m.flavor)
    cod = space_for(m.cod, n, m.flavor)
    if any(x < 0 for x in m.dom + m.cod) and m.flavor != ORIENTED:
        # a zero morphism through a negatively labeled object
        return LinearMap(dom, cod, 0, {}, m.dom, m.cod)
    if m.flavor != ORIENTED and columns is None:
        _checked_basis(cod)
    parity = m.parity or 0
    cols: dict = {}
    for t, c in m.terms.items():
        c = _tidy(c)
        for mono, vec in evaluate_term(t, n, columns).items():
            tgt = cols.setdefault(mono, {})
            for k, v in vec.items():
                tgt[k] = tgt.get(k, 0) + c * v
    cols = {mono: {k: _tidy(v) for k, v in col.items() if v} for mono, col in cols.items()}
    cols = {mono: col for mono, col in cols.items() if col}
    return LinearMap(dom, cod, parity, cols, m.dom, m.cod)


def _tidy(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v.numerator)
    return v


# ---------------------------------------------------------------------------
# direct matrix operations

def super_compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """f after g."""
    if g.cod != f.dom:
        raise BoundaryError("codomain of the inner map does not match the domain of the outer map")
    cols = {}
    for m, col in g.columns.items():
        img = f.apply(col)
        if img:
            cols[m] = img
    return LinearMap(g.dom, f.cod, (f.parity + g.parity) % 2, cols, g.dom_word, f.cod_word)


def super_tensor(f: LinearMap, g: LinearMap) -> LinearMap:
    """(f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y)."""
    if f.dom.n != g.dom.n:
        raise BoundaryError("cannot tensor maps over different n")
    dom = Space(f.dom.slots + g.dom.slots, f.dom.n)
    cod = Space(f.cod.slots + g.cod.slots, f.dom.n)
    k = len(f.dom.slots)
    cols = {}
    for mono in _checked_basis(dom):
        x, y = mono[:k], mono[k:]
        fx, gy = f.columns.get(x), g.columns.get(y)
        if not fx or not gy:
            continue
        sign = -1 if (g.parity and monomial_parity(x)) else 1
        cols[mono] = {a + b: sign * c * d for a, c in fx.items() for b, d in gy.items()}
    return LinearMap(dom, cod, (f.parity + g.parity) % 2, cols, f.dom_word + g.dom_word, f.cod_word + g.cod_word)


def identity_map(space: Space, word=()) -> LinearMap:
    return LinearMap(space, space, 0, {m: {m: 1} for m in _checked_basis(space)}, tuple(word), tuple(word))


# ---------------------------------------------------------------------------
# equivariance

@dataclass
class EquivarianceReport:
    ok: bool
    checked: int
    witness: tuple | None = None  # (lie element label, monomial, lhs vector, rhs vector)

    def __bool__(self):
        return self.ok


def check_equivariance(L: LinearMap, n: int | None = None, elements=None) -> EquivarianceReport:
    """Verify L(x.m) = (-1)^{|x||L|} x.L(m) for all basis x of p(n) and all basis monomials m."""
    n = n if n is not None else L.dom.n
    if n != L.dom.n:
        raise ValueError("the map was evaluated at a different n")
    elements = elements if elements is not None else pn_basis(n)
    checked = 0
    for x in elements:
        sign = -1 if (x.parity and L.parity) else 1
        for mono in _checked_basis(L.dom):
            lhs = L.apply(pn_act(x, {mono: 1}, L.dom))
            rhs = {k: sign * v for k, v in pn_act(x, L.columns.get(mono, {}), L.cod).items()}
            checked += 1
            if _clean({0: lhs}) != _clean({0: rhs}):
                return EquivarianceReport(False, checked, (x.label, mono, lhs, rhs))
    return EquivarianceReport(True, checked)


def lie_element(n: int, A=None, B=None, C=None, label: str = "") -> PnElement:
    return PnElement.from_blocks(A=A, B=B, C=C, label=label)
