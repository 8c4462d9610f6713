"""Basis webs of Hom(a, b), exact ranks, decomposition and equality of morphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm

from .evaluation import LinearMap, evaluate
from .web_terms import (
    ORIENTED,
    PLAIN,
    BoundaryError,
    ChiTuple,
    Morphism,
    as_morphism,
    compose,
    format_word,
    ident,
    multi_merge,
    multi_split,
    nested_lcups,
    oid,
    oriented,
    oriented_crossing,
    tensor,
    then,
    xi_term,
)


class InconsistentSystemError(RuntimeError):
    """The basis webs failed to span a morphism; signals a bug, never bad input."""


# ---------------------------------------------------------------------------
# chi enumeration

def _symmetric_01(size: int, caps):
    """Symmetric 0/1 matrices with zero diagonal, row sums bounded by ``caps``, in lex order."""
    cells = [(i, j) for i in range(size) for j in range(i + 1, size)]
    M = [[0] * size for _ in range(size)]
    room = list(caps)

    def fill(k):
        if k == len(cells):
            yield tuple(tuple(r) for r in M)
            return
        i, j = cells[k]
        yield from fill(k + 1)
        if room[i] > 0 and room[j] > 0:
            M[i][j] = M[j][i] = 1
            room[i] -= 1
            room[j] -= 1
            yield from fill(k + 1)
            M[i][j] = M[j][i] = 0
            room[i] += 1
            room[j] += 1

    yield from fill(0)


def _contingency(rows, cols):
    """Nonnegative integer matrices with the given row and column sums, row-major lex order."""
    t, u = len(rows), len(cols)
    if sum(rows) != sum(cols):
        return
    if t == 0 or u == 0:
        if sum(rows) == 0:
            yield tuple(tuple([0] * u) for _ in range(t))
        return
    M = [[0] * u for _ in range(t)]
    col_left = list(cols)

    def fill(i, j, row_left):
        if i == t:
            if all(c == 0 for c in col_left):
                yield tuple(tuple(r) for r in M)
            return
        if j == u - 1:
            v = row_left
            if v <= col_left[j]:
                M[i][j] = v
                col_left[j] -= v
                yield from fill(i + 1, 0, rows[i + 1] if i + 1 < t else 0)
                col_left[j] += v
            return
        for v in range(0, min(row_left, col_left[j]) + 1):
            M[i][j] = v
            col_left[j] -= v
            yield from fill(i, j + 1, row_left - v)
            col_left[j] += v

    yield from fill(0, 0, rows[0])


def enumerate_chi(a, b) -> list:
    """All (A, B, C, D) tuples for the words ``a`` and ``b``, ordered by (A, B, D, C)."""
    a, b = tuple(a), tuple(b)
    if any(x < 0 for x in a + b):
        raise ValueError("labels must be nonnegative")
    t, u = len(a), len(b)
    out = []
    for A in _symmetric_01(t, a):
        for B in _symmetric_01(u, b):
            col = [b[j] - sum(B[j]) for j in range(u)]
            for D in product((0, 1), repeat=t):
                row = [a[i] - 2 * D[i] - sum(A[i]) for i in range(t)]
                if any(r < 0 for r in row):
                    continue
                for C in _contingency(row, col):
                    out.append(ChiTuple(A, B, C, D, a, b))
    out.sort(key=lambda c: (c.A, c.B, c.D, c.C))
    return out


def hom_dim(a, b) -> int:
    return len(enumerate_chi(tuple(x for x in a if x), tuple(x for x in b if x)))


@dataclass
class HomBasis:
    dom: tuple
    cod: tuple
    tuples: list = field(default_factory=list)
    terms: list = field(default_factory=list)


def hom_basis(a, b) -> HomBasis:
    a = tuple(x for x in a if x)
    b = tuple(x for x in b if x)
    tuples = enumerate_chi(a, b)
    return HomBasis(a, b, tuples, [xi_term(c) for c in tuples])


# ---------------------------------------------------------------------------
# exact linear algebra

def _integer_rows(vectors: list, columns: list) -> list:
    rows = []
    for vec in vectors:
        vals = [Fraction(vec.get(c, 0)) for c in columns]
        den = lcm(*(v.denominator for v in vals)) if vals else 1
        rows.append([int(v * den) for v in vals])
    return rows


def bareiss_echelon(rows: list):
    """Fraction-free elimination in place; returns (rank, pivot columns, row order)."""
    M = [list(r) for r in rows]
    m = len(M)
    ncol = len(M[0]) if M else 0
    order = list(range(m))
    prev = 1
    rank = 0
    pivots = []
    for col in range(ncol):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        order[rank], order[piv] = order[piv], order[rank]
        p = M[rank][col]
        prow = M[rank]
        for i in range(rank + 1, m):
            row = M[i]
            f = row[col]
            M[i] = [(p * row[j] - f * prow[j]) // prev for j in range(ncol)]
        prev = p
        pivots.append(col)
        rank += 1
    return rank, pivots, order


def _flatten_map(L: LinearMap) -> dict:
    return {(m, k): v for m, col in L.columns.items() for k, v in col.items() if v}


def gram_rank(maps: list) -> int:
    """Rank over the rationals of a family of linear maps with a common domain and codomain."""
    if not maps:
        return 0
    first = maps[0]
    for L in maps[1:]:
        if (L.dom, L.cod) != (first.dom, first.cod):
            raise BoundaryError("gram_rank needs maps with a common domain and codomain")
    vectors = [_flatten_map(L) for L in maps]
    columns = sorted({k for v in vectors for k in v}, key=repr)
    if not columns:
        return 0
    rank, _, _ = bareiss_echelon(_integer_rows(vectors, columns))
    return rank


def _solve_square(matrix: list, rhs: list) -> list:
    """Solve ``x . matrix = rhs`` for a square invertible rational matrix (rows are unknowns)."""
    k = len(matrix)
    # transpose into equations: sum_i x_i matrix[i][j] = rhs[j]
    aug = [[Fraction(matrix[i][j]) for i in range(k)] + [Fraction(rhs[j])] for j in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][k] for r in range(k)]


def solve_in_span(target: LinearMap, spanning: list) -> list:
    """Coefficients c with sum c_i spanning_i = target; the spanning maps must be independent."""
    vectors = [_flatten_map(L) for L in spanning]
    goal = _flatten_map(target)
    if not vectors:
        if goal:
            raise InconsistentSystemError("nonzero morphism in a zero Hom space")
        return []
    columns = sorted({k for v in vectors for k in v} | set(goal), key=repr)
    rank, pivots, _ = bareiss_echelon(_integer_rows(vectors, columns))
    if rank != len(vectors):
        raise InconsistentSystemError(f"basis images have rank {rank}, expected {len(vectors)}")
    sub = [[Fraction(v.get(columns[c], 0)) for c in pivots] for v in vectors]
    coeffs = _solve_square(sub, [Fraction(goal.get(columns[c], 0)) for c in pivots])
    for col in columns:
        total = sum((c * Fraction(v.get(col, 0)) for c, v in zip(coeffs, vectors)), Fraction(0))
        if total != Fraction(goal.get(col, 0)):
            raise InconsistentSystemError("morphism is not in the span of the basis webs")
    return coeffs


# ---------------------------------------------------------------------------
# faithful evaluation, equality, decomposition

def total_weight(word) -> int:
    return sum(abs(x) for x in word)


def faithful_n(a, b) -> int:
    return max(1, -(-(total_weight(a) + total_weight(b)) // 2))


def _check_pair(m1: Morphism, m2: Morphism):
    if m1.flavor != m2.flavor:
        raise BoundaryError(f"cannot compare {m1.flavor} and {m2.flavor} morphisms")
    if (m1.dom, m1.cod) != (m2.dom, m2.cod) and not (m1.is_zero or m2.is_zero):
        raise BoundaryError(
            f"morphisms {format_word(m1.dom)}->{format_word(m1.cod)} and "
            f"{format_word(m2.dom)}->{format_word(m2.cod)} have different boundaries"
        )


def equal(m1, m2, n: int | None = None) -> bool:
    """Decide equality by comparing matrices at a rank where evaluation is injective."""
    m1, m2 = as_morphism(m1), as_morphism(m2)
    _check_pair(m1, m2)
    base = m1 if not m1.is_zero else m2
    if any(x < 0 for x in base.dom + base.cod) and base.flavor != ORIENTED:
        return True
    n = n if n is not None else faithful_n(base.dom, base.cod)
    return evaluate(m1 - m2, n).is_zero()


@dataclass
class Decomposition:
    tuples: list
    coefficients: list
    n: int
    residual_zero: bool = True

    def as_dict(self) -> dict:
        return dict(zip(self.tuples, self.coefficients))


def upward_transport(m) -> Morphism:
    """Bend downward strands so the morphism runs between all-upward words.

    For ``f: (down a, up b) -> (up c, down d)`` the result maps
    ``(up b, up reversed d)`` to ``(up reversed a, up c)``.  Mixed words are
    first sorted by crossings (downward strands left in the domain, right in
    the codomain).
    """
    m = as_morphism(m)
    if m.flavor != ORIENTED:
        raise ValueError("upward transport applies to oriented morphisms")
    dom, cod = m.dom, m.cod
    dom_order = [k for k, x in enumerate(dom) if x < 0] + [k for k, x in enumerate(dom) if x > 0]
    cod_order = [k for k, x in enumerate(cod) if x > 0] + [k for k, x in enumerate(cod) if x < 0]
    sorted_dom = tuple(dom[k] for k in dom_order)
    sorted_cod = tuple(cod[k] for k in cod_order)
    # sorted_dom -> dom: move strand k of sorted_dom to position dom_order[k]
    inverse = [0] * len(dom)
    for k, src in enumerate(dom_order):
        inverse[src] = k
    f = then(oriented_permutation(sorted_dom, inverse), m, oriented_permutation(cod, cod_order))
    a = [-x for x in sorted_dom if x < 0]
    b = [x for x in sorted_dom if x > 0]
    c = [x for x in sorted_cod if x > 0]
    d = [-x for x in sorted_cod if x < 0]
    ra, rd = tuple(reversed(a)), tuple(reversed(d))
    lower = tensor(nested_lcups(ra), oid(*b), oid(*rd))
    middle = tensor(oid(*ra), f, oid(*rd))
    upper = tensor(oid(*ra), oid(*c), nested_lcaps(d))
    out = then(lower, middle, upper)
    return Morphism(tuple(b) + rd, ra + tuple(c), ORIENTED, out.terms)


def nested_lcaps(word) -> Morphism:
    """Caps closing ``(down word..., up reversed word...)``."""
    word = tuple(word)
    if not word:
        return oid()
    inner = nested_lcaps(word[1:])
    return then(tensor(oid(-word[0]), inner, oid(word[0])), oriented("lcap", word[0]))


def oriented_permutation(labels, order) -> Morphism:
    """Oriented crossings moving strand ``order[k]`` of ``labels`` to position k."""
    labels = list(labels)
    target = {src: k for k, src in enumerate(order)}
    current = list(range(len(labels)))
    out = oid(*labels)
    changed = True
    while changed:
        changed = False
        for k in range(len(current) - 1):
            if target[current[k]] > target[current[k + 1]]:
                word = [labels[c] for c in current]
                cross = oriented_crossing(word[k], word[k + 1])
                out = then(out, tensor(oid(*word[:k]), cross, oid(*word[k + 2:])))
                current[k], current[k + 1] = current[k + 1], current[k]
                changed = True
    return out


def decompose(m, n: int | None = None) -> Decomposition:
    """Coefficients of ``m`` in the basis webs, relative to the fixed basis-web signs."""
    m = as_morphism(m)
    if m.flavor == ORIENTED:
        m = upward_transport(m)
    elif m.flavor != PLAIN:
        raise ValueError("decompose takes plain or oriented morphisms")
    a = tuple(abs(x) for x in m.dom)
    b = tuple(abs(x) for x in m.cod)
    n = n if n is not None else faithful_n(a, b)
    basis = hom_basis(a, b)
    target = evaluate(m, n)
    images = [evaluate(t, n) for t in basis.terms]
    for img in images:
        img.dom, img.cod = target.dom, target.cod
    coeffs = solve_in_span(target, images)
    return Decomposition(basis.tuples, coeffs, n)


# ---------------------------------------------------------------------------
# explosion and contraction

def _splits(word) -> Morphism:
    return tensor(*[multi_split([1] * x) for x in word]) if word else ident()


def _merges(word) -> Morphism:
    return tensor(*[multi_merge([1] * x) for x in word]) if word else ident()


def explosion(f) -> Morphism:
    """Turn a morphism a -> b into one between thin-strand words."""
    f = as_morphism(f)
    return compose(_splits(f.cod), f, _merges(f.dom))


def contraction(g, a, b) -> Morphism:
    """Turn a thin-strand morphism back into one a -> b."""
    g = as_morphism(g)
    return compose(_merges(b), g, _splits(a))
