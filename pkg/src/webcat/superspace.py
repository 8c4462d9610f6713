"""The natural module V_n = k^{n|n} of p(n), its symmetric powers and their duals.

Basis vectors of V_n are indexed by nonzero integers i with |i| <= n; negative
indices are odd.  Indices are totally ordered 1 < ... < n < -1 < ... < -n.

A monomial in a tensor product of symmetric powers is a tuple of slots, each
slot a sorted tuple of indices.  Whether a slot lives in S^a(V_n) or in its
dual is recorded on the ambient :class:`Space`, not on the monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import comb

_ODD_SHIFT = 1 << 20


def index_key(i: int) -> int:
    return i if i > 0 else _ODD_SHIFT - i


def index_parity(i: int) -> int:
    return 1 if i < 0 else 0


def slot_parity(slot: tuple) -> int:
    p = 0
    for i in slot:
        if i < 0:
            p ^= 1
    return p


def monomial_parity(mono: tuple) -> int:
    p = 0
    for slot in mono:
        for i in slot:
            if i < 0:
                p ^= 1
    return p


def normalize_slot(word) -> tuple[int, tuple] | None:
    """Sort one symmetric-power word; return (sign, sorted tuple) or None if zero."""
    items = list(word)
    sign = 1
    # insertion sort keeps track of odd-odd transpositions
    for pos in range(1, len(items)):
        cur = items[pos]
        k = index_key(cur)
        j = pos - 1
        while j >= 0 and index_key(items[j]) > k:
            if cur < 0 and items[j] < 0:
                sign = -sign
            items[j + 1] = items[j]
            j -= 1
        items[j + 1] = cur
    for a, b in zip(items, items[1:]):
        if a == b and a < 0:
            return None
    return sign, tuple(items)


def normalize_word(slots, dual_flags=None, n: int | None = None):
    """Normalize every slot of a tensor word.

    Returns ``(sign, monomial)`` or ``None`` when an odd index repeats inside a
    slot.  ``dual_flags`` is accepted for symmetry with :class:`Space` but does
    not affect the result: dual slots use the same ordering as primal ones.
    """
    if dual_flags is not None and len(dual_flags) != len(slots):
        raise ValueError("one dual flag per slot is required")
    sign = 1
    out = []
    for word in slots:
        if n is not None:
            for i in word:
                if i == 0 or abs(i) > n:
                    raise ValueError(f"index {i} out of range for n={n}")
        res = normalize_slot(word)
        if res is None:
            return None
        s, sl = res
        sign *= s
        out.append(sl)
    return sign, tuple(out)


@lru_cache(maxsize=None)
def slot_basis(weight: int, n: int) -> tuple:
    alphabet = list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
    out = []
    for word in combinations_with_replacement(alphabet, weight):
        if any(a == b and a < 0 for a, b in zip(word, word[1:])):
            continue
        out.append(word)
    return tuple(out)


def slot_dimension(weight: int, n: int) -> int:
    return sum(comb(n, j) * comb(n + weight - j - 1, weight - j) for j in range(0, min(weight, n) + 1)) if weight else 1


@dataclass(frozen=True)
class Space:
    """A tensor product of symmetric powers S^a(V_n) and duals S^a(V_n)^*."""

    slots: tuple  # of (weight, dual) pairs
    n: int

    @classmethod
    def of(cls, weights, n: int, duals=None) -> "Space":
        weights = tuple(weights)
        duals = tuple(duals) if duals is not None else (False,) * len(weights)
        return cls(tuple(zip(weights, (bool(d) for d in duals))), n)

    @property
    def weights(self) -> tuple:
        return tuple(w for w, _ in self.slots)

    @property
    def duals(self) -> tuple:
        return tuple(d for _, d in self.slots)

    def dimension(self) -> int:
        out = 1
        for w, _ in self.slots:
            out *= slot_dimension(w, self.n)
        return out

    def basis(self) -> list:
        return enumerate_basis(self.weights, self.n)


def enumerate_basis(word, n: int) -> list:
    """All normalized monomials of S^{a_1} (x) ... (x) S^{a_r}, in lexicographic order."""
    mono_list = [()]
    for a in word:
        if a < 0:
            raise ValueError("weights must be nonnegative")
        options = slot_basis(a, n)
        mono_list = [m + (s,) for m in mono_list for s in options]
    return mono_list


def format_slot(slot: tuple, dual: bool) -> str:
    if not slot:
        return "1"
    head = "v*" if dual else "v"
    return "".join(f"{head}[{i}]" for i in slot)


def relabel(mono: tuple, perm: tuple) -> tuple:
    """Apply the index permutation ``i -> perm[i-1]`` (same on odd indices), re-sorting slots.

    The Koszul sign from re-sorting is dropped; callers only use the result as an orbit key.
    """
    out = []
    for slot in mono:
        moved = [perm[i - 1] if i > 0 else -perm[-i - 1] for i in slot]
        moved.sort(key=index_key)
        out.append(tuple(moved))
    return tuple(out)


def relabel_signed(mono: tuple, perm: tuple) -> tuple[int, tuple]:
    """Like :func:`relabel` but also return the Koszul sign of re-sorting the odd indices."""
    sign = 1
    out = []
    for slot in mono:
        s, moved = normalize_slot([perm[i - 1] if i > 0 else -perm[-i - 1] for i in slot])
        sign *= s
        out.append(moved)
    return sign, tuple(out)


@lru_cache(maxsize=128)
def orbit_representatives(space: "Space") -> tuple:
    """One monomial per orbit of the symmetric group relabeling indices 1..n.

    Maps commuting with these relabelings agree everywhere once they agree here.
    """
    perms = list(permutations(range(1, space.n + 1)))[1:]
    return tuple(m for m in space.basis() if all(relabel(m, p) >= m for p in perms))


def format_monomial(mono: tuple, duals=None) -> str:
    if not mono:
        return "1"
    duals = duals or (False,) * len(mono)
    return " (x) ".join(format_slot(s, d) for s, d in zip(mono, duals))


# ---------------------------------------------------------------------------
# p(n)


def _index_position(i: int, n: int) -> int:
    return i - 1 if i > 0 else n - i - 1


def _position_index(p: int, n: int) -> int:
    return p + 1 if p < n else -(p - n + 1)


@dataclass(frozen=True)
class PnElement:
    """A homogeneous element [[A, B], [C, -A^T]] of p(n), rows ordered like the indices."""

    n: int
    matrix: tuple  # 2n x 2n tuple of tuples of Fractions
    parity: int
    label: str = ""

    @classmethod
    def from_blocks(cls, A=None, B=None, C=None, label: str = "") -> "PnElement":
        blocks = [blk for blk in (A, B, C) if blk is not None]
        if not blocks:
            raise ValueError("at least one block is required")
        n = len(blocks[0])
        zero = [[Fraction(0)] * n for _ in range(n)]
        A = [[Fraction(x) for x in row] for row in A] if A is not None else zero
        B = [[Fraction(x) for x in row] for row in B] if B is not None else zero
        C = [[Fraction(x) for x in row] for row in C] if C is not None else zero
        for i in range(n):
            for j in range(n):
                if B[i][j] != B[j][i]:
                    raise ValueError("B block must be symmetric")
                if C[i][j] != -C[j][i]:
                    raise ValueError("C block must be skew-symmetric")
        even = any(x for row in A for x in row)
        odd = any(x for row in B for x in row) or any(x for row in C for x in row)
        if even and odd:
            raise ValueError("element is not homogeneous")
        full = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                full[i][j] = A[i][j]
                full[i][n + j] = B[i][j]
                full[n + i][j] = C[i][j]
                full[n + i][n + j] = -A[j][i]
        return cls(n, tuple(tuple(r) for r in full), 1 if odd else 0, label)

    def image(self, i: int) -> list:
        """x . v_i as a list of (index, coefficient)."""
        col = _index_position(i, self.n)
        out = []
        for row in range(2 * self.n):
            c = self.matrix[row][col]
            if c:
                out.append((_position_index(row, self.n), c))
        return out

    def bracket(self, other: "PnElement") -> list:
        """Matrix supercommutator [x, y] as a nested list."""
        size = 2 * self.n
        a, b = self.matrix, other.matrix
        sign = -1 if (self.parity and other.parity) else 1
        out = [[Fraction(0)] * size for _ in range(size)]
        for i in range(size):
            for j in range(size):
                s = Fraction(0)
                for k in range(size):
                    s += a[i][k] * b[k][j] - sign * b[i][k] * a[k][j]
                out[i][j] = s
        return out


def pn_basis(n: int) -> list:
    if n < 1:
        raise ValueError("n must be at least 1")

    def unit(i, j):
        m = [[0] * n for _ in range(n)]
        m[i][j] = 1
        return m

    out = []
    for i in range(n):
        for j in range(n):
            out.append(PnElement.from_blocks(A=unit(i, j), label=f"A{i + 1}{j + 1}"))
    for i in range(n):
        for j in range(i, n):
            m = unit(i, j)
            m[j][i] = 1
            out.append(PnElement.from_blocks(B=m, label=f"B{i + 1}{j + 1}"))
    for i in range(n):
        for j in range(i + 1, n):
            m = unit(i, j)
            m[j][i] = -1
            out.append(PnElement.from_blocks(C=m, label=f"C{i + 1}{j + 1}"))
    return out


def _act_on_primal_slot(x: PnElement, slot: tuple) -> dict:
    """Derivation action of x on one normalized symmetric-power monomial."""
    out: dict = {}
    prefix = 0
    for pos, i in enumerate(slot):
        sign = -1 if (x.parity and prefix) else 1
        for k, c in x.image(i):
            res = normalize_slot(slot[:pos] + (k,) + slot[pos + 1:])
            if res is None:
                continue
            s, new = res
            out[new] = out.get(new, 0) + sign * s * c
        if i < 0:
            prefix ^= 1
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _dual_slot_table(x: PnElement, weight: int) -> dict:
    """x acting on the dual basis g^* of S^weight: (x.g^*)(h) = -(-1)^{|x||g|} g^*(x.h)."""
    table: dict = {}
    for h in slot_basis(weight, x.n):
        for g, c in _act_on_primal_slot(x, h).items():
            sign = -1 if (x.parity and slot_parity(g)) else 1
            table.setdefault(g, {})
            table[g][h] = table[g].get(h, 0) - sign * c
    return table


def pn_act(x: PnElement, vector: dict, space: Space) -> dict:
    """Action of x on a vector (monomial -> coefficient) of ``space``."""
    out: dict = {}
    for mono, coeff in vector.items():
        prefix = 0
        for s, (slot, (weight, dual)) in enumerate(zip(mono, space.slots)):
            sign = -1 if (x.parity and prefix) else 1
            if dual:
                images = _dual_slot_table(x, weight).get(slot, {})
            else:
                images = _act_on_primal_slot(x, slot)
            for new_slot, c in images.items():
                new = mono[:s] + (new_slot,) + mono[s + 1:]
                out[new] = out.get(new, 0) + sign * c * coeff
            prefix ^= slot_parity(slot)
    return {k: v for k, v in out.items() if v}


def odd_form(i: int, j: int) -> int:
    """The odd bilinear form (v_i, v_j) = delta_{i,-j}."""
    return 1 if i == -j else 0
