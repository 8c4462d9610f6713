from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from webcat.superspace import (
    Space,
    enumerate_basis,
    format_monomial,
    normalize_word,
    odd_form,
    orbit_representatives,
    pn_act,
    pn_basis,
    PnElement,
    relabel_signed,
    slot_dimension,
)


def order_key(i):
    return (i < 0, abs(i))


def sign_oracle(word):
    """Sorted slot and sign from counting odd-odd inversions directly."""
    odd = [i for i in word if i < 0]
    if len(odd) != len(set(odd)):
        return None
    inversions = sum(
        1
        for p in range(len(word))
        for q in range(p + 1, len(word))
        if word[p] < 0 and word[q] < 0 and order_key(word[p]) > order_key(word[q])
    )
    return (-1) ** inversions, tuple(sorted(word, key=order_key))


def brute_slot_basis(weight, n):
    alphabet = list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
    out = set()
    for word in product(alphabet, repeat=weight):
        res = sign_oracle(word)
        if res is not None:
            out.add(res[1])
    return out


indices = st.integers(1, 3).flatmap(lambda k: st.sampled_from([k, -k]))
words = st.lists(indices, max_size=6)


def test_odd_square_vanishes():
    assert normalize_word([(-1, -1)]) is None


def test_odd_transposition_sign():
    assert normalize_word([(-2, -1)]) == (-1, ((-1, -2),))
    assert sign_oracle((-2, -1)) == (-1, (-1, -2))


def test_even_square_is_kept():
    assert normalize_word([(1, 1)]) == (1, ((1, 1),))


def test_out_of_range_index():
    with pytest.raises(ValueError):
        normalize_word([(4,)], n=3)


@given(st.lists(words, min_size=1, max_size=3))
def test_normalize_matches_sign_oracle(slots):
    got = normalize_word(slots)
    expected = [sign_oracle(tuple(w)) for w in slots]
    if any(e is None for e in expected):
        assert got is None
        return
    sign = 1
    for s, _ in expected:
        sign *= s
    assert got == (sign, tuple(sl for _, sl in expected))


@given(words)
def test_normalize_is_idempotent(word):
    res = normalize_word([word])
    if res is not None:
        assert normalize_word([res[1][0]]) == (1, res[1])


@given(words.filter(lambda w: len(w) >= 2), st.data())
def test_adjacent_swap_sign(word, data):
    p = data.draw(st.integers(0, len(word) - 2))
    swapped = list(word)
    swapped[p], swapped[p + 1] = swapped[p + 1], swapped[p]
    a, b = normalize_word([word]), normalize_word([swapped])
    if a is None:
        assert b is None
        return
    flip = word[p] < 0 and word[p + 1] < 0
    assert a[1] == b[1]
    assert a[0] == (-b[0] if flip else b[0])


def test_basis_examples():
    assert len(enumerate_basis((1,), 2)) == 4
    assert enumerate_basis((2,), 1) == [((1, 1),), ((1, -1),)]
    assert enumerate_basis((0,), 3) == [((),)]


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("weight", range(0, 5))
def test_slot_basis_against_brute_force(weight, n):
    brute = brute_slot_basis(weight, n)
    got = enumerate_basis((weight,), n)
    assert {m[0] for m in got} == brute
    assert slot_dimension(weight, n) == len(brute)


@pytest.mark.parametrize("word", [(1, 2), (2, 0, 1), (3, 1), (1, 1, 1)])
def test_basis_is_lexicographic_and_counted(word):
    n = 2
    got = enumerate_basis(word, n)
    keys = [tuple(tuple(order_key(i) for i in slot) for slot in m) for m in got]
    assert keys == sorted(keys)
    assert len(set(got)) == len(got)
    expected = 1
    for a in word:
        expected *= len(brute_slot_basis(a, n))
    assert len(got) == expected == Space.of(word, n).dimension()


@pytest.mark.parametrize("n,count", [(1, 2), (2, 8), (3, 18)])
def test_pn_basis_counts(n, count):
    basis = pn_basis(n)
    assert len(basis) == count == n * n + n * (n + 1) // 2 + n * (n - 1) // 2
    assert sum(1 for x in basis if x.parity == 0) == n * n


def vec(*pairs):
    return {((i,),): c for i, c in pairs}


def test_even_action_on_v():
    h = PnElement.from_blocks(A=[[1]])
    V = Space.of((1,), 1)
    assert pn_act(h, vec((1, 1)), V) == vec((1, 1))
    assert pn_act(h, vec((-1, 1)), V) == vec((-1, -1))


def test_odd_action_on_v():
    b = PnElement.from_blocks(B=[[1]])
    V = Space.of((1,), 1)
    assert pn_act(b, vec((-1, 1)), V) == vec((1, 1))
    assert pn_act(b, vec((1, 1)), V) == {}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_action_on_trivial_module(n):
    for x in pn_basis(n):
        assert pn_act(x, {(): 1}, Space.of((), n)) == {}
        assert pn_act(x, {((),): 1}, Space.of((0,), n)) == {}


def test_blocks_must_be_homogeneous_and_shaped():
    with pytest.raises(ValueError):
        PnElement.from_blocks(B=[[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        PnElement.from_blocks(C=[[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        PnElement.from_blocks(A=[[1]], B=[[1]])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_odd_form_is_invariant(n):
    idx = list(range(1, n + 1)) + [-i for i in range(1, n + 1)]
    for x in pn_basis(n):
        for i in idx:
            for j in idx:
                left = sum(c * odd_form(k, j) for k, c in x.image(i))
                sign = -1 if (x.parity and i < 0) else 1
                right = sum(c * odd_form(i, k) for k, c in x.image(j))
                assert left + sign * right == 0, (x.label, i, j)


@pytest.mark.parametrize("n", [1, 2])
def test_bracket_closes_in_pn(n):
    for x in pn_basis(n):
        for y in pn_basis(n):
            M = x.bracket(y)
            A = [row[:n] for row in M[:n]]
            B = [row[n:] for row in M[:n]]
            C = [row[:n] for row in M[n:]]
            D = [row[n:] for row in M[n:]]
            for i in range(n):
                for j in range(n):
                    assert D[i][j] == -A[j][i]
                    assert B[i][j] == B[j][i]
                    assert C[i][j] == -C[j][i]
            if x.parity == y.parity == 0:
                assert not any(B[i][j] or C[i][j] for i in range(n) for j in range(n))


def test_monomial_text():
    assert format_monomial(((1, -2), ()), (False, True)) == "v[1]v[-2] (x) 1"
    assert "v*[" in format_monomial(((1,),), (True,))


@pytest.mark.parametrize("word,duals", [((1, 1), (False, True)), ((2, 1), (False, False)), ((3,), (True,)), ((1, 1, 1), None)])
def test_orbit_representatives_cover_the_basis(word, duals):
    space = Space.of(word, 3, duals)
    reps = orbit_representatives(space)
    perms = [p for p in product(range(1, 4), repeat=3) if len(set(p)) == 3]
    covered = {}
    for r in reps:
        for p in perms:
            sign, m = relabel_signed(r, p)
            covered.setdefault(m, r)
    assert set(covered) == set(space.basis())
    # no two representatives share an orbit
    assert len({covered[r] for r in reps}) == len(reps)


def test_relabel_sign_matches_oracle():
    sign, m = relabel_signed(((-1, -2),), (2, 1, 3))
    assert (sign, m) == (-1, ((-1, -2),))
    assert relabel_signed(((1, -3),), (3, 2, 1)) == (1, ((3, -1),))


def test_scalars_in_action_are_exact():
    x = PnElement.from_blocks(A=[[Fraction(1, 2)]])
    out = pn_act(x, vec((1, 1)), Space.of((1,), 1))
    assert out == vec((1, Fraction(1, 2)))
