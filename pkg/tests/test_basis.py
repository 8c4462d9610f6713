import math
import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from webcat.basis import (
    InconsistentSystemError,
    bareiss_echelon,
    contraction,
    decompose,
    enumerate_chi,
    equal,
    explosion,
    faithful_n,
    gram_rank,
    hom_basis,
    hom_dim,
    solve_in_span,
    upward_transport,
)
from webcat.evaluation import evaluate
from webcat.exact_arith import double_factorial
from webcat.web_terms import (
    BoundaryError,
    ChiTuple,
    Morphism,
    PLAIN,
    crossing,
    crossing_expand,
    ident,
    linear_combination,
    merge,
    multi_merge,
    multi_split,
    oid,
    oriented,
    split,
    tensor,
    then,
    to_oriented,
    xi_term,
)


def symmetric_01(k):
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for bits in product((0, 1), repeat=len(pairs)):
        M = [[0] * k for _ in range(k)]
        for (i, j), v in zip(pairs, bits):
            M[i][j] = M[j][i] = v
        yield M


def brute_chi(a, b):
    t, u = len(a), len(b)
    top = max(a + b, default=0)
    out = set()
    for A in symmetric_01(t):
        for B in symmetric_01(u):
            for D in product((0, 1), repeat=t):
                for flat in product(range(top + 1), repeat=t * u):
                    C = [list(flat[i * u:(i + 1) * u]) for i in range(t)]
                    rows = all(2 * D[i] + sum(A[i]) + sum(C[i]) == a[i] for i in range(t))
                    cols = all(sum(B[k][j] for k in range(u)) + sum(C[i][j] for i in range(t)) == b[j] for j in range(u))
                    if rows and cols:
                        out.add(ChiTuple(A, B, C, D, a, b))
    return out


def test_single_strand_has_one_tuple():
    (chi,) = enumerate_chi((1,), (1,))
    assert chi.C == ((1,),) and chi.D == (0,) and chi.A == ((0,),) and chi.B == ((0,),)


def test_two_thin_strands_each_side():
    assert len(enumerate_chi((1, 1), (1, 1))) == 3 == double_factorial(3)


def test_odd_total_weight_has_no_tuples():
    assert enumerate_chi((1,), (2,)) == []


def test_two_into_two_thin_strands_by_hand():
    expected = {
        ChiTuple([[0]], [[0, 1], [1, 0]], [[0, 0]], [1], (2,), (1, 1)),
        ChiTuple([[0]], [[0, 0], [0, 0]], [[1, 1]], [0], (2,), (1, 1)),
    }
    assert set(enumerate_chi((2,), (1, 1))) == expected
    assert hom_dim((2,), (1, 1)) == 2


@pytest.mark.parametrize(
    "a,b",
    [((1,), (1,)), ((2,), (2,)), ((1, 1), (2,)), ((2, 1), (1,)), ((3,), (1,)), ((1, 2), (2, 1)), ((2, 2), ()), ((), (1, 1, 2)), ((4,), ())],
)
def test_enumeration_is_complete(a, b):
    got = enumerate_chi(a, b)
    assert set(got) == brute_chi(a, b)
    assert len(set(got)) == len(got)


def test_enumeration_order_is_a_b_d_c():
    got = enumerate_chi((2, 2), (2, 2))
    keys = [(c.A, c.B, c.D, c.C) for c in got]
    assert keys == sorted(keys)


def test_hom_dim_thin_three():
    assert hom_dim((1, 1, 1), (1, 1, 1)) == 15 == double_factorial(5)


@pytest.mark.parametrize("total", range(0, 9))
def test_double_factorial_law(total):
    for a in range(total + 1):
        expected = double_factorial(total - 1) if total % 2 == 0 else 0
        assert hom_dim((1,) * a, (1,) * (total - a)) == expected


def test_zero_labels_are_ignored():
    assert hom_dim((1, 0, 1), (0, 1, 1)) == 3


def test_rank_of_thin_basis_at_faithful_rank():
    maps = [evaluate(t, 2) for t in hom_basis((1, 1), (1, 1)).terms]
    assert gram_rank(maps) == 3


def test_rank_of_repeated_map():
    L = evaluate(ident(2), 2)
    assert gram_rank([L, L]) == 1


def test_rank_collapses_below_injectivity_bound():
    maps = [evaluate(t, 1) for t in hom_basis((1, 1, 1), (1, 1, 1)).terms]
    assert gram_rank(maps) < 15


def test_bareiss_on_a_known_matrix():
    rank, pivots, _ = bareiss_echelon([[2, 4, 6], [1, 2, 3], [0, 1, 1]])
    assert (rank, pivots) == (2, [0, 1])


def test_decompose_identity():
    dec = decompose(ident(1))
    assert dec.coefficients == [1]


def test_decompose_crossing_agrees_with_merge_split_expansion():
    x = decompose(crossing(1, 1)).coefficients
    ms = decompose(then(merge(1, 1), split(1, 1))).coefficients
    idc = decompose(ident(1, 1)).coefficients
    assert x == [p - q for p, q in zip(ms, idc)]
    assert all(c in (-1, 0, 1) for c in x)


def test_decompose_zero():
    zero = Morphism.zero((1, 1), (1, 1), PLAIN)
    assert decompose(zero).coefficients == [0, 0, 0]


def words_up_to(total):
    if total == 0:
        return [()]
    out = {()}
    for first in range(1, total + 1):
        for rest in words_up_to(total - first):
            out.add((first,) + rest)
    return sorted(out)


SMALL_PAIRS = [(a, b) for a in words_up_to(4) for b in words_up_to(4) if 0 < sum(a) + sum(b) <= 4 and (sum(a) + sum(b)) % 2 == 0]


@pytest.mark.parametrize("a,b", SMALL_PAIRS)
def test_decomposition_reconstructs_random_combinations(a, b):
    rng = random.Random(hash((a, b)) & 0xFFFF)
    basis = hom_basis(a, b)
    coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in basis.terms]
    m = linear_combination(zip(coeffs, basis.terms), a, b, PLAIN)
    assert decompose(m).coefficients == coeffs


def test_decompose_oriented_through_upward_transport():
    m = then(oriented("lcup", 1), tensor(oid(1), oriented("tagout")))
    dec = decompose(m)
    rebuilt = linear_combination(zip(dec.coefficients, hom_basis((), (1, 1)).terms), (), (1, 1), PLAIN)
    assert equal(to_oriented(rebuilt), upward_transport(m))


def test_solver_reports_inconsistency():
    target = evaluate(ident(1, 1), 2)
    with pytest.raises(InconsistentSystemError):
        solve_in_span(target, [evaluate(crossing(1, 1) - ident(1, 1), 2)])


def test_equal_on_associativity():
    lhs = then(split(1, 3), tensor(ident(1), split(2, 1)))
    rhs = then(split(3, 1), tensor(split(1, 2), ident(1)))
    assert equal(lhs, rhs)


def test_identity_is_not_zero():
    assert not equal(ident(1), Morphism.zero((1,), (1,), PLAIN))


def test_two_forms_of_crossing_definition():
    from webcat.relations import _crossdef_second

    assert equal(crossing_expand(2, 1), _crossdef_second(2, 1))


def test_equal_rejects_boundary_mismatch():
    with pytest.raises(BoundaryError):
        equal(ident(1), ident(2))


def test_faithful_rank():
    assert faithful_n((1, 1), (1, 1)) == 2
    assert faithful_n((3,), (2,)) == 3
    assert faithful_n((), ()) == 1


def test_contract_explode_identity_two():
    assert equal(contraction(explosion(ident(2)), (2,), (2,)), ident(2).scale(4))


def test_explode_identity_one():
    assert equal(explosion(ident(1)), ident(1))


def test_merge_after_split_is_factorial():
    assert equal(then(multi_split([1, 1]), multi_merge([1, 1])), ident(2).scale(2))


@settings(max_examples=15)
@given(st.sampled_from([((1, 1), (2,)), ((2,), (2,)), ((2, 1), (1, 2)), ((3,), (1, 2))]), st.data())
def test_equal_is_an_equivalence_on_samples(pair, data):
    a, b = pair
    terms = hom_basis(a, b).terms
    picks = [
        linear_combination(zip(data.draw(st.lists(st.integers(-2, 2), min_size=len(terms), max_size=len(terms))), terms), a, b, PLAIN)
        for _ in range(3)
    ]
    f, g, h = picks
    assert equal(f, f)
    assert equal(f, g) == equal(g, f)
    if equal(f, g) and equal(g, h):
        assert equal(f, h)


def test_equality_survives_associativity_rewrite():
    f = then(split(1, 2), tensor(ident(1), split(1, 1)), tensor(crossing(1, 1), ident(1)))
    g = then(split(2, 1), tensor(split(1, 1), ident(1)), tensor(crossing(1, 1), ident(1)))
    assert equal(f, g)
    assert equal(then(f, multi_merge([1, 1, 1])), then(g, multi_merge([1, 1, 1])))


def test_contraction_scales_by_label_factorials():
    rng = random.Random(5)
    for a, b in [((2,), (1, 1)), ((2, 1), (3,))]:
        for chi in rng.sample(hom_basis(a, b).tuples, min(2, hom_dim(a, b))):
            f = xi_term(chi)
            scale = math.prod(math.factorial(x) for x in a + b)
            assert equal(contraction(explosion(f), a, b), f.scale(scale))
