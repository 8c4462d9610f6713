"""Acceptance criteria; each test prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or as a script with
``python3 tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from webcat.basis import contraction, decompose, enumerate_chi, equal, explosion, gram_rank, hom_basis, hom_dim
from webcat.evaluation import check_equivariance, evaluate
from webcat.exact_arith import double_factorial
from webcat.relations import SUITES, generate_suite, run_instances
from webcat.web_terms import (
    PLAIN,
    antenna,
    brauer,
    cap,
    crossing,
    crossing_expand,
    cup,
    linear_combination,
    merge,
    oriented,
    split,
    xi_term,
)

# ranks of the 15 End(1^3) basis images, recorded from the first run
INJECTIVITY_RANKS = {1: 10, 2: 15}

SUITE_TIME_TARGET = 600.0


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} {detail}")

    return emit


def words_of_weight(total):
    if total == 0:
        return [()]
    return [(first,) + rest for first in range(1, total + 1) for rest in words_of_weight(total - first)]


def pairs_up_to(total):
    out = []
    for w in range(total + 1):
        for wa in range(w + 1):
            for a in words_of_weight(wa):
                for b in words_of_weight(w - wa):
                    out.append((a, b))
    return out


def test_criterion_1_relation_suites(report):
    start = time.perf_counter()
    failures = []
    count = 0
    for suite in SUITES:
        reports = run_instances(generate_suite(suite, 3, 2))
        count += len(reports)
        failures += [r.line() for r in reports if not r.ok]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < SUITE_TIME_TARGET
    report(1, ok, f"{count} instances, {len(failures)} failures, {elapsed:.0f} s (target {SUITE_TIME_TARGET:.0f} s)")
    assert failures == []
    assert elapsed < SUITE_TIME_TARGET


def test_criterion_2_thin_hom_dimensions(report):
    bad = []
    for total in range(0, 9):
        for a in range(total + 1):
            expected = double_factorial(total - 1) if total % 2 == 0 else 0
            got = hom_dim((1,) * a, (1,) * (total - a))
            if got != expected:
                bad.append((a, total - a, got, expected))
    report(2, not bad, f"hom_dim(1^a,1^b) for a+b <= 8, mismatches {bad}")
    assert bad == []


def test_criterion_3_basis_independence(report):
    bad = []
    checked = 0
    for a, b in pairs_up_to(6):
        dim = hom_dim(a, b)
        if dim == 0:
            continue
        maps = [evaluate(t, 3) for t in hom_basis(a, b).terms]
        rank = gram_rank(maps)
        checked += 1
        if rank != dim:
            bad.append((a, b, rank, dim))
    report(3, not bad, f"{checked} nonzero Hom spaces with |a|+|b| <= 6 at n=3, rank deficits {bad}")
    assert bad == []


def test_criterion_4_injectivity_boundary(report):
    terms = hom_basis((1, 1, 1), (1, 1, 1)).terms
    ranks = {n: gram_rank([evaluate(t, n) for t in terms]) for n in (1, 2)}
    ok = len(terms) == 15 and ranks[1] < 15 and ranks[2] == 15 and ranks == INJECTIVITY_RANKS
    report(4, ok, f"ranks {ranks} of {len(terms)} basis images (recorded {INJECTIVITY_RANKS})")
    assert len(terms) == 15
    assert ranks[1] < 15
    assert ranks[2] == 15
    assert ranks == INJECTIVITY_RANKS


def test_criterion_5_explosion_contraction(report):
    rng = random.Random(20240517)
    pool = [(a, b, chi) for a, b in pairs_up_to(6) if a or b for chi in enumerate_chi(a, b)]
    samples = rng.sample(pool, 20)
    bad = []
    for a, b, chi in samples:
        f = xi_term(chi)
        scale = math.prod(math.factorial(x) for x in a + b)
        if not equal(contraction(explosion(f), a, b), f.scale(scale)):
            bad.append((a, b, chi))
    report(5, not bad, f"20 sampled basis webs, failures {len(bad)}")
    assert bad == []


def test_criterion_6_crossing_oracle(report):
    bad = [
        (a, b)
        for a, b in product(range(0, 4), repeat=2)
        if evaluate(crossing(a, b), 3) != evaluate(crossing_expand(a, b), 3)
    ]
    report(6, not bad, f"x(a,b) vs ladder expansion for a,b <= 3 at n=3, mismatches {bad}")
    assert bad == []


def generator_images(bound=3):
    yield "cap", cap()
    yield "cup", cup()
    yield "ant", antenna()
    for a, b in product(range(1, bound + 1), repeat=2):
        yield f"x({a},{b})", crossing(a, b)
        yield f"split({a},{b})", split(a, b)
        yield f"merge({a},{b})", merge(a, b)
    for kind in ("tagin", "tagout", "upcap", "upcup", "upant"):
        yield kind, oriented(kind)
    for a in range(1, bound + 1):
        for kind in ("lcap", "lcup", "rcap", "rcup"):
            yield f"{kind}({a})", oriented(kind, a)
    for a, b in product(range(1, bound + 1), repeat=2):
        for kind in ("ux", "rx", "lx", "dx"):
            yield f"{kind}({a},{b})", oriented(kind, a, b)
        for kind in ("usplit", "umerge", "dsplit", "dmerge"):
            yield f"{kind}({a},{b})", oriented(kind, a, b)
    for kind in ("twist", "bcap", "bcup"):
        yield kind, brauer(kind)


def test_criterion_7_equivariance(report):
    violations = []
    checked = 0
    for name, g in generator_images():
        for n in (1, 2, 3):
            rep = check_equivariance(evaluate(g, n), n)
            checked += 1
            if not rep.ok:
                violations.append((name, n, rep.witness[0]))
    report(7, not violations, f"{checked} generator images at n <= 3, violations {violations}")
    assert violations == []


def test_criterion_8_decomposition_round_trip(report):
    rng = random.Random(8)
    spaces = [(a, b) for a, b in pairs_up_to(6) if hom_dim(a, b)]
    bad = []
    for _ in range(50):
        a, b = rng.choice(spaces)
        basis = hom_basis(a, b)
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in basis.terms]
        m = linear_combination(zip(coeffs, basis.terms), a, b, PLAIN)
        if decompose(m).coefficients != coeffs:
            bad.append((a, b))
    report(8, not bad, f"50 random combinations, mismatches {bad}")
    assert bad == []


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
