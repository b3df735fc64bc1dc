import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fschar.colors import TYPE_A, TYPE_D, AlgebraSpec, realizable, unbarred
from fschar.enumerator import (
    EnumRequest,
    degree_histogram,
    enumerate_basis,
    enumerate_character,
    iter_basis,
    oracle_character,
)
from fschar.monomials import GAMMA_PRIME, IC0, ICgamma, ICij, LambdaK, Monomial, is_admissible
from fschar.qseries import QSeries

A1 = AlgebraSpec(TYPE_A, 1, 1)
D4 = AlgebraSpec(TYPE_D, 4)


def naive_character(spec, ic, n, qmax, subset=None):
    """Filter every sorted factor sequence with r <= qmax through the predicates."""
    count = n[spec.count_index]
    colors = [c for c in spec.colors if subset is None or c in subset]
    cs = [0] * (qmax + 1)
    for seq in itertools.product(itertools.product(colors, range(1, qmax + 1)), repeat=count):
        x = Monomial(spec, tuple(seq))
        if x.degree() > qmax or x.weight() != tuple(n):
            continue
        if is_admissible(x, ic):
            cs[x.degree()] += 1
    return QSeries(qmax, tuple(cs))


def test_spec_examples():
    assert enumerate_character(EnumRequest(A1, LambdaK(0), (1,), 5)).coeffs == (0, 1, 1, 1, 1, 1)
    assert enumerate_character(EnumRequest(A1, LambdaK(0), (2,), 6)).coeffs == (0, 0, 0, 0, 1, 1, 2)
    assert enumerate_character(EnumRequest(D4, LambdaK(0), (1, 1, 1, 1), 4)).coeffs == (0, 1, 1, 1, 1)
    for spec in [A1, AlgebraSpec(TYPE_A, 3, 2), D4]:
        assert enumerate_character(EnumRequest(spec, LambdaK(0), spec.zero_weight(), 3)) == QSeries.one(3)


def test_enumerate_basis_examples():
    assert enumerate_basis(EnumRequest(A1, LambdaK(0), (0,), 4)) == [Monomial(A1)]
    xs = enumerate_basis(EnumRequest(A1, LambdaK(0), (1,), 2))
    assert [str(x) for x in xs] == ["(1,1)(-1)", "(1,1)(-2)"]


def test_unrealizable_is_zero():
    spec = AlgebraSpec(TYPE_A, 3, 2)
    assert oracle_character(spec, LambdaK(0), (2, 1, 0), 5).is_zero()
    assert list(iter_basis(EnumRequest(spec, LambdaK(0), (2, 1, 0), 5))) == []
    assert oracle_character(D4, LambdaK(0), (0, 1, 0, 0), 5).is_zero()


def test_bad_request():
    with pytest.raises(ValueError):
        EnumRequest(A1, LambdaK(0), (1, 1), 3)
    with pytest.raises(ValueError):
        EnumRequest(A1, LambdaK(0), (1,), -1)
    with pytest.raises(ValueError):
        enumerate_character(EnumRequest(A1, LambdaK(0), None, 3))


@pytest.mark.parametrize(
    "spec,ic,n",
    [
        (AlgebraSpec(TYPE_A, 2, 1), LambdaK(1), (2, 1)),
        (AlgebraSpec(TYPE_A, 3, 2), ICij(2, 2), (1, 2, 1)),
        (AlgebraSpec(TYPE_A, 3, 2), IC0(), (1, 2, 1)),
        (D4, LambdaK(0), (2, 2, 1, 1)),
        (D4, ICgamma(unbarred(4)), (2, 2, 1, 1)),
    ],
)
def test_memoized_search_matches_naive_filter(spec, ic, n):
    qmax = 9
    assert enumerate_character(EnumRequest(spec, ic, n, qmax)) == naive_character(spec, ic, n, qmax)


def test_color_subset_matches_naive_filter():
    n = (2, 2, 1, 1)
    want = naive_character(D4, LambdaK(0), n, 9, GAMMA_PRIME)
    assert oracle_character(D4, LambdaK(0), n, 9, GAMMA_PRIME) == want


weights_a32 = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))


@given(weights_a32, st.sampled_from([LambdaK(0), LambdaK(1), LambdaK(2), LambdaK(3), ICij(1, 2), ICij(2, 3)]))
def test_histogram_matches_character(n, ic):
    spec = AlgebraSpec(TYPE_A, 3, 2)
    qmax = 10
    basis = enumerate_basis(EnumRequest(spec, ic, n, qmax))
    assert all(is_admissible(x, ic) and x.weight() == n for x in basis)
    assert degree_histogram(basis, qmax) == oracle_character(spec, ic, n, qmax)


def test_basis_order_is_deterministic():
    req = EnumRequest(D4, LambdaK(0), (2, 2, 1, 1), 8)
    first = enumerate_basis(req)
    assert first == enumerate_basis(req)
    assert [x.degree() for x in first] == sorted(x.degree() for x in first)


def test_unbounded_weight_enumeration_covers_fixed_weights():
    req = EnumRequest(D4, LambdaK(0), None, 6)
    everything = list(iter_basis(req))
    for n in itertools.product(range(3), repeat=4):
        if not realizable(D4, n):
            continue
        fixed = [x for x in everything if x.weight() == n]
        assert degree_histogram(fixed, 6) == oracle_character(D4, LambdaK(0), n, 6)


def test_larger_first_color_set_never_decreases():
    spec = AlgebraSpec(TYPE_A, 3, 2)
    for n in [(1, 2, 1), (1, 1, 1), (2, 2, 1)]:
        small = oracle_character(spec, ICij(2, 2), n, 12)
        mid = oracle_character(spec, ICij(1, 2), n, 12)
        big = oracle_character(spec, ICij(1, 3), n, 12)
        assert all(a <= b <= c for a, b, c in zip(small.coeffs, mid.coeffs, big.coeffs))
        assert all(c >= 0 for c in big.coeffs)


def test_bij_intersection():
    """B_{i+1,j} and B_{i,j-1} intersect in B_{i+1,j-1}."""
    spec = AlgebraSpec(TYPE_A, 4, 2)
    for n in [(1, 2, 1, 1), (1, 2, 2, 1), (2, 2, 1, 0)]:
        sets = {}
        for i, j in [(2, 3), (1, 2), (2, 2), (1, 3), (2, 4), (1, 4)]:
            sets[i, j] = set(enumerate_basis(EnumRequest(spec, ICij(i, j), n, 10)))
        assert sets[2, 3] & sets[1, 2] == sets[2, 2]
        assert sets[2, 4] & sets[1, 3] == sets[2, 3]
