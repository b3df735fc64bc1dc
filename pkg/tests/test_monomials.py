import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fschar.colors import TYPE_A, TYPE_D, AlgebraSpec, barred, pair, unbarred
from fschar.enumerator import EnumRequest, enumerate_basis
from fschar.monomials import (
    IC0,
    ICgamma,
    ICij,
    LambdaK,
    MaxIJ,
    Monomial,
    Path,
    Restricted,
    Unit,
    apply_partition,
    ic_dictionary_a,
    ic_dictionary_d,
    is_admissible,
    iter_paths,
    minimal_monomial,
    monomial,
    monomial_from_json,
    parse_ic,
    parse_monomial,
    partitions,
    path_of,
    satisfies_dc,
    satisfies_dc_prime,
    satisfies_ic,
    shift,
    staircase,
)

A1 = AlgebraSpec(TYPE_A, 1, 1)
A32 = AlgebraSpec(TYPE_A, 3, 2)
D4 = AlgebraSpec(TYPE_D, 4)
X = pair(1, 1)


def a1(*rs):
    return monomial(A1, [(X, r) for r in rs])


def test_canonical_order_and_text():
    x = parse_monomial(D4, "b2(-3) u4(-1)")
    assert x.factors == ((unbarred(4), 1), (barred(2), 3))
    assert str(x) == "b2(-3) u4(-1)"
    y = parse_monomial(A32, "(1,2)(-3) (2,2)(-1)")
    assert str(y) == "(1,2)(-3) (2,2)(-1)"
    # equal exponents: the larger color sits at the smaller index
    z = monomial(D4, [(barred(2), 1), (unbarred(2), 1)])
    assert z.factors == ((unbarred(2), 1), (barred(2), 1))
    assert str(Monomial(D4)) == "1"
    assert monomial_from_json(D4, x.to_json()) == x


def test_weight_and_degree():
    x = parse_monomial(D4, "b2(-3) u4(-1)")
    assert x.degree() == 4
    assert x.weight() == (2, 1, 0, 1)
    assert Monomial(D4).weight() == (0, 0, 0, 0) and Monomial(D4).degree() == 0


def test_exponent_floor():
    with pytest.raises(ValueError):
        a1(0)
    assert Monomial(A1, ((X, 0),), transient=True).degree() == 0


def test_dc_examples():
    assert satisfies_dc(Monomial(A1))
    assert satisfies_dc(a1(3, 1))
    assert not satisfies_dc(a1(2, 1))
    assert satisfies_dc(parse_monomial(D4, "b2(-1) u2(-1)"))


def test_ic_examples():
    x = parse_monomial(A32, "(2,2)(-1)")
    assert satisfies_ic(x, LambdaK(0))
    assert not satisfies_ic(x, LambdaK(2))
    assert not satisfies_ic(parse_monomial(D4, "u3(-1)"), ICgamma(unbarred(4)))
    assert satisfies_ic(parse_monomial(D4, "b3(-1)"), ICgamma(unbarred(4)))
    assert satisfies_ic(parse_monomial(D4, "u3(-2)"), IC0())
    assert satisfies_ic(Monomial(D4), IC0())
    # restricted sets also confine the colors
    assert not satisfies_ic(parse_monomial(D4, "u3(-3)"), Restricted("G1;0"))


def test_parse_ic():
    assert parse_ic("lambda:2") == LambdaK(2)
    assert parse_ic("ij:1,3") == ICij(1, 3)
    assert parse_ic("ic0") == IC0()
    assert parse_ic("gamma:u2") == ICgamma(unbarred(2))
    assert parse_ic("gamma:0") == IC0()
    assert parse_ic("restricted:G1;b2") == Restricted("G1;b2")
    with pytest.raises(ValueError):
        parse_ic("restricted:G3")
    with pytest.raises(ValueError):
        parse_ic("what:1")


def test_shift():
    x = a1(2)
    assert shift(x, 1) == a1(1)
    assert shift(a1(1), -1) == a1(2)
    assert shift(shift(x, 1), -1) == x
    with pytest.raises(ValueError):
        shift(a1(1), 1)


def test_staircase():
    assert staircase(a1(3), "+") == a1(3)
    assert staircase(a1(3, 1), "+") == a1(2, 1)
    x = a1(7, 4, 1)
    assert staircase(staircase(x, "+"), "-") == x
    assert staircase(x, "+").degree() == x.degree() - 3
    with pytest.raises(ValueError):
        staircase(x, "*")


def test_apply_partition():
    x = a1(3, 1)
    assert apply_partition(x, (0, 0)) == x
    assert apply_partition(a1(1), (2,)) == a1(3)
    assert apply_partition(x, (1, 2)).degree() == x.degree() + 3
    with pytest.raises(ValueError):
        apply_partition(x, (1,))
    with pytest.raises(ValueError):
        apply_partition(x, (2, 1))


def test_partitions():
    got = list(partitions(2, 2))
    assert got == [(0, 0), (0, 1), (0, 2), (1, 1)]
    assert list(partitions(0, 5)) == [()]


def test_paths_and_minimal_monomials():
    assert path_of(Monomial(A1)).colors == ()
    x = parse_monomial(D4, "b2(-2) u4(-1)")
    assert path_of(x).colors == (unbarred(4), barred(2))
    assert path_of(x).weight() == x.weight()
    l3 = AlgebraSpec(TYPE_A, 3, 1)
    assert minimal_monomial(Path(l3, (pair(1, 3),))) == monomial(l3, [(pair(1, 3), 1)])
    assert minimal_monomial(Path(A1, (X, X))) == a1(3, 1)
    assert minimal_monomial(Path(D4, (unbarred(2), barred(2)))) == parse_monomial(D4, "b2(-1) u2(-1)")
    with pytest.raises(ValueError):
        minimal_monomial(Path(A1, ()))


def test_path_fibration():
    """Every basis element is the minimal monomial of its path plus one partition."""
    for spec, n in [(A32, (1, 2, 1)), (AlgebraSpec(TYPE_A, 2, 1), (2, 1)), (D4, (2, 2, 1, 1))]:
        dmax = 12
        basis = set(enumerate_basis(EnumRequest(spec, LambdaK(0), n, dmax)))
        built = set()
        for p in iter_paths(spec, n):
            base = minimal_monomial(p, Unit())
            if not is_admissible(base, LambdaK(0)):
                continue
            for lam in partitions(len(p), dmax - base.degree()):
                x = apply_partition(base, lam)
                assert satisfies_dc(x)
                if x.is_sorted():
                    built.add(x)
        assert built == basis


def test_dc_iff_staircase_dc_prime_on_edges():
    for spec in [AlgebraSpec(TYPE_A, 3, 1), AlgebraSpec(TYPE_A, 3, 3)]:
        for length in range(1, 4):
            for cs in itertools.product(spec.colors, repeat=length):
                for rs in itertools.product(range(1, 7), repeat=length):
                    # energies are >= 1 on these edges, so DC forces strict growth
                    if any(a >= b for a, b in zip(rs, rs[1:])):
                        continue
                    x = Monomial(spec, tuple(zip(cs, rs)))
                    if not x.is_sorted():
                        continue
                    y = staircase(x, "+", transient=True)
                    assert satisfies_dc(x) == satisfies_dc_prime(y)


def test_ic_dictionaries():
    for l in range(1, 5):
        for m in range(1, l + 1):
            spec = AlgebraSpec(TYPE_A, l, m)
            xs = [Monomial(spec, ((c, 1),)) for c in spec.colors] + [Monomial(spec, ((c, 2),)) for c in spec.colors]
            for k in range(l + 1):
                ic = ic_dictionary_a(spec, k)
                assert all(satisfies_ic(x, LambdaK(k)) == satisfies_ic(x, ic) for x in xs)
    assert ic_dictionary_d(D4, 0) == ICgamma(unbarred(2))
    assert ic_dictionary_d(D4, 1) == IC0()
    assert ic_dictionary_d(D4, 3) == ICgamma(unbarred(4))
    assert ic_dictionary_d(D4, 4) == ICgamma(barred(4))
    with pytest.raises(ValueError):
        ic_dictionary_d(D4, 2)
    ys = [Monomial(D4, ((c, 1),)) for c in D4.colors]
    for k in (0, 1, 3, 4):
        assert all(satisfies_ic(y, LambdaK(k)) == satisfies_ic(y, ic_dictionary_d(D4, k)) for y in ys)


def test_maxij_start_rule():
    p = Path(A32, (pair(1, 3),))
    assert minimal_monomial(p, MaxIJ(2, 2)).exponents == (2,)
    assert minimal_monomial(p, MaxIJ(1, 3)).exponents == (1,)


@given(st.lists(st.integers(1, 15), min_size=0, max_size=5))
def test_sorting_is_canonical(rs):
    x = monomial(D4, [(D4.colors[r % 6], r) for r in rs])
    assert x.is_sorted()
    assert monomial(D4, reversed(x.factors)) == x
    assert parse_monomial(D4, str(x)) == x
