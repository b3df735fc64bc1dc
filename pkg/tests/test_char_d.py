import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fschar.char_a import char_lambda
from fschar.char_d import (
    D4,
    D4_TARGETS,
    DECOMPOSITION_TABLE,
    char_d4_combination,
    char_d4_gamma,
    char_d4_lambda0,
    char_dl_lambda0,
    char_gamma_prime,
    char_gamma_second,
    d_weights,
    in_gamma_prime_span,
    in_gamma_second_span,
    merge_monomials,
    oracle_chi_d4,
    relations_d4,
    restricted_char,
    restricted_oracle,
    split_monomial,
    target_name,
    verify_decomposition_d4,
    verify_dl_remark,
    verify_formula_d4,
    verify_recurrences_d4,
    verify_restricted_d4,
)
from fschar.colors import TYPE_A, AlgebraSpec, barred, color_weight, parse_color, unbarred
from fschar.enumerator import EnumRequest, iter_basis, oracle_character
from fschar.monomials import (
    GAMMA_PRIME,
    GAMMA_SECOND,
    RESTRICTED_FIRST,
    IC0,
    ICgamma,
    LambdaK,
    Monomial,
    parse_monomial,
)
from fschar.qseries import QSeries, inv_pochhammer, monomial_shift

QMAX = 12


def geo(k, qmax=QMAX):
    return monomial_shift(inv_pochhammer(1, qmax), k)


# Gamma' colors as A3 / omega_2 colors, Gamma'' colors as A2 / omega_2 colors
PRIME_TO_A3 = {"b2": (2, 2), "b4": (2, 3), "u4": (1, 2), "u2": (1, 3)}
SECOND_TO_A2 = {"b3": (2, 2), "u3": (1, 2)}


def _a_weight(counts, table, l):
    n = [0] * l
    for name, k in counts.items():
        i, j = table[name]
        for t in range(i, j + 1):
            n[t - 1] += k
    return tuple(n)


def _d_weight(counts):
    n = [0, 0, 0, 0]
    for name, k in counts.items():
        c = parse_color(name)
        for t, v in enumerate(color_weight(D4, c)):
            n[t] += k * v
    return tuple(n)


def test_goldens_at_1111():
    n = (1, 1, 1, 1)
    assert char_d4_lambda0(n, QMAX) == geo(1)
    want = {"u2": geo(1), "u3": geo(1), "u4": geo(2), "b4": geo(2), "b3": geo(2), "b2": geo(2), "0": geo(2)}
    for name, value in want.items():
        assert char_d4_gamma(name, n, QMAX) == value, name
        assert oracle_chi_d4(QMAX)(name, n) == value, name


def test_simple_values():
    assert char_d4_lambda0((0, 0, 0, 0), 5) == QSeries.one(5)
    assert char_d4_lambda0((1, 0, 0, 0), QMAX) == geo(1)
    assert char_gamma_prime((0, 0, 0, 0), 5) == QSeries.one(5)
    assert char_gamma_prime((1, 0, 0, 0), QMAX) == geo(1)
    assert char_gamma_second((1, 1, 0, 0), QMAX) == geo(1)
    assert char_gamma_second((1, 1, 1, 1), QMAX) == geo(1)
    assert char_gamma_second((1, 0, 0, 0), QMAX).is_zero()
    assert char_d4_lambda0((0, 1, 0, 0), QMAX).is_zero()
    for v in RESTRICTED_FIRST:
        assert restricted_char(v, (0, 0, 0, 0), 4) == QSeries.one(4)
    assert restricted_char("G2;0", (1, 1, 0, 0), QMAX) == geo(2)


def test_gamma_zero_is_shifted_lambda0():
    for n in d_weights(4, 2):
        assert char_d4_gamma("0", n, QMAX) == monomial_shift(char_d4_lambda0(n, QMAX), n[0])
        assert char_d4_gamma("u2", n, QMAX) == char_d4_lambda0(n, QMAX)


def test_targets_route_through_lambda_dictionary():
    n = (2, 2, 1, 1)
    assert target_name(LambdaK(0)) == "u2"
    assert target_name(LambdaK(1)) == "0"
    assert target_name(LambdaK(3)) == "u4"
    assert target_name(LambdaK(4)) == "b4"
    assert target_name(IC0()) == "0"
    assert char_d4_gamma(LambdaK(3), n, QMAX) == char_d4_gamma(ICgamma(unbarred(4)), n, QMAX)
    with pytest.raises(ValueError):
        char_d4_gamma("b9", n, QMAX)


def test_gamma_prime_matches_a3_formula():
    a3 = AlgebraSpec(TYPE_A, 3, 2)
    for ks in itertools.product(range(3), repeat=4):
        counts = dict(zip(PRIME_TO_A3, ks))
        dn = _d_weight(counts)
        an = _a_weight(counts, PRIME_TO_A3, 3)
        assert in_gamma_prime_span(dn)
        assert char_gamma_prime(dn, QMAX) == char_lambda(a3, 0, an, QMAX)


def test_gamma_second_matches_a2_formula():
    a2 = AlgebraSpec(TYPE_A, 2, 2)
    for ks in itertools.product(range(4), repeat=2):
        counts = dict(zip(SECOND_TO_A2, ks))
        dn = _d_weight(counts)
        assert in_gamma_second_span(dn)
        assert char_gamma_second(dn, QMAX) == char_lambda(a2, 0, _a_weight(counts, SECOND_TO_A2, 2), QMAX)


def test_restricted_formulas_match_oracle():
    report = verify_restricted_d4(2, QMAX)
    assert report.ok, report.failures[:3]


def test_restricted_inclusion_exclusion():
    for n in itertools.product(range(3), repeat=4):
        lhs = restricted_char("G1;u4,b4,b2", n, QMAX)
        rhs = restricted_char("G1;u4,b2", n, QMAX) + restricted_char("G1;b4,b2", n, QMAX) - restricted_char("G1;b2", n, QMAX)
        assert lhs == rhs


def test_restricted_oracle_full_sets():
    assert restricted_oracle(None, "G1", (1, 0, 0, 0), QMAX) == geo(1)
    assert restricted_oracle(None, "G2", (1, 0, 0, 0), QMAX).is_zero()


def test_combination_identity():
    for n in d_weights(4, 3):
        assert char_d4_combination(n, 20) == char_d4_lambda0(n, 20)


def test_formulas_match_oracle_small():
    report = verify_formula_d4(2, QMAX)
    assert report.ok, report.failures[:3]


def test_recurrences_small():
    for source in ("oracle", "formula"):
        report = verify_recurrences_d4(2, QMAX, source)
        assert report.ok, report.failures[:3]


def test_recurrence_spot_value():
    chi = oracle_chi_d4(QMAX)
    n = (1, 1, 1, 1)
    rels = {name: (lhs, rhs) for name, lhs, rhs in relations_d4(chi, n)}
    lhs, rhs = rels["u4"]
    assert lhs == rhs == geo(2)
    for lhs, rhs in rels.values():
        assert lhs == rhs
    for _, lhs, rhs in relations_d4(chi, (0, 0, 0, 0)):
        assert lhs == rhs == QSeries.one(QMAX)


def test_merge_examples():
    x1 = parse_monomial(D4, "b2(-1) u2(-1)")
    x2 = parse_monomial(D4, "u3(-1)")
    x = merge_monomials(x1, x2)
    assert x.degree() == x1.degree() + x2.degree() + len(x1) * len(x2) == 5
    assert split_monomial(x) == (x1, x2)
    empty = Monomial(D4)
    y1 = parse_monomial(D4, "u4(-3) b2(-1)")
    assert merge_monomials(y1, empty) == y1
    assert merge_monomials(empty, x2) == x2
    assert split_monomial(y1) == (y1, empty)
    assert split_monomial(parse_monomial(D4, "u3(-3) b3(-1)")) == (empty, parse_monomial(D4, "u3(-3) b3(-1)"))
    assert split_monomial(empty) == (empty, empty)


def test_merge_rejects_wrong_parts():
    with pytest.raises(ValueError):
        merge_monomials(parse_monomial(D4, "u3(-1)"), Monomial(D4))
    with pytest.raises(ValueError):
        merge_monomials(Monomial(D4), parse_monomial(D4, "u2(-1)"))
    with pytest.raises(ValueError):
        split_monomial(parse_monomial(D4, "u2(-2) u2(-1)"))


@given(st.integers(0, 40))
def test_split_merge_roundtrip_sampled(seed):
    basis = _basis_10()
    x = basis[(seed * 7919) % len(basis)]
    x1, x2 = split_monomial(x)
    assert set(x1.colors) <= GAMMA_PRIME and set(x2.colors) <= GAMMA_SECOND
    assert merge_monomials(x1, x2) == x


_CACHE = {}


def _basis_10():
    if "b" not in _CACHE:
        _CACHE["b"] = list(iter_basis(EnumRequest(D4, LambdaK(0), None, 10)))
    return _CACHE["b"]


def test_decomposition_table_small():
    assert set(DECOMPOSITION_TABLE) == set(D4_TARGETS)
    report = verify_decomposition_d4(9)
    assert report.ok, report.failures[:3]


def test_b2_row_lands_in_restricted_parts():
    for x in _basis_10():
        if x.factors and x.factors[0][1] == 1 and x.factors[0][0] == barred(2):
            x1, _ = split_monomial(x)
            assert x1.factors and x1.factors[0] == (barred(2), 1)


def test_remark_formula():
    assert char_dl_lambda0(5, (0,) * 5, 4) == QSeries.one(4)
    assert verify_dl_remark(4, 2, QMAX).ok
    assert verify_dl_remark(5, 1, QMAX).ok
    with pytest.raises(ValueError):
        char_dl_lambda0(7, (0,) * 7, 4)
    spec5 = AlgebraSpec("D", 5)
    n = (1, 1, 1, 1, 1)
    assert char_dl_lambda0(5, n, QMAX) == oracle_character(spec5, LambdaK(0), n, QMAX)
