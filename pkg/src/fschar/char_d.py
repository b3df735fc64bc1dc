"""Type D characters for omega_1.

D4 colors split into Gamma' = {b2, b4, u4, u2}, which behaves like the
A3 / omega_2 color set, and Gamma'' = {b3, u3}, which behaves like A2 / omega_2.
Admissible monomials over all of Gamma are glued from one monomial over each
part by the tilde merge below; the characters follow as a finite sum over how
the weight is shared between the two parts.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator, Sequence

from .colors import (
    TYPE_D,
    AlgebraSpec,
    Color,
    WeightVec,
    alpha_split,
    barred,
    color_weight,
    parse_color,
    d_underline_coords,
    realizable,
    tilde,
    unbarred,
    weight_to_mcoords,
)
from .enumerator import EnumRequest, iter_basis, oracle_character
from .monomials import (
    GAMMA_PRIME,
    GAMMA_SECOND,
    IC0,
    RESTRICTED_FIRST,
    ICgamma,
    ICVariant,
    LambdaK,
    Monomial,
    Restricted,
    ic_dictionary_d,
    is_admissible,
    staircase,
)
from .qseries import (
    QSeries,
    divide_unit,
    inv_pochhammer,
    monomial_shift,
    mul,
    one_minus_q_power,
    pochhammer,
)
from .report import Report

D4 = AlgebraSpec(TYPE_D, 4)

B2, B3, B4 = barred(2), barred(3), barred(4)
U2, U3, U4 = unbarred(2), unbarred(3), unbarred(4)
T2, T4 = tilde(2), tilde(4)

# target name -> (first-color restriction on the Gamma' part, on the Gamma'' part)
DECOMPOSITION_TABLE = {
    "u2": (None, None),
    "u3": ("G1;u4,b4,b2", None),
    "u4": ("G1;u4,b2", "G2;b3"),
    "b4": ("G1;b4,b2", "G2;b3"),
    "b3": ("G1;b2", "G2;b3"),
    "b2": ("G1;b2", "G2;0"),
    "0": ("G1;0", "G2;0"),
}

D4_TARGETS = tuple(DECOMPOSITION_TABLE)


def target_variant(name: str) -> ICVariant:
    return IC0() if name == "0" else ICgamma(parse_color(name))


def target_name(ic: ICVariant, spec: AlgebraSpec = D4) -> str:
    """Normalise an IC variant (including L(Lambda_k)) to a D4 target name."""
    if isinstance(ic, LambdaK):
        ic = ic_dictionary_d(spec, ic.k)
    if isinstance(ic, IC0):
        return "0"
    if isinstance(ic, ICgamma):
        return str(ic.gamma)
    raise ValueError(f"{ic} is not a D4 character target")


def _over_pochhammers(exponent: int, numer: Sequence[int], denom: Sequence[int], qmax: int) -> QSeries:
    if exponent > qmax:
        return QSeries.zero(qmax)
    s = QSeries.q_power(exponent, qmax)
    for a in numer:
        s = mul(s, pochhammer(a, qmax))
    for b in denom:
        s = mul(s, inv_pochhammer(b, qmax))
    return s


def _ratio(a: int, b: int, c: int, qmax: int) -> QSeries:
    """(1 - q^a)(1 - q^b)/(1 - q^c), defined as 0 when a or b vanishes.

    When c = 0 both a and b are 0 as well, so the 0/0 case lands on 0.
    """
    if a == 0 or b == 0:
        return QSeries.zero(qmax)
    numer = mul(one_minus_q_power(a, qmax), one_minus_q_power(b, qmax))
    return divide_unit(numer, one_minus_q_power(c, qmax))


def _qp(k: int, qmax: int) -> QSeries:
    return QSeries.q_power(k, qmax) if k <= qmax else QSeries.zero(qmax)


# ------------------------------------------------------- Gamma' / Gamma'' parts


def in_gamma_prime_span(n: WeightVec) -> bool:
    n1, n2, n3, n4 = n
    return n3 >= 0 and n4 >= 0 and n2 == n3 + n4 and n1 >= max(n3, n4)


def in_gamma_second_span(n: WeightVec) -> bool:
    n1, n2, n3, n4 = n
    return n1 == n2 and n3 == n4 and n1 >= n4 >= 0


def _prime_parts(n: WeightVec) -> tuple[int, list[int], list[int]]:
    n1, _, n3, n4 = n
    return n4 * n4 + n1 * n1 + n3 * n3 - n4 * n1 - n1 * n3, [n1], [n3, n1 - n3, n1 - n4, n4]


def char_gamma_prime(n: WeightVec, qmax: int) -> QSeries:
    """Character of B_{Gamma'} at weight n."""
    n = tuple(n)
    if not in_gamma_prime_span(n):
        return QSeries.zero(qmax)
    e, num, den = _prime_parts(n)
    return _over_pochhammers(e, num, den, qmax)


def char_gamma_second(n: WeightVec, qmax: int) -> QSeries:
    """Character of B_{Gamma''} at weight n."""
    n = tuple(n)
    if not in_gamma_second_span(n):
        return QSeries.zero(qmax)
    n1, n4 = n[0], n[3]
    return _over_pochhammers(n1 * n1 + n4 * n4 - n1 * n4, [], [n4, n1 - n4], qmax)


def restricted_char(variant: str, n: WeightVec, qmax: int) -> QSeries:
    """Closed forms for the seven first-color restrictions of B_{Gamma'}, B_{Gamma''}."""
    Restricted(variant)  # validates the name
    n = tuple(n)
    n1, _, n3, n4 = n
    if variant.startswith("G2"):
        if not in_gamma_second_span(n):
            return QSeries.zero(qmax)
        extra = n1 if variant == "G2;0" else n4
        return _over_pochhammers(n1 * n1 + n4 * n4 - n1 * n4 + extra, [], [n4, n1 - n4], qmax)
    if not in_gamma_prime_span(n):
        return QSeries.zero(qmax)
    if n1 == 0:
        return QSeries.one(qmax)
    e, num, den = _prime_parts(n)
    if variant == "G1;0":
        return _over_pochhammers(e + n1, num, den, qmax)
    if variant == "G1;u4,b2":
        return _over_pochhammers(e + n3, num, den, qmax)
    if variant == "G1;b4,b2":
        return _over_pochhammers(e + n4, num, den, qmax)
    base = _over_pochhammers(e, num, den, qmax)
    ratio = _ratio(n4, n3, n1, qmax)
    if variant == "G1;b2":
        return mul(base, _qp(n4 + n3, qmax) + monomial_shift(ratio, n1))
    # G1;u4,b4,b2
    return mul(base, QSeries.one(qmax) - ratio)


def restricted_oracle(variant: str | None, part: str, n: WeightVec, qmax: int) -> QSeries:
    """Oracle for a restricted set; ``variant=None`` means the full B_{Gamma'} / B_{Gamma''}."""
    if variant is not None:
        return oracle_character(D4, Restricted(variant), tuple(n), qmax)
    subset = GAMMA_PRIME if part == "G1" else GAMMA_SECOND
    return oracle_character(D4, LambdaK(0), tuple(n), qmax, subset)


# --------------------------------------------------------------- split / merge


def _pair_up(factors: Sequence[tuple[Color, int]]) -> list[tuple[Color, int]]:
    """Replace u2(-r) b2(-r) by t2(-r-1) t2(-r) and u4(-r-1) b4(-r) by t4(-r-1) t4(-r)."""
    out = []
    t = 0
    while t < len(factors):
        c, r = factors[t]
        if t + 1 < len(factors):
            c2, r2 = factors[t + 1]
            if c == U2 and c2 == B2 and r2 == r:
                out += [(T2, r), (T2, r + 1)]
                t += 2
                continue
            if c == B4 and c2 == U4 and r2 == r + 1:
                out += [(T4, r), (T4, r + 1)]
                t += 2
                continue
        out.append((c, r))
        t += 1
    return out


def _unpair(factors: Sequence[tuple[Color, int]]) -> list[tuple[Color, int]]:
    """Inverse of :func:`_pair_up`; tilde factors must come in adjacent r, r+1 pairs."""
    out = []
    t = 0
    while t < len(factors):
        c, r = factors[t]
        if c.is_tilde:
            if t + 1 >= len(factors) or factors[t + 1] != (c, r + 1):
                raise AssertionError(f"unpaired tilde factor {c}(-{r}) in {factors}")
            out += [(U2, r), (B2, r)] if c == T2 else [(B4, r), (U4, r + 1)]
            t += 2
            continue
        out.append((c, r))
        t += 1
    return out


def _mono(factors, transient=False) -> Monomial:
    return Monomial(D4, tuple(factors), transient)


def _require(x: Monomial, subset: frozenset[Color], what: str) -> None:
    if x.spec != D4 or any(c not in subset for c in x.colors) or not is_admissible(x, LambdaK(0)):
        raise ValueError(f"{x} is not an element of {what}")


def merge_monomials(x1: Monomial, x2: Monomial) -> Monomial:
    """Glue x1 in B_{Gamma'} and x2 in B_{Gamma''} into an admissible D4 monomial."""
    _require(x1, GAMMA_PRIME, "B_{Gamma'}")
    _require(x2, GAMMA_SECOND, "B_{Gamma''}")
    x3 = _mono(_pair_up(x1.factors))
    y = _mono(staircase(x3, "+").factors + staircase(x2, "+").factors).sorted()
    z = staircase(y, "-")
    x = _mono(_unpair(z.factors))
    if not x.is_sorted():
        raise AssertionError(f"merge produced an unsorted monomial {x}")
    return x


def split_monomial(x: Monomial) -> tuple[Monomial, Monomial]:
    """Inverse of :func:`merge_monomials` on admissible D4 monomials."""
    if x.spec != D4 or not is_admissible(x, LambdaK(0)):
        raise ValueError(f"{x} is not an admissible D4 monomial for L(Lambda_0)")
    z = _mono(_pair_up(x.factors))
    y = staircase(z, "+")
    y3 = [f for f in y.factors if f[0] not in GAMMA_SECOND]
    y2 = [f for f in y.factors if f[0] in GAMMA_SECOND]
    x3 = staircase(_mono(y3), "-")
    x2 = staircase(_mono(y2), "-")
    return _mono(_unpair(x3.factors)), x2


# ------------------------------------------------------------------ characters


def _sum_range(n: WeightVec) -> range:
    mc = weight_to_mcoords(n)
    return range(mc.mprime, mc.m0 - mc.mdblprime + 1)


def _kard_term(n: WeightVec, s: int, qmax: int) -> tuple[int, list[int], list[int]]:
    """(exponent, numerator, denominator) of the summand with s = i + m'."""
    n1, n2, n3, n4 = n
    f = n1 * n1 + n2 * n2 + n3 * n3 + n4 * n4 - n1 * n2 - n2 * n3 - n3 * n4
    f -= s * (n2 - n3 + n4 - s)
    numer = [n1 - n2 + n3 - n4 + 2 * s]
    denom = [n3 - n4 + s, n1 - n2 + s, s, n1 - n2 + n3 - n4 + s, n4 - s, n2 - n3 - s]
    return f, numer, denom


def _d_factor(target: str, n: WeightVec, s: int, qmax: int) -> QSeries:
    n1, n2, n3, n4 = n
    ratio = _ratio(n3 - n4 + s, s, n1 - n2 + n3 - n4 + 2 * s, qmax)
    if target == "u2":
        return QSeries.one(qmax)
    if target == "u3":
        return QSeries.one(qmax) - ratio
    if target == "u4":
        return _qp(n3, qmax)
    if target == "b4":
        return _qp(n4, qmax)
    if target == "b3":
        return _qp(n3 + s, qmax) + monomial_shift(ratio, n1 - n2 + n3 + s)
    if target == "b2":
        return _qp(n2, qmax) + monomial_shift(ratio, n1)
    if target == "0":
        return _qp(n1, qmax)
    raise ValueError(f"unknown D4 target {target!r}")


def char_d4_gamma(target: ICVariant | str, n: WeightVec, qmax: int) -> QSeries:
    """Closed-form character of B_gamma (or B_0, or W(Lambda_k)) for D4."""
    name = target if isinstance(target, str) else target_name(target)
    if name not in DECOMPOSITION_TABLE:
        raise ValueError(f"unknown D4 target {name!r}")
    n = tuple(n)
    if len(n) != 4 or not realizable(D4, n):
        return QSeries.zero(qmax)
    total = QSeries.zero(qmax)
    for s in _sum_range(n):
        f, numer, denom = _kard_term(n, s, qmax)
        term = _over_pochhammers(f, numer, denom, qmax)
        total = total + mul(term, _d_factor(name, n, s, qmax))
    return total


def char_d4_lambda0(n: WeightVec, qmax: int) -> QSeries:
    """Closed-form character of W(Lambda_0) for D4."""
    n = tuple(n)
    if len(n) != 4 or not realizable(D4, n):
        return QSeries.zero(qmax)
    total = QSeries.zero(qmax)
    for s in _sum_range(n):
        f, numer, denom = _kard_term(n, s, qmax)
        total = total + _over_pochhammers(f, numer, denom, qmax)
    return total


def char_d4_combination(n: WeightVec, qmax: int, prime=char_gamma_prime, second=char_gamma_second) -> QSeries:
    """W(Lambda_0) as sum_i chi_{Gamma'}(alpha_i') chi_{Gamma''}(alpha_i'') q^{n_1' n_1''}."""
    n = tuple(n)
    if len(n) != 4 or not realizable(D4, n):
        return QSeries.zero(qmax)
    mc = weight_to_mcoords(n)
    total = QSeries.zero(qmax)
    for i in range(mc.m0 - mc.mprime - mc.mdblprime + 1):
        a1, a2 = alpha_split(n, i)
        cross = a1[0] * a2[0]
        if cross <= qmax:
            total = total + monomial_shift(mul(prime(a1, qmax), second(a2, qmax)), cross)
    return total


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def char_dl_lambda0(l: int, n: WeightVec, qmax: int, max_rank: int = 6) -> QSeries:
    """Closed-form character of W(Lambda_0) for D_l, 4 <= l <= max_rank."""
    if not 4 <= l <= max_rank:
        raise ValueError(f"D_l formula enabled for 4 <= l <= {max_rank}, got l={l}")
    n = tuple(n)
    spec = AlgebraSpec(TYPE_D, l)
    if len(n) != l or not realizable(spec, n):
        return QSeries.zero(qmax)
    mb, _ = d_underline_coords(n)  # mb[k-2] is the coefficient of b_k
    neg = {k: max(0, -mb[k - 2]) for k in range(2, l + 1)}
    shifts = {2: neg[2] + neg[l]}
    shifts.update({j: neg[j] for j in range(3, l)})
    free = n[l - 1] - sum(shifts.values())
    N = lambda t: n[t - 1]  # noqa: E731
    base = sum(x * x for x in n) - sum(N(t) * N(t + 1) for t in range(1, l - 2))
    base -= N(l - 2) * N(l - 1) + N(l - 2) * N(l)
    total = QSeries.zero(qmax)
    for comp in _compositions(free, l - 2):
        s = {j: comp[j - 2] + shifts[j] for j in range(2, l)}
        s2 = s[2]
        a = N(1) - N(2)
        b = N(l - 1) - N(l)
        numer = [a + b + 2 * s2]
        denom = [b + s2, a + s2, s2, a + b + s2]
        f = base
        for j in range(3, l - 1):
            denom += [s[j], N(j - 1) - N(j) + s[j]]
            f += s[j] * (N(j - 1) - N(j) + s[j])
        last = N(l - 2) - N(l - 1) - N(l) + s[l - 1]
        denom += [s[l - 1], last]
        f += s[l - 1] * last
        total = total + _over_pochhammers(f, numer, denom, qmax)
    return total


# ---------------------------------------------------------------- verification


def d_weights(l: int, bound: int) -> list[WeightVec]:
    spec = AlgebraSpec(TYPE_D, l)
    return [n for n in itertools.product(range(bound + 1), repeat=l) if realizable(spec, n)]


Chi = Callable[[str, WeightVec], QSeries]


def relations_d4(chi: Chi, n: WeightVec) -> list[tuple[str, QSeries, QSeries]]:
    n1 = n[0]
    w = lambda c: color_weight(D4, c)  # noqa: E731
    minus = lambda *cs: tuple(  # noqa: E731
        x - sum(y) for x, y in zip(n, zip(*(w(c) for c in cs)))
    )

    def q(k: int, s: QSeries) -> QSeries:
        # a negative exponent only occurs with a vanishing series
        return monomial_shift(s, k) if k >= 0 else (s if s.is_zero() else _bad(k))

    a_u3 = minus(U3)
    return [
        ("0", chi("0", n), q(n1, chi("u2", n))),
        ("u2", chi("u2", n), chi("u3", n) + q(n1, chi("u3", minus(U2))) + q(2 * n1 - 2, chi("u2", minus(U2, B2)))),
        (
            "u3",
            chi("u3", n),
            chi("u4", n) + chi("b4", n) - chi("b3", n)
            + q(n1, chi("u4", a_u3) + chi("b4", a_u3) - chi("b3", a_u3)),
        ),
        ("u4", chi("u4", n), chi("b3", n) + q(n1, chi("b4", minus(U4)))),
        ("b4", chi("b4", n), chi("b3", n) + q(n1, chi("u4", minus(B4)))),
        ("b3", chi("b3", n), chi("b2", n) + q(n1, chi("b2", minus(B3)))),
        ("b2", chi("b2", n), chi("0", n) + q(n1, chi("0", minus(B2)))),
    ]


def _bad(k: int) -> QSeries:
    raise AssertionError(f"negative power q^{k} applied to a nonzero series")


def oracle_chi_d4(qmax: int) -> Chi:
    cache: dict = {}

    def chi(name: str, n: WeightVec) -> QSeries:
        key = (name, tuple(n))
        if key not in cache:
            cache[key] = oracle_character(D4, target_variant(name), tuple(n), qmax)
        return cache[key]

    return chi


def formula_chi_d4(qmax: int) -> Chi:
    return lambda name, n: char_d4_gamma(name, n, qmax)


def verify_recurrences_d4(
    bound: int, qmax: int, source: str = "oracle", weights: Sequence[WeightVec] | None = None
) -> Report:
    if source not in ("oracle", "formula"):
        raise ValueError(f"unknown source {source!r}")
    chi = oracle_chi_d4(qmax) if source == "oracle" else formula_chi_d4(qmax)
    report = Report(f"d4-recurrence[{source}]")
    for n in d_weights(4, bound) if weights is None else weights:
        for name, lhs, rhs in relations_d4(chi, n):
            report.record(n, f"relation {name}", lhs.max_abs_diff(rhs))
    return report


def verify_formula_d4(bound: int, qmax: int, weights: Sequence[WeightVec] | None = None) -> Report:
    report = Report("d4-formula")
    oracle = oracle_chi_d4(qmax)
    for n in d_weights(4, bound) if weights is None else weights:
        report.record(n, "combination", char_d4_combination(n, qmax).max_abs_diff(oracle("u2", n)))
        report.record(n, "lambda0", char_d4_lambda0(n, qmax).max_abs_diff(oracle("u2", n)))
        for name in D4_TARGETS:
            report.record(n, f"target {name}", char_d4_gamma(name, n, qmax).max_abs_diff(oracle(name, n)))
    return report


def verify_restricted_d4(bound: int, qmax: int, weights: Sequence[WeightVec] | None = None) -> Report:
    """Gamma', Gamma'' and the seven restricted formulas against the oracle.

    The default grid is every n with entries <= bound; inexpressible weights
    check that both sides vanish.
    """
    report = Report("d4-restricted")
    grid = itertools.product(range(bound + 1), repeat=4) if weights is None else weights
    for n in grid:
        report.record(n, "Gamma'", char_gamma_prime(n, qmax).max_abs_diff(restricted_oracle(None, "G1", n, qmax)))
        report.record(n, "Gamma''", char_gamma_second(n, qmax).max_abs_diff(restricted_oracle(None, "G2", n, qmax)))
        for v in RESTRICTED_FIRST:
            report.record(n, v, restricted_char(v, n, qmax).max_abs_diff(restricted_oracle(v, "", n, qmax)))
    return report


def _member(x: Monomial, variant: str | None, part: str) -> bool:
    subset = GAMMA_PRIME if part == "G1" else GAMMA_SECOND
    if any(c not in subset for c in x.colors):
        return False
    ic: ICVariant = LambdaK(0) if variant is None else Restricted(variant)
    return is_admissible(x, ic)


def verify_decomposition_d4(dmax: int) -> Report:
    """Split/merge bijection, degree bookkeeping and the seven membership rules."""
    report = Report("d4-split")
    basis = list(iter_basis(EnumRequest(D4, LambdaK(0), None, dmax)))
    seen = set()
    for x in basis:
        x1, x2 = split_monomial(x)
        w = x.weight()
        report.check(_member(x1, None, "G1") and _member(x2, None, "G2"), w, f"split parts of {x}")
        report.check(merge_monomials(x1, x2) == x, w, f"merge(split) != id at {x}")
        report.check(x.degree() == x1.degree() + x2.degree() + len(x1) * len(x2), w, f"degree identity at {x}")
        for name, (v1, v2) in DECOMPOSITION_TABLE.items():
            inside = is_admissible(x, target_variant(name))
            parts = _member(x1, v1, "G1") and _member(x2, v2, "G2")
            report.check(inside == parts, w, f"target {name} membership at {x}")
        seen.add((x1, x2))
    # converse: every admissible pair in the degree window merges into the basis
    basis_set = set(basis)
    ones = list(iter_basis(EnumRequest(D4, LambdaK(0), None, dmax, GAMMA_PRIME)))
    twos = list(iter_basis(EnumRequest(D4, LambdaK(0), None, dmax, GAMMA_SECOND)))
    pairs = 0
    for x1 in ones:
        for x2 in twos:
            if x1.degree() + x2.degree() + len(x1) * len(x2) > dmax:
                continue
            pairs += 1
            x = merge_monomials(x1, x2)
            report.check(x in basis_set, x.weight(), f"merge of {x1} | {x2} not admissible")
            report.check(split_monomial(x) == (x1, x2), x.weight(), f"split(merge) != id at {x1} | {x2}")
    report.check(pairs == len(basis) == len(seen), None, f"pair count {pairs} vs basis {len(basis)}")
    return report


def verify_dl_remark(l: int, bound: int, qmax: int, weights: Sequence[WeightVec] | None = None) -> Report:
    """The general D_l multi-sum against char_d4_lambda0 (l = 4) or the oracle."""
    spec = AlgebraSpec(TYPE_D, l)
    report = Report(f"dl-remark[D{l}]")
    for n in d_weights(l, bound) if weights is None else weights:
        got = char_dl_lambda0(l, n, qmax)
        want = char_d4_lambda0(n, qmax) if l == 4 else oracle_character(spec, LambdaK(0), n, qmax)
        report.record(n, f"D{l} lambda0", got.max_abs_diff(want))
    return report
