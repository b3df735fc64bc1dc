"""Type A_l characters: closed forms, the partition bijection, path splitting
and the recurrence system for the sets B_ij.

Weights are tuples (n_1, ..., n_l).  Whenever a formula needs n_0 or n_{l+1}
those are 0, and a weight outside the chain 0 <= n_1 <= ... <= n_m >= ... >= n_l
has character 0.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Sequence

from .colors import (
    TYPE_A,
    AlgebraSpec,
    Color,
    WeightVec,
    color_weight,
    is_chain,
    pair,
    sub_weights,
    theta,
)
from .enumerator import EnumRequest, enumerate_basis, oracle_character
from .monomials import (
    IC0,
    ICij,
    ICVariant,
    LambdaK,
    MaxIJ,
    Monomial,
    Path,
    StartRule,
    ThetaCol,
    ThetaRow,
    Unit,
    check_partition,
    is_admissible,
    minimal_monomial,
    monomial,
    partitions,
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

EDGE_FIRST = "first"  # omega_1
EDGE_LAST = "last"  # omega_l


def quadratic_form(n: Sequence[int]) -> int:
    """sum n_i^2 - sum n_i n_{i+1}."""
    return sum(x * x for x in n) - sum(a * b for a, b in zip(n, n[1:]))


def _nk(n: Sequence[int], k: int) -> int:
    return 0 if k == 0 else n[k - 1]


def _ext(n: Sequence[int], idx: int) -> int:
    """n_idx with n_0 = n_{l+1} = 0."""
    return n[idx - 1] if 1 <= idx <= len(n) else 0


def _over_pochhammers(exponent: int, numer: Iterable[int], denom: Iterable[int], qmax: int) -> QSeries:
    """q^exponent * prod (q)_a / prod (q)_b."""
    if exponent > qmax:
        return QSeries.zero(qmax)
    s = QSeries.q_power(exponent, qmax)
    for a in numer:
        s = mul(s, pochhammer(a, qmax))
    for b in denom:
        s = mul(s, inv_pochhammer(b, qmax))
    return s


def edge_spec(l: int, edge: str) -> AlgebraSpec:
    if edge == EDGE_LAST:
        return AlgebraSpec(TYPE_A, l, l)
    if edge == EDGE_FIRST:
        return AlgebraSpec(TYPE_A, l, 1)
    raise ValueError(f"edge must be {EDGE_FIRST!r} or {EDGE_LAST!r}, got {edge!r}")


def _check_k(l: int, k: int) -> None:
    if not 0 <= k <= l:
        raise ValueError(f"k={k} out of range 0..{l}")


def char_edge(l: int, edge: str, k: int, n: WeightVec, qmax: int) -> QSeries:
    """Character of W(Lambda_k) for omega_l (``edge='last'``) or omega_1."""
    spec = edge_spec(l, edge)
    _check_k(l, k)
    n = tuple(n)
    if len(n) != l or not is_chain(n, spec.m):
        return QSeries.zero(qmax)
    if edge == EDGE_LAST:
        diffs = [n[0]] + [n[t] - n[t - 1] for t in range(1, l)]
    else:
        diffs = [n[l - 1]] + [n[t - 1] - n[t] for t in range(l - 1, 0, -1)]
    return _over_pochhammers(quadratic_form(n) + _nk(n, k), [], diffs, qmax)


def _middle_denominators(n: WeightVec, m: int) -> list[int]:
    l = len(n)
    rows = [n[0]] + [n[t] - n[t - 1] for t in range(1, m)]
    cols = [n[t - 1] - n[t] for t in range(m, l)] + [n[l - 1]]
    return rows + cols


def char_middle(l: int, m: int, k: int, n: WeightVec, qmax: int) -> QSeries:
    """Character of W(Lambda_k) for omega_m with 1 < m < l."""
    if not 1 < m < l:
        raise ValueError(f"char_middle needs 1 < m < l, got m={m}, l={l}")
    _check_k(l, k)
    n = tuple(n)
    if len(n) != l or not is_chain(n, m):
        return QSeries.zero(qmax)
    return _over_pochhammers(
        quadratic_form(n) + _nk(n, k), [n[m - 1]], _middle_denominators(n, m), qmax
    )


def char_lambda(spec: AlgebraSpec, k: int, n: WeightVec, qmax: int) -> QSeries:
    """Closed-form character of W(Lambda_k), picking the edge or middle formula."""
    l, m = spec.rank, spec.m
    if m == l:
        return char_edge(l, EDGE_LAST, k, n, qmax)
    if m == 1:
        return char_edge(l, EDGE_FIRST, k, n, qmax)
    return char_middle(l, m, k, n, qmax)


def _ratio(a: int, b: int, c: int, qmax: int) -> QSeries:
    """(1 - q^a)(1 - q^b) / (1 - q^c); zero as soon as a or b is zero."""
    if a == 0 or b == 0:
        return QSeries.zero(qmax)
    numer = mul(one_minus_q_power(a, qmax), one_minus_q_power(b, qmax))
    return divide_unit(numer, one_minus_q_power(c, qmax))


def char_ij(l: int, m: int, i: int, j: int, n: WeightVec, qmax: int) -> QSeries:
    """Closed form for the character of B_ij."""
    if not 1 <= i <= m <= j <= l:
        raise ValueError(f"need 1 <= i <= m <= j <= l, got i={i}, j={j}, m={m}, l={l}")
    n = tuple(n)
    if len(n) != l or not is_chain(n, m):
        return QSeries.zero(qmax)
    nm = n[m - 1]
    if nm == 0:
        # chain condition leaves only the zero weight: the empty monomial
        return QSeries.one(qmax)
    lo, hi = _ext(n, i - 1), _ext(n, j + 1)
    bracket = QSeries.q_power(lo + hi, qmax) if lo + hi <= qmax else QSeries.zero(qmax)
    bracket = bracket + monomial_shift(_ratio(lo, hi, nm, qmax), nm)
    base = _over_pochhammers(quadratic_form(n), [nm], _middle_denominators(n, m), qmax)
    return mul(base, bracket)


def closed_form_a(spec: AlgebraSpec, ic: ICVariant, n: WeightVec, qmax: int) -> QSeries:
    """Closed form for any type A variant: L(Lambda_k), IC_ij or IC_0."""
    if len(n) != spec.rank or not is_chain(tuple(n), spec.m):
        return QSeries.zero(qmax)
    if isinstance(ic, LambdaK):
        return char_lambda(spec, ic.k, n, qmax)
    if isinstance(ic, IC0):
        return char_lambda(spec, spec.m, n, qmax)
    if isinstance(ic, ICij):
        return char_ij(spec.rank, spec.m, ic.i, ic.j, n, qmax)
    raise ValueError(f"no type A closed form for {ic}")


# ---------------------------------------------------------- partition bijection


def _edge_blocks(l: int, edge: str, k: int, n: WeightVec) -> list[tuple[Color, int, int]]:
    """(color, block length, exponent offset) per block, in block order 1..l."""
    blocks = []
    for c in range(1, l + 1):
        if edge == EDGE_LAST:
            color = pair(c, l)
            length = n[c - 1] - (n[c - 2] if c > 1 else 0)
            offset = theta(k - c) if k > 0 else 0
        else:
            color = pair(1, c)
            length = n[c - 1] - (n[c] if c < l else 0)
            offset = theta(c - k) if k > 0 else 0
        blocks.append((color, length, offset))
    return blocks


def edge_weight(l: int, edge: str, lengths: Sequence[int]) -> WeightVec:
    """Weight whose blocks have the given lengths (inverse of the block split)."""
    if edge == EDGE_LAST:
        return tuple(itertools.accumulate(lengths))
    return tuple(reversed(tuple(itertools.accumulate(reversed(lengths)))))


def bijection_forward(l: int, edge: str, k: int, lams: Sequence[Sequence[int]]) -> Monomial:
    """Partition tuple -> admissible monomial of W(Lambda_k), edge case."""
    spec = edge_spec(l, edge)
    _check_k(l, k)
    if len(lams) != l:
        raise ValueError(f"expected {l} partitions, got {len(lams)}")
    for lam in lams:
        check_partition(lam)
    n = edge_weight(l, edge, [len(lam) for lam in lams])
    factors = []
    for (color, length, offset), lam in zip(_edge_blocks(l, edge, k, n), lams):
        if length != len(lam):
            raise ValueError("partition lengths inconsistent with the weight")
        factors.extend((color, t + offset + p) for t, p in enumerate(lam, start=1))
    x = monomial(spec, factors)
    return staircase(x, "-")


def bijection_backward(x: Monomial, l: int, edge: str, k: int) -> list[tuple[int, ...]]:
    """Admissible monomial -> its partition tuple (inverse of the forward map)."""
    spec = edge_spec(l, edge)
    _check_k(l, k)
    if x.spec != spec:
        raise ValueError(f"monomial lives in {x.spec}, expected {spec}")
    if not is_admissible(x, LambdaK(k)):
        raise ValueError(f"{x} is not admissible for L(Lambda_{k})")
    flat = staircase(x, "+")
    by_color: dict[Color, list[int]] = {}
    for c, r in flat.factors:
        by_color.setdefault(c, []).append(r)
    out = []
    for color, length, offset in _edge_blocks(l, edge, k, x.weight()):
        rs = by_color.get(color, [])
        assert len(rs) == length
        out.append(tuple(r - t - offset for t, r in enumerate(rs, start=1)))
    return out


def bijection_degree(l: int, edge: str, k: int, lams: Sequence[Sequence[int]]) -> int:
    """|lambda| + sum n_i^2 - sum n_i n_{i+1} + n_k for the image weight."""
    n = edge_weight(l, edge, [len(lam) for lam in lams])
    return sum(map(sum, lams)) + quadratic_form(n) + _nk(n, k)


# ----------------------------------------------------------- path decomposition


def row_spec(m: int) -> AlgebraSpec:
    return AlgebraSpec(TYPE_A, m, m)


def col_spec(l: int, m: int) -> AlgebraSpec:
    return AlgebraSpec(TYPE_A, l - m + 1, 1)


def path_decompose(p: Path) -> tuple[Path, Path]:
    """Split a path of (i, j) colors into its row path and its column path.

    Rows live in A_m with omega_m (colors (i, m)); columns live in A_{l-m+1}
    with omega_1, column index j relabelled to j - m + 1.
    """
    spec = p.spec
    l, m = spec.rank, spec.m
    rows = Path(row_spec(m), tuple(pair(c.i, m) for c in p.colors))
    cols = Path(col_spec(l, m), tuple(pair(1, c.j - m + 1) for c in p.colors))
    return rows, cols


def _sub_rules(spec: AlgebraSpec, start: StartRule) -> tuple[StartRule, StartRule]:
    m = spec.m
    if isinstance(start, Unit):
        return Unit(), Unit()
    if isinstance(start, ThetaRow):
        return ThetaRow(start.k), Unit()
    if isinstance(start, ThetaCol):
        return Unit(), ThetaCol(start.k - m + 1)
    if isinstance(start, MaxIJ):
        return ThetaRow(start.i - 1), ThetaCol(start.j + 2 - m)
    raise TypeError(f"unknown start rule {start!r}")


def minimal_degree_identity(p: Path, start: StartRule = Unit()) -> tuple[int, int, int, int]:
    """Degrees of the minimal monomials of p, its rows and its columns.

    Returns (dp, d1, d2, residual) with residual = d1 + d2 - n_m^2 - dp, the
    amount by which the row/column product overestimates the true degree.
    """
    rows, cols = path_decompose(p)
    r1, r2 = _sub_rules(p.spec, start)
    dp = minimal_monomial(p, start).degree()
    d1 = minimal_monomial(rows, r1).degree()
    d2 = minimal_monomial(cols, r2).degree()
    return dp, d1, d2, d1 + d2 - len(p) ** 2 - dp


# --------------------------------------------------------------- C and D sets


def cd_set_characters(spec: AlgebraSpec, i: int, j: int, n: WeightVec, qmax: int) -> tuple[QSeries, QSeries]:
    """Enumerated characters of the sets C_ij and D_ij.

    C: elements of B_ij whose first color (i_1, j_1) has i_1 < i and j_1 > j.
    D: elements of B_{1,l} with r_1 = 1 and such a first color.
    """
    l = spec.rank

    def outside(x: Monomial) -> bool:
        c = x.factors[0][0]
        return c.i < i and c.j > j

    def hist(xs) -> QSeries:
        cs = [0] * (qmax + 1)
        for x in xs:
            cs[x.degree()] += 1
        return QSeries(qmax, tuple(cs))

    if not is_chain(tuple(n), spec.m):
        return QSeries.zero(qmax), QSeries.zero(qmax)
    bij = enumerate_basis(EnumRequest(spec, ICij(i, j), tuple(n), qmax))
    b1l = enumerate_basis(EnumRequest(spec, ICij(1, l), tuple(n), qmax))
    c_set = [x for x in bij if x.factors and outside(x)]
    d_set = [x for x in b1l if x.factors and x.factors[0][1] == 1 and outside(x)]
    return hist(c_set), hist(d_set)


# ------------------------------------------------------------------ recurrences

Chi = Callable[[ICVariant, WeightVec], QSeries]
Relation = Callable[[AlgebraSpec, Chi, WeightVec], list[tuple[str, QSeries, QSeries]]]


def _q(k: int, s: QSeries) -> QSeries:
    return monomial_shift(s, k)


def relations_a(spec: AlgebraSpec, chi: Chi, n: WeightVec) -> list[tuple[str, QSeries, QSeries]]:
    """Both sides of every relation of the B_ij recurrence system at weight n.

    These are the forms that follow from splitting off a first factor at
    r = 1; three of them differ from the commonly quoted statement (see
    :func:`printed_relations_a`).
    """
    l, m = spec.rank, spec.m
    nm = n[m - 1]
    out = [("0", chi(IC0(), n), _q(nm, chi(ICij(1, l), n)))]
    for i in range(1, m + 1):
        for j in range(m, l + 1):
            a = sub_weights(n, color_weight(spec, pair(i, j)))
            lhs = chi(ICij(i, j), n)
            if i != m and j != m:
                rhs = (
                    chi(ICij(i + 1, j), n)
                    + chi(ICij(i, j - 1), n)
                    - chi(ICij(i + 1, j - 1), n)
                    + _q(1, chi(ICij(i + 1, j - 1), a))
                    - _q(nm, chi(ICij(1, l), a))
                    + _q(
                        nm,
                        chi(ICij(1, j - 1), a)
                        + chi(ICij(i + 1, l), a)
                        - chi(ICij(i + 1, j - 1), a),
                    )
                )
                name = "ij"
            elif i != m:
                rhs = chi(ICij(i + 1, m), n) + _q(nm, chi(ICij(i + 1, l), a))
                name = "im"
            elif j != m:
                rhs = chi(ICij(m, j - 1), n) + _q(nm, chi(ICij(1, j - 1), a))
                name = "mj"
            else:
                rhs = chi(IC0(), n) + _q(nm, chi(IC0(), a))
                name = "mm"
            out.append((f"{name}({i},{j})", lhs, rhs))
    return out


def printed_relations_a(spec: AlgebraSpec, chi: Chi, n: WeightVec) -> list[tuple[str, QSeries, QSeries]]:
    """The relations exactly as usually quoted; these fail on some weights."""
    l, m = spec.rank, spec.m
    nm = n[m - 1]
    out = []
    for i in range(1, m + 1):
        for j in range(m, l + 1):
            a = sub_weights(n, color_weight(spec, pair(i, j)))
            lhs = chi(ICij(i, j), n)
            if i != m and j != m:
                rhs = (
                    chi(ICij(i + 1, j), n)
                    + chi(ICij(i, j - 1), n)
                    - chi(ICij(i + 1, j - 1), n)
                    + _q(1, chi(ICij(i + 1, j - 1), a))
                    - _q(nm, chi(ICij(1, l), a))
                    + _q(
                        nm,
                        chi(ICij(1, j - 1), a)
                        - chi(ICij(i + 1, l), a)
                        - chi(ICij(i + 1, j - 1), a),
                    )
                )
                out.append((f"ij({i},{j})", lhs, rhs))
            elif i != m:
                out.append((f"im({i},{j})", lhs, chi(ICij(i + 1, m), n) + _q(1, chi(ICij(i + 1, m), a))))
            elif j != m:
                out.append((f"mj({i},{j})", lhs, chi(ICij(m, j - 1), n) + _q(1, chi(ICij(m, j - 1), a))))
    return out


def chain_weights(l: int, m: int, bound: int | Sequence[int]) -> list[WeightVec]:
    bounds = [bound] * l if isinstance(bound, int) else list(bound)
    ranges = [range(b + 1) for b in bounds]
    return [n for n in itertools.product(*ranges) if is_chain(n, m)]


def oracle_chi(spec: AlgebraSpec, qmax: int) -> Chi:
    cache: dict = {}

    def chi(ic: ICVariant, n: WeightVec) -> QSeries:
        key = (ic, tuple(n))
        if key not in cache:
            cache[key] = oracle_character(spec, ic, tuple(n), qmax)
        return cache[key]

    return chi


def formula_chi(spec: AlgebraSpec, qmax: int) -> Chi:
    def chi(ic: ICVariant, n: WeightVec) -> QSeries:
        return closed_form_a(spec, ic, tuple(n), qmax)

    return chi


def verify_recurrences_a(
    l: int,
    m: int,
    bound: int | Sequence[int],
    qmax: int,
    source: str = "oracle",
    relations: Relation = relations_a,
    weights: Sequence[WeightVec] | None = None,
) -> Report:
    """Evaluate both sides of every relation on the chain weights of a grid."""
    spec = AlgebraSpec(TYPE_A, l, m)
    if source == "oracle":
        chi = oracle_chi(spec, qmax)
    elif source == "formula":
        chi = formula_chi(spec, qmax)
    else:
        raise ValueError(f"unknown source {source!r}")
    report = Report(f"a-recurrence[{source}]")
    for n in chain_weights(l, m, bound) if weights is None else weights:
        for name, lhs, rhs in relations(spec, chi, n):
            report.record(n, f"A{l} m={m} relation {name}", lhs.max_abs_diff(rhs))
    return report


def verify_formula_a(
    l: int,
    m: int,
    bound: int | Sequence[int],
    qmax: int,
    variants: str = "lambda",
    weights: Sequence[WeightVec] | None = None,
) -> Report:
    """Closed forms against the oracle on every chain weight of a grid."""
    spec = AlgebraSpec(TYPE_A, l, m)
    report = Report(f"a-formula[{variants}]")
    if variants == "lambda":
        ics: list[ICVariant] = [LambdaK(k) for k in range(l + 1)]
    else:
        ics = [ICij(i, j) for i in range(1, m + 1) for j in range(m, l + 1)]
    for n in chain_weights(l, m, bound) if weights is None else weights:
        for ic in ics:
            got = closed_form_a(spec, ic, n, qmax)
            want = oracle_character(spec, ic, n, qmax)
            report.record(n, f"A{l} m={m} {ic}", got.max_abs_diff(want))
    return report


def verify_bijection(l: int, edge: str, bound: int, max_lambda: int) -> Report:
    """Forward/backward roundtrip, injectivity, admissibility and degree counts."""
    spec = edge_spec(l, edge)
    report = Report(f"a-bijection[{edge}]")
    for n in chain_weights(l, spec.m, bound):
        lengths = [length for _, length, _ in _edge_blocks(l, edge, 0, n)]
        for k in range(l + 1):
            base = quadratic_form(n) + _nk(n, k)
            top = base + max_lambda
            images = {}
            for lams in itertools.product(*(partitions(length, max_lambda) for length in lengths)):
                if sum(map(sum, lams)) > max_lambda:
                    continue
                x = bijection_forward(l, edge, k, lams)
                report.check(x not in images, n, f"k={k} forward not injective at {lams}")
                images[x] = lams
                report.check(is_admissible(x, LambdaK(k)) and x.weight() == n, n, f"k={k} image of {lams} not admissible")
                report.check(x.degree() == bijection_degree(l, edge, k, lams), n, f"k={k} degree identity at {lams}")
                back = bijection_backward(x, l, edge, k)
                report.check(tuple(back) == tuple(lams), n, f"k={k} roundtrip at {lams}")
            hist = [0] * (top + 1)
            for x in images:
                hist[x.degree()] += 1
            want = char_edge(l, edge, k, n, top)
            report.check(tuple(hist) == want.coeffs, n, f"k={k} image histogram vs formula")
    return report
