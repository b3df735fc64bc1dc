"""Monomials x_{g_n}(-r_n) ... x_{g_1}(-r_1) and the transforms acting on them.

Factors are stored by their index t = 1..n, i.e. ``factors[0]`` is the
rightmost (largest) variable x_{g_1}(-r_1) with the smallest exponent.  The
written form lists them left to right, largest r first.

Sign conventions follow the superscripts used for the transforms: ``x^{+s}``
lowers every r by s, and ``x^{+stair}`` lowers r_t by t - 1.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Sequence

from .colors import (
    TYPE_A,
    TYPE_D,
    AlgebraSpec,
    Color,
    WeightVec,
    add_weights,
    barred,
    color_weight,
    energy,
    parse_color,
    theta,
    unbarred,
)

Factor = tuple[Color, int]


# ---------------------------------------------------------------- IC variants


@dataclass(frozen=True)
class LambdaK:
    """Initial conditions of the standard module L(Lambda_k)."""

    k: int


@dataclass(frozen=True)
class ICij:
    i: int
    j: int


@dataclass(frozen=True)
class IC0:
    """r_1 >= 2."""


@dataclass(frozen=True)
class ICgamma:
    gamma: Color


RESTRICTED_FIRST = {
    "G2;0": (),
    "G2;b3": ("b3",),
    "G1;0": (),
    "G1;b2": ("b2",),
    "G1;u4,b2": ("u4", "b2"),
    "G1;b4,b2": ("b4", "b2"),
    "G1;u4,b4,b2": ("u4", "b4", "b2"),
}

GAMMA_PRIME = frozenset(parse_color(c) for c in ("b2", "b4", "u4", "u2"))
GAMMA_SECOND = frozenset(parse_color(c) for c in ("b3", "u3"))


@dataclass(frozen=True)
class Restricted:
    """One of the seven D4 first-color restrictions on B_{G'} or B_{G''}.

    ``name`` is e.g. ``"G1;u4,b2"`` (G1 = Gamma', G2 = Gamma'').
    """

    name: str

    def __post_init__(self):
        if self.name not in RESTRICTED_FIRST:
            raise ValueError(f"unknown restricted set {self.name!r}")

    @property
    def color_subset(self) -> frozenset[Color]:
        return GAMMA_PRIME if self.name.startswith("G1") else GAMMA_SECOND


ICVariant = LambdaK | ICij | IC0 | ICgamma | Restricted


def parse_ic(text: str) -> ICVariant:
    """Parse 'lambda:K', 'ij:I,J', 'ic0', 'gamma:COLOR' or 'restricted:NAME'."""
    head, _, rest = text.partition(":")
    head = head.lower()
    if head in ("lambda", "k"):
        return LambdaK(int(rest))
    if head == "ij":
        i, j = (int(t) for t in rest.split(","))
        return ICij(i, j)
    if head in ("ic0", "0"):
        return IC0()
    if head == "gamma":
        if rest == "0":
            return IC0()
        return ICgamma(parse_color(rest))
    if head == "restricted":
        return Restricted(rest)
    raise ValueError(f"cannot parse IC variant {text!r}")


def first_colors(spec: AlgebraSpec, ic: ICVariant) -> frozenset[Color] | None:
    """Colors allowed as the first factor when r_1 = 1 (None means all)."""
    cs = spec.colors
    if isinstance(ic, IC0):
        return frozenset()
    if spec.family == TYPE_A:
        l, m = spec.rank, spec.m
        if isinstance(ic, LambdaK):
            k = ic.k
            if not 0 <= k <= l:
                raise ValueError(f"k={k} out of range for {spec}")
            if k == 0:
                return None
            return frozenset(
                c for c in cs if (k <= m and c.i > k) or (k >= m and c.j < k)
            )
        if isinstance(ic, ICij):
            if not 1 <= ic.i <= m <= ic.j <= l:
                raise ValueError(f"IC_ij indices ({ic.i},{ic.j}) invalid for {spec}")
            return frozenset(c for c in cs if c.i >= ic.i and c.j <= ic.j)
        raise ValueError(f"{ic} is not an initial condition for type A")
    l = spec.rank
    if isinstance(ic, LambdaK):
        if ic.k == 0:
            return None
        if ic.k == 1:
            return frozenset()
        if ic.k == l - 1:
            return frozenset([barred(k) for k in range(2, l)] + [unbarred(l)])
        if ic.k == l:
            return frozenset(barred(k) for k in range(2, l + 1))
        raise ValueError(f"L(Lambda_{ic.k}) is not a level one module of {spec}")
    if isinstance(ic, ICgamma):
        g = ic.gamma
        spec.check_color(g)
        if g == unbarred(l):
            return frozenset([barred(k) for k in range(2, l)] + [unbarred(l)])
        key = spec.color_key(g)
        return frozenset(c for c in cs if spec.color_key(c) <= key)
    if isinstance(ic, Restricted):
        if l != 4:
            raise ValueError("restricted sets are defined for D4 only")
        return frozenset(parse_color(c) for c in RESTRICTED_FIRST[ic.name])
    raise ValueError(f"{ic} is not an initial condition for type D")


def ic_color_subset(ic: ICVariant) -> frozenset[Color] | None:
    return ic.color_subset if isinstance(ic, Restricted) else None


# ------------------------------------------------------------------ monomials


@dataclass(frozen=True)
class Monomial:
    spec: AlgebraSpec
    factors: tuple[Factor, ...] = ()
    transient: bool = False

    def __post_init__(self):
        floor = 0 if self.transient else 1
        for c, r in self.factors:
            if r < floor:
                raise ValueError(f"exponent {r} below floor {floor} in {self}")

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def colors(self) -> tuple[Color, ...]:
        return tuple(c for c, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(r for _, r in self.factors)

    def weight(self) -> WeightVec:
        w = self.spec.zero_weight()
        for c, _ in self.factors:
            w = add_weights(w, color_weight(self.spec, c))
        return w

    def degree(self) -> int:
        return sum(r for _, r in self.factors)

    def sort_key(self, f: Factor) -> tuple:
        # ascending in t: smaller r first, larger color first among ties
        c, r = f
        return (r, tuple(-x for x in self.spec.color_key(c)))

    def is_sorted(self) -> bool:
        keys = [self.sort_key(f) for f in self.factors]
        return all(a <= b for a, b in zip(keys, keys[1:]))

    def sorted(self) -> Monomial:
        return replace(self, factors=tuple(sorted(self.factors, key=self.sort_key)))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(f"{c}(-{r})" for c, r in reversed(self.factors))

    def to_json(self) -> list[dict]:
        return [{"color": str(c), "r": r} for c, r in reversed(self.factors)]


def monomial(spec: AlgebraSpec, factors: Iterable[Factor], transient: bool = False) -> Monomial:
    """Canonical constructor: validates colors and sorts into variable order."""
    fs = tuple(factors)
    for c, _ in fs:
        spec.check_color(c, allow_tilde=True)
    return Monomial(spec, fs, transient).sorted()


def parse_monomial(spec: AlgebraSpec, text: str) -> Monomial:
    """Parse the written form, e.g. ``"b2(-3) u4(-1)"`` or ``"(1,2)(-3) (2,2)(-1)"``."""
    text = text.strip()
    if text in ("", "1"):
        return Monomial(spec)
    factors = []
    for tok in text.split():
        head, _, tail = tok.rpartition("(-")
        factors.append((parse_color(head), int(tail.rstrip(")"))))
    return monomial(spec, factors)


def monomial_from_json(spec: AlgebraSpec, data: list[dict] | str) -> Monomial:
    if isinstance(data, str):
        data = json.loads(data)
    return monomial(spec, [(parse_color(d["color"]), int(d["r"])) for d in data])


# ---------------------------------------------------------------- predicates


def satisfies_dc(x: Monomial) -> bool:
    fs = x.factors
    return all(
        r2 - r1 >= energy(x.spec, c2, c1) for (c1, r1), (c2, r2) in zip(fs, fs[1:])
    )


def satisfies_dc_prime(x: Monomial) -> bool:
    """Difference conditions with the energy lowered by one."""
    fs = x.factors
    return all(
        r2 - r1 >= energy(x.spec, c2, c1) - 1 for (c1, r1), (c2, r2) in zip(fs, fs[1:])
    )


def satisfies_ic(x: Monomial, ic: ICVariant) -> bool:
    if not x.factors:
        return True
    c1, r1 = x.factors[0]
    sub = ic_color_subset(ic)
    if sub is not None and any(c not in sub for c in x.colors):
        return False
    if r1 >= 2:
        return True
    if r1 < 1:
        return False
    allowed = first_colors(x.spec, ic)
    return allowed is None or c1 in allowed


def is_admissible(x: Monomial, ic: ICVariant) -> bool:
    return x.is_sorted() and satisfies_dc(x) and satisfies_ic(x, ic)


# ---------------------------------------------------------------- transforms


def shift(x: Monomial, s: int, transient: bool = False) -> Monomial:
    """x^{+s}: every r_t becomes r_t - s (use a negative s for x^{-|s|})."""
    return Monomial(x.spec, tuple((c, r - s) for c, r in x.factors), transient)


def staircase(x: Monomial, direction: str, transient: bool = False) -> Monomial:
    """x^{+stair} (r_t -> r_t - (t-1)) or x^{-stair} (r_t -> r_t + (t-1)).

    The result is not re-sorted.
    """
    if direction not in ("+", "-"):
        raise ValueError(f"direction must be '+' or '-', got {direction!r}")
    sign = -1 if direction == "+" else 1
    fs = tuple((c, r + sign * t) for t, (c, r) in enumerate(x.factors))
    return Monomial(x.spec, fs, transient)


def apply_partition(x: Monomial, parts: Sequence[int]) -> Monomial:
    """Add lambda_t to r_t; lambda is nondecreasing and as long as x."""
    if len(parts) != len(x):
        raise ValueError(f"partition length {len(parts)} != monomial length {len(x)}")
    check_partition(parts)
    return replace(x, factors=tuple((c, r + p) for (c, r), p in zip(x.factors, parts)))


def check_partition(parts: Sequence[int]) -> None:
    if any(p < 0 for p in parts) or any(a > b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"{tuple(parts)} is not a nondecreasing sequence of naturals")


def partitions(n: int, max_weight: int) -> Iterator[tuple[int, ...]]:
    """All nondecreasing n-tuples of naturals with sum <= max_weight."""

    def rec(slots: int, lo: int, budget: int) -> Iterator[tuple[int, ...]]:
        if slots == 0:
            yield ()
            return
        # remaining parts are all >= p, so p * slots must fit the budget
        for p in range(lo, budget // slots + 1):
            for rest in rec(slots - 1, p, budget - p):
                yield (p,) + rest

    return rec(n, 0, max_weight)


# --------------------------------------------------------------------- paths


@dataclass(frozen=True)
class Path:
    """A color sequence (g_n, ..., g_1), stored by index: ``colors[0]`` is g_1."""

    spec: AlgebraSpec
    colors: tuple[Color, ...]

    def __len__(self) -> int:
        return len(self.colors)

    def weight(self) -> WeightVec:
        w = self.spec.zero_weight()
        for c in self.colors:
            w = add_weights(w, color_weight(self.spec, c))
        return w


def path_of(x: Monomial) -> Path:
    return Path(x.spec, x.colors)


@dataclass(frozen=True)
class Unit:
    """r_1 = 1."""


@dataclass(frozen=True)
class ThetaRow:
    """r_1 = 1 + theta(k - i_1)."""

    k: int


@dataclass(frozen=True)
class ThetaCol:
    """r_1 = 1 + theta(j_1 - k)."""

    k: int


@dataclass(frozen=True)
class MaxIJ:
    """r_1 = 1 + max(theta(i - 1 - i_1), theta(j_1 - j - 1))."""

    i: int
    j: int


StartRule = Unit | ThetaRow | ThetaCol | MaxIJ


def start_exponent(c: Color, rule: StartRule) -> int:
    if isinstance(rule, Unit):
        return 1
    if isinstance(rule, ThetaRow):
        return 1 + theta(rule.k - c.i)
    if isinstance(rule, ThetaCol):
        return 1 + theta(c.j - rule.k)
    if isinstance(rule, MaxIJ):
        return 1 + max(theta(rule.i - 1 - c.i), theta(c.j - rule.j - 1))
    raise TypeError(f"unknown start rule {rule!r}")


def minimal_monomial(p: Path, start: StartRule = Unit()) -> Monomial:
    if not p.colors:
        raise ValueError("minimal monomial of the empty path")
    r = start_exponent(p.colors[0], start)
    fs = [(p.colors[0], r)]
    for prev, c in zip(p.colors, p.colors[1:]):
        r += energy(p.spec, c, prev)
        fs.append((c, r))
    return Monomial(p.spec, tuple(fs))


def iter_paths(spec: AlgebraSpec, n: WeightVec) -> Iterator[Path]:
    """All paths of weight n (brute force over color sequences)."""
    length = n[spec.count_index]
    for seq in itertools.product(spec.colors, repeat=length):
        p = Path(spec, seq)
        if p.weight() == tuple(n):
            yield p


def ic_dictionary_a(spec: AlgebraSpec, k: int) -> ICVariant:
    """The IC_ij / IC_0 variant describing L(Lambda_k) in type A."""
    if spec.family != TYPE_A:
        raise ValueError("the IC_ij dictionary is a type A notion")
    l, m = spec.rank, spec.m
    if k == 0:
        return ICij(1, l)
    if k == m:
        return IC0()
    if k < m:
        return ICij(k + 1, l)
    return ICij(1, k - 1)


def ic_dictionary_d(spec: AlgebraSpec, k: int) -> ICVariant:
    if spec.family != TYPE_D:
        raise ValueError("the IC_gamma dictionary is a type D notion")
    l = spec.rank
    table = {0: ICgamma(unbarred(2)), 1: IC0(), l - 1: ICgamma(unbarred(l)), l: ICgamma(barred(l))}
    if k not in table:
        raise ValueError(f"L(Lambda_{k}) is not a level one module of {spec}")
    return table[k]
