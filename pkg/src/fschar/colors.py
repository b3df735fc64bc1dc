"""Color sets, their linear orders, energy functions and weight coordinates.

Type A_l with minuscule weight omega_m has colors (i, j), 1 <= i <= m <= j <= l,
standing for alpha_i + ... + alpha_j.  Type D_l with omega_1 has barred colors
``b2..bl`` (alpha_1 + ... + alpha_{k-1}) and unbarred colors ``u2..ul``; the
split/merge procedure additionally uses the tilde colors ``t2`` and ``tl``.

Weights are plain tuples (n_1, ..., n_l) in the simple-root basis.  Negative
entries are allowed; realizability is a separate predicate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

WeightVec = tuple[int, ...]

TYPE_A = "A"
TYPE_D = "D"


def theta(n: int) -> int:
    return 1 if n >= 0 else 0


@dataclass(frozen=True, order=True)
class Color:
    """A color.  ``kind`` is 'A' (pair i, j), 'b' barred, 'u' unbarred, 't' tilde."""

    kind: str
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind not in ("A", "b", "u", "t"):
            raise ValueError(f"unknown color kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "A":
            return f"({self.i},{self.j})"
        return f"{self.kind}{self.i}"

    @property
    def is_tilde(self) -> bool:
        return self.kind == "t"


def pair(i: int, j: int) -> Color:
    return Color("A", i, j)


def barred(i: int) -> Color:
    return Color("b", i)


def unbarred(i: int) -> Color:
    return Color("u", i)


def tilde(i: int) -> Color:
    return Color("t", i)


_PAIR_RE = re.compile(r"^\((\d+),(\d+)\)$")
_D_RE = re.compile(r"^([but])(\d+)$")


def parse_color(text: str) -> Color:
    text = text.strip().replace(" ", "")
    m = _PAIR_RE.match(text)
    if m:
        return pair(int(m.group(1)), int(m.group(2)))
    m = _D_RE.match(text)
    if m:
        return Color(m.group(1), int(m.group(2)))
    raise ValueError(f"cannot parse color {text!r}")


@dataclass(frozen=True)
class AlgebraSpec:
    family: str
    rank: int
    m: int = 1

    def __post_init__(self):
        if self.family == TYPE_A:
            if self.rank < 1 or not 1 <= self.m <= self.rank:
                raise ValueError(f"bad A spec: rank={self.rank}, m={self.m}")
        elif self.family == TYPE_D:
            if self.rank < 4:
                raise ValueError(f"type D needs rank >= 4, got {self.rank}")
            if self.m != 1:
                raise ValueError("type D is only supported with omega_1")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    def __str__(self) -> str:
        if self.family == TYPE_A:
            return f"A{self.rank}(m={self.m})"
        return f"D{self.rank}"

    @cached_property
    def colors(self) -> tuple[Color, ...]:
        """All colors, sorted ascending in the color order."""
        l = self.rank
        if self.family == TYPE_A:
            cs = [pair(i, j) for i in range(1, self.m + 1) for j in range(self.m, l + 1)]
        else:
            cs = [barred(k) for k in range(2, l + 1)] + [unbarred(k) for k in range(2, l + 1)]
        return tuple(sorted(cs, key=self.color_key))

    @property
    def count_index(self) -> int:
        """Position of the weight coordinate that counts factors (n_m or n_1)."""
        return self.m - 1

    def check_color(self, c: Color, allow_tilde: bool = False) -> None:
        l = self.rank
        if self.family == TYPE_A:
            ok = c.kind == "A" and 1 <= c.i <= self.m <= c.j <= l
        elif c.kind == "t":
            ok = allow_tilde and c.i in (2, l)
        else:
            ok = c.kind in ("b", "u") and 2 <= c.i <= l
        if not ok:
            raise ValueError(f"color {c} is not valid for {self}")

    def color_key(self, c: Color) -> tuple:
        """Sort key realising the strict linear order on (extended) colors."""
        if self.family == TYPE_A:
            # (ij) < (i'j') iff i > i', or i == i' and j < j'
            return (-c.i, c.j)
        l = self.rank
        # b2 < ... < bl < tl < ul < ... < u2 < t2, on a doubled integer scale
        if c.kind == "b":
            return (2 * c.i,)
        if c.kind == "u":
            return (2 * (2 * l + 1 - c.i),)
        if c.i == l:
            return (2 * l + 1,)
        return (4 * l - 1,)

    def weight(self, c: Color) -> WeightVec:
        return color_weight(self, c)

    def zero_weight(self) -> WeightVec:
        return (0,) * self.rank


def color_weight(spec: AlgebraSpec, c: Color) -> WeightVec:
    spec.check_color(c)
    l = spec.rank
    n = [0] * l
    if spec.family == TYPE_A:
        for t in range(c.i, c.j + 1):
            n[t - 1] = 1
        return tuple(n)
    k = c.i
    if c.kind == "b":
        for t in range(1, k):
            n[t - 1] = 1
        return tuple(n)
    # unbarred
    if k == l:
        for t in range(1, l - 1):
            n[t - 1] = 1
        n[l - 1] = 1
    elif k == l - 1:
        for t in range(1, l + 1):
            n[t - 1] = 1
    else:
        for t in range(1, l + 1):
            n[t - 1] = 1 if t < k or t >= l - 1 else 2
    return tuple(n)


def color_less(spec: AlgebraSpec, a: Color, b: Color) -> bool:
    return spec.color_key(a) < spec.color_key(b)


def energy(spec: AlgebraSpec, cprime: Color, c: Color) -> int:
    """E(cprime, c): the minimal gap r_{t+1} - r_t when cprime follows c."""
    if spec.family == TYPE_A:
        return theta(c.i - cprime.i) + theta(cprime.j - c.j)
    l = spec.rank
    if cprime == barred(2) and c == unbarred(2):
        return 0
    if cprime == unbarred(l) and c == barred(l):
        return 1
    return 1 if color_less(spec, cprime, c) else 2


def energy_table_a(cprime: Color, c: Color) -> int:
    """The three-case form of the type A energy, kept for cross-checking."""
    ip, jp, i, j = cprime.i, cprime.j, c.i, c.j
    if ip > i and jp < j:
        return 0
    if ip <= i and jp >= j:
        return 2
    return 1


def add_weights(a: WeightVec, b: WeightVec) -> WeightVec:
    return tuple(x + y for x, y in zip(a, b))


def sub_weights(a: WeightVec, b: WeightVec) -> WeightVec:
    return tuple(x - y for x, y in zip(a, b))


def parse_weight(text: str) -> WeightVec:
    return tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")


def format_weight(n: WeightVec) -> str:
    return ",".join(str(x) for x in n)


def is_chain(n: WeightVec, m: int) -> bool:
    """0 <= n_1 <= ... <= n_m >= ... >= n_l >= 0."""
    if any(x < 0 for x in n):
        return False
    up = n[:m]
    down = n[m - 1 :]
    return all(a <= b for a, b in zip(up, up[1:])) and all(
        a >= b for a, b in zip(down, down[1:])
    )


class MCoords(NamedTuple):
    m2: int
    m3: int
    m4: int
    m0: int
    mprime: int
    mdblprime: int


def d_underline_coords(n: WeightVec) -> tuple[list[int], int]:
    """Coefficients of a D_l weight on b2..bl and on 0 = b_k + u_k.

    Returns ([m_b2, ..., m_bl], m_0).
    """
    l = len(n)
    m0 = n[l - 1]
    mb = [0] * (l + 1)  # index k for color b_k
    mb[l] = n[l - 2] - n[l - 1]
    mb[l - 1] = n[l - 3] - n[l - 2] - n[l - 1]
    for k in range(2, l - 1):
        mb[k] = n[k - 2] - n[k - 1]
    return mb[2:], m0


def weight_to_mcoords(n: WeightVec) -> MCoords:
    if len(n) != 4:
        raise ValueError("m-coordinates are defined for D4 weights only")
    (m2, m3, m4), m0 = d_underline_coords(n)
    mprime = -theta(-m2) * m2 - theta(-m4) * m4
    mdbl = -theta(-m3) * m3
    return MCoords(m2, m3, m4, m0, mprime, mdbl)


ZERO_UNDERLINE_D4 = (2, 2, 1, 1)


def alpha_split(n: WeightVec, i: int) -> tuple[WeightVec, WeightVec]:
    """The D4 weight pair (alpha_i', alpha_i'') used by the combination sum."""
    mc = weight_to_mcoords(n)
    top = mc.m0 - mc.mprime - mc.mdblprime
    if not 0 <= i <= top:
        raise ValueError(f"index {i} outside 0..{top}")
    s = i + mc.mprime
    n1, n2, n3, n4 = n
    a1 = (n1 - n2 + n3 - n4 + 2 * s, n3 - n4 + 2 * s, n3 - n4 + s, s)
    return a1, sub_weights(n, a1)


def realizable(spec: AlgebraSpec, n: WeightVec) -> bool:
    """True iff n is a nonnegative integer combination of colors."""
    if len(n) != spec.rank:
        raise ValueError(f"weight {n} has wrong length for {spec}")
    if spec.family == TYPE_A:
        return is_chain(n, spec.m)
    mb, m0 = d_underline_coords(n)
    return m0 >= sum(max(0, -x) for x in mb)


def d4_inequalities(n: WeightVec) -> bool:
    n1, n2, n3, n4 = n
    return (
        n1 - n2 + n4 >= 0
        and n1 - n2 + n3 >= 0
        and n2 - n3 >= 0
        and n1 - n3 >= 0
        and n3 >= 0
        and n2 - n4 >= 0
        and n4 >= 0
        and n1 - n4 >= 0
    )
