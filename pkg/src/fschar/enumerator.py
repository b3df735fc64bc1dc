"""Brute-force oracle: enumerate monomials satisfying DC and an initial condition.

Nothing here uses the character formulas or bijections; only the color data,
the energy function and the first-color rule of the chosen IC variant.

Monomials are grown from the smallest exponent upwards, t = 1, 2, ..., n,
choosing (g_t, r_t) with r_t >= r_{t-1} + E(g_t, g_{t-1}).  Because every color
pairs to 1 against the minuscule weight, the number of factors n is read off
the weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .colors import AlgebraSpec, Color, WeightVec, color_weight, energy, realizable, sub_weights
from .monomials import ICVariant, Monomial, first_colors, ic_color_subset
from .qseries import QSeries


@dataclass(frozen=True)
class EnumRequest:
    spec: AlgebraSpec
    ic: ICVariant
    weight: WeightVec | None
    qmax: int
    color_subset: frozenset[Color] | None = field(default=None)

    def __post_init__(self):
        if self.qmax < 0:
            raise ValueError("qmax must be nonnegative")
        if self.weight is not None and len(self.weight) != self.spec.rank:
            raise ValueError(f"weight {self.weight} has wrong length for {self.spec}")


class _Alphabet:
    """Colors usable in a request, with precomputed weights and energies."""

    def __init__(self, req: EnumRequest):
        spec = req.spec
        subset = req.color_subset
        ic_sub = ic_color_subset(req.ic)
        if ic_sub is not None:
            subset = ic_sub if subset is None else subset & ic_sub
        self.colors = tuple(c for c in spec.colors if subset is None or c in subset)
        self.weights = tuple(color_weight(spec, c) for c in self.colors)
        self.energy = tuple(
            tuple(energy(spec, c2, c1) for c2 in self.colors) for c1 in self.colors
        )
        allowed = first_colors(spec, req.ic)
        self.first_ok = tuple(allowed is None or c in allowed for c in self.colors)
        self.count_index = spec.count_index


def _fits(rem: WeightVec, w: WeightVec) -> bool:
    return all(a >= b for a, b in zip(rem, w))


def iter_basis(req: EnumRequest, dmax: int | None = None) -> Iterator[Monomial]:
    """Yield every admissible monomial of degree <= dmax (default: qmax).

    With ``req.weight`` set only that weight is produced; with ``weight=None``
    every weight is, in which case ``dmax`` bounds the search.
    """
    dmax = req.qmax if dmax is None else dmax
    alpha = _Alphabet(req)
    spec = req.spec
    target = req.weight
    if target is not None and not realizable(spec, target):
        return
    ncol = len(alpha.colors)
    ci = alpha.count_index

    def rec(prefix: list, rem: WeightVec | None, last: int, last_r: int, deg: int):
        if rem is not None and rem[ci] == 0:
            if not any(rem):
                yield Monomial(spec, tuple((alpha.colors[a], r) for a, r in prefix))
            return
        if rem is None:
            yield Monomial(spec, tuple((alpha.colors[a], r) for a, r in prefix))
        for a in range(ncol):
            w = alpha.weights[a]
            new_rem = None
            if rem is not None:
                if not _fits(rem, w):
                    continue
                new_rem = sub_weights(rem, w)
            if last < 0:
                lo = 1 if alpha.first_ok[a] else 2
            else:
                lo = last_r + alpha.energy[last][a]
            left = 1 if rem is None else rem[ci]
            # the remaining `left` exponents are all >= r
            for r in range(lo, (dmax - deg) // left + 1):
                prefix.append((a, r))
                yield from rec(prefix, new_rem, a, r, deg + r)
                prefix.pop()

    yield from rec([], None if target is None else tuple(target), -1, 0, 0)


def enumerate_basis(req: EnumRequest, dmax: int | None = None) -> list[Monomial]:
    """Admissible monomials of degree <= dmax, sorted by (degree, factor sequence)."""
    spec = req.spec
    out = list(iter_basis(req, dmax))

    def key(x: Monomial):
        return (x.degree(), [(r, spec.color_key(c)) for c, r in reversed(x.factors)])

    out.sort(key=key)
    return out


def degree_histogram(xs, qmax: int) -> QSeries:
    cs = [0] * (qmax + 1)
    for x in xs:
        d = x.degree()
        if d <= qmax:
            cs[d] += 1
    return QSeries(qmax, tuple(cs))


def enumerate_character(req: EnumRequest) -> QSeries:
    """Truncated character sum_{x} q^{d(x)} over admissible x of the given weight.

    Same search as :func:`iter_basis`, with the completion counts of a state
    (previous color, previous exponent, remaining weight) cached, so shared
    suffixes are counted once instead of being walked again.
    """
    if req.weight is None:
        raise ValueError("enumerate_character needs a fixed weight")
    spec = req.spec
    qmax = req.qmax
    target = tuple(req.weight)
    if not realizable(spec, target):
        return QSeries.zero(qmax)
    alpha = _Alphabet(req)
    ncol = len(alpha.colors)
    ci = alpha.count_index

    @lru_cache(maxsize=None)
    def completions(last: int, last_r: int, rem: WeightVec) -> tuple[int, ...]:
        # counts of ways to finish, indexed by the sum of the remaining r's
        out = [0] * (qmax + 1)
        left = rem[ci]
        if left == 0:
            if not any(rem):
                out[0] = 1
            return tuple(out)
        for a in range(ncol):
            w = alpha.weights[a]
            if not _fits(rem, w):
                continue
            new_rem = sub_weights(rem, w)
            if last < 0:
                lo = 1 if alpha.first_ok[a] else 2
            else:
                lo = last_r + alpha.energy[last][a]
            for r in range(lo, qmax // left + 1):
                sub = completions(a, r, new_rem)
                for d in range(qmax + 1 - r):
                    if sub[d]:
                        out[d + r] += sub[d]
        return tuple(out)

    return QSeries(qmax, completions(-1, 0, target))


def oracle_character(
    spec: AlgebraSpec,
    ic: ICVariant,
    weight: WeightVec,
    qmax: int,
    color_subset: frozenset[Color] | None = None,
) -> QSeries:
    """Shorthand for enumerate_character; unrealizable or ill-sized weights give 0."""
    if len(weight) != spec.rank or not realizable(spec, tuple(weight)):
        return QSeries.zero(qmax)
    return enumerate_character(EnumRequest(spec, ic, tuple(weight), qmax, color_subset))
