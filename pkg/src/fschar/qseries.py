"""Truncated power series in q with exact integer coefficients.

A :class:`QSeries` tracks the coefficients of q^0 .. q^order.  Every binary
operation truncates to the smaller of the two operand orders, so a result
never claims more precision than its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class DegenerateDenominator(ValueError):
    """Raised when dividing by a series whose constant term is not +-1."""


@dataclass(frozen=True)
class QSeries:
    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"negative truncation order {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], order: int) -> QSeries:
        """Pad with zeros or cut off so that exactly q^0..q^order are kept."""
        cs = [int(c) for c in coeffs][: order + 1]
        cs.extend([0] * (order + 1 - len(cs)))
        return cls(order, tuple(cs))

    @classmethod
    def zero(cls, order: int) -> QSeries:
        return cls(order, (0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> QSeries:
        return cls.q_power(0, order)

    @classmethod
    def q_power(cls, k: int, order: int, coeff: int = 1) -> QSeries:
        if k < 0:
            raise ValueError(f"negative exponent {k}")
        cs = [0] * (order + 1)
        if k <= order:
            cs[k] = coeff
        return cls(order, tuple(cs))

    def __getitem__(self, d: int) -> int:
        return self.coeffs[d]

    def __add__(self, other: QSeries) -> QSeries:
        return add(self, other)

    def __sub__(self, other: QSeries) -> QSeries:
        return add(self, -other)

    def __neg__(self) -> QSeries:
        return QSeries(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other: QSeries | int) -> QSeries:
        if isinstance(other, int):
            return QSeries(self.order, tuple(other * c for c in self.coeffs))
        return mul(self, other)

    __rmul__ = __mul__

    def truncate(self, order: int) -> QSeries:
        if order > self.order:
            raise ValueError(f"cannot widen order {self.order} to {order}")
        return QSeries(order, self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def agrees(self, other: QSeries, order: int | None = None) -> bool:
        """Coefficientwise equality up to ``order`` (default: the shared order)."""
        top = min(self.order, other.order) if order is None else order
        if top > min(self.order, other.order):
            raise ValueError("comparison order exceeds the tracked coefficients")
        return self.coeffs[: top + 1] == other.coeffs[: top + 1]

    def max_abs_diff(self, other: QSeries) -> int:
        top = min(self.order, other.order)
        return max(abs(a - b) for a, b in zip(self.coeffs[: top + 1], other.coeffs[: top + 1]))

    def __str__(self) -> str:
        terms = []
        for d, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if d == 0 else ("q" if d == 1 else f"q^{d}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(q^{self.order + 1})"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict | str) -> QSeries:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["order"]), tuple(int(c) for c in data["coeffs"]))


def add(a: QSeries, b: QSeries) -> QSeries:
    order = min(a.order, b.order)
    return QSeries(order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def mul(a: QSeries, b: QSeries) -> QSeries:
    order = min(a.order, b.order)
    out = [0] * (order + 1)
    bc = b.coeffs
    for i, x in enumerate(a.coeffs[: order + 1]):
        if not x:
            continue
        for j in range(order + 1 - i):
            y = bc[j]
            if y:
                out[i + j] += x * y
    return QSeries(order, tuple(out))


def monomial_shift(s: QSeries, k: int) -> QSeries:
    """Multiply by q^k, dropping whatever falls past the truncation order."""
    if k < 0:
        raise ValueError(f"negative shift {k}")
    if k > s.order:
        return QSeries.zero(s.order)
    return QSeries(s.order, (0,) * k + s.coeffs[: s.order + 1 - k])


def pochhammer(n: int, order: int) -> QSeries:
    """(q)_n = (1-q)(1-q^2)...(1-q^n), truncated."""
    if n < 0:
        raise ValueError(f"(q)_n needs n >= 0, got {n}")
    cs = [0] * (order + 1)
    cs[0] = 1
    for part in range(1, min(n, order) + 1):
        for d in range(order, part - 1, -1):
            cs[d] -= cs[d - part]
    return QSeries(order, tuple(cs))


def inv_pochhammer(n: int, order: int) -> QSeries:
    """1/(q)_n; the q^d coefficient counts partitions of d into parts <= n."""
    if n < 0:
        raise ValueError(f"1/(q)_n needs n >= 0, got {n}")
    cs = [0] * (order + 1)
    cs[0] = 1
    for part in range(1, min(n, order) + 1):
        for d in range(part, order + 1):
            cs[d] += cs[d - part]
    return QSeries(order, tuple(cs))


def one_minus_q_power(k: int, order: int) -> QSeries:
    """The binomial 1 - q^k (k >= 1)."""
    if k < 1:
        raise ValueError(f"1 - q^k needs k >= 1, got {k}")
    return QSeries.one(order) - QSeries.q_power(k, order)


def divide_unit(a: QSeries, b: QSeries) -> QSeries:
    """Return c with b*c == a up to the shared order.

    The constant coefficient of ``b`` must be +1 or -1; anything else is a
    degenerate denominator that the calling formula has to cancel first.
    """
    b0 = b.coeffs[0]
    if b0 not in (1, -1):
        raise DegenerateDenominator(
            f"denominator constant term is {b0}, not a unit"
        )
    order = min(a.order, b.order)
    bc = b.coeffs
    out = [0] * (order + 1)
    for k in range(order + 1):
        acc = a.coeffs[k]
        for j in range(1, k + 1):
            if bc[j]:
                acc -= bc[j] * out[k - j]
        out[k] = acc * b0
    return QSeries(order, tuple(out))


def product(factors: Sequence[QSeries], order: int) -> QSeries:
    out = QSeries.one(order)
    for f in factors:
        out = mul(out, f)
    return out
