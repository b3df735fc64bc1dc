"""Characters of Feigin-Stoyanovsky type subspaces for A_l and D_l at level 1.

Closed-form q-series live in :mod:`fschar.char_a` and :mod:`fschar.char_d`;
:mod:`fschar.enumerator` is the brute-force oracle they are checked against.
"""

from .colors import AlgebraSpec, Color, parse_color, parse_weight
from .enumerator import EnumRequest, enumerate_basis, enumerate_character, iter_basis, oracle_character
from .monomials import IC0, ICgamma, ICij, LambdaK, Monomial, Restricted, monomial, parse_ic, parse_monomial
from .qseries import QSeries

__all__ = [
    "AlgebraSpec",
    "Color",
    "EnumRequest",
    "IC0",
    "ICgamma",
    "ICij",
    "LambdaK",
    "Monomial",
    "QSeries",
    "Restricted",
    "enumerate_basis",
    "enumerate_character",
    "iter_basis",
    "monomial",
    "oracle_character",
    "parse_color",
    "parse_ic",
    "parse_monomial",
    "parse_weight",
]
