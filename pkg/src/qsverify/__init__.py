"""Exact character-table computations for quasi-simple group actions.

Modules:

    cyclo      exact cyclotomic numbers
    permgrp    brute-force permutation groups (an oracle for the tables)
    chartab    character tables, fusions, subgroup catalogs
    repring    tensor, symmetric and exterior powers; invariant tables
    hurwitz    Riemann-Hurwitz signature feasibility
    casecheck  case-by-case elimination reports
    cli        the ``qsverify`` command
"""

__version__ = "0.1.0"

from .cyclo import Cyclotomic, cyc_make, parse_cyclotomic, zeta
from .chartab import CharacterTable, VirtualCharacter, decompose, inner_product, parse_table
from .data import DataStore
from .hurwitz import HurwitzInstance, feasible

__all__ = [
    "__version__",
    "Cyclotomic",
    "cyc_make",
    "parse_cyclotomic",
    "zeta",
    "CharacterTable",
    "VirtualCharacter",
    "decompose",
    "inner_product",
    "parse_table",
    "DataStore",
    "HurwitzInstance",
    "feasible",
]
