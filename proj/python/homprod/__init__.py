"""Python access to the homprod library.

Matrices are lists of 0/1 rows. Paulis are strings over I, X, Y, Z.
Supports in returned dictionaries are 1-based, as in the CLI JSON.
"""

import json

from . import _core
from ._core import BudgetExceeded, rank

__all__ = [
    "BudgetExceeded",
    "barrier",
    "certify",
    "code_report",
    "diagonalize",
    "product_levels",
    "rank",
    "table1",
]


def product_levels(h, stages=2):
    """Map each level of the single (1) or double (2) product to (size, betti)."""
    return dict(_core.product_levels(h, stages))


def code_report(h, stages=2, max_weight=6, max_evaluations=2e7):
    return json.loads(_core.report_json(h, stages, max_weight, max_evaluations))


def table1(row=None, max_weight=6, max_evaluations=2e7):
    return json.loads(_core.table1_json(row, max_weight, max_evaluations))


def certify(delta, t=None, f="quadratic"):
    """Soundness verdict for a check matrix; t=None means no threshold."""
    return json.loads(_core.certify_json(delta, t, f))


def diagonalize(paulis):
    return json.loads(_core.diagonalize_json(list(paulis)))


def barrier(paulis, sector="x"):
    return json.loads(_core.barrier_json(list(paulis), sector))
