import json

from . import _core
from ._core import (
    BudgetError,
    Hypergraph3,
    InputError,
    PreconditionError,
    certify_cycle,
    complete_hypergraph,
    extremal_example,
    find_tight_ham_cycle,
    is_tight,
    max_matching_size,
    min_degrees,
    random_hypergraph,
)


def solve(h, **options):
    """Run the absorption pipeline; returns the report as a dict."""
    return json.loads(_core._solve_json(h, options))


__all__ = [
    "BudgetError",
    "Hypergraph3",
    "InputError",
    "PreconditionError",
    "certify_cycle",
    "complete_hypergraph",
    "extremal_example",
    "find_tight_ham_cycle",
    "is_tight",
    "max_matching_size",
    "min_degrees",
    "random_hypergraph",
    "solve",
]
