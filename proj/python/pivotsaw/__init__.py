"""Self-avoiding walk pivot chains.

Thin wrapper over the compiled ``_core`` extension.
"""

from ._core import (
    SawError,
    __version__,
    conjecture_table,
    count_walks,
    enumerate_walks,
    group_order,
    is_self_avoiding,
    pivot_matrix,
    pivot_move,
    pivot_plus_matrices,
    run_cli,
    sample_chain,
)
from ._core import gmethod

__all__ = [
    "SawError",
    "__version__",
    "conjecture_table",
    "count_walks",
    "enumerate_walks",
    "gmethod",
    "group_order",
    "is_self_avoiding",
    "pivot_matrix",
    "pivot_move",
    "pivot_plus_matrices",
    "run_cli",
    "sample_chain",
]
