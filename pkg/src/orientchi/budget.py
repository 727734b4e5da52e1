"""Search budgets shared by every exact solver.

``ORIENTCHI_NODE_BUDGET`` overrides the default node limit process-wide.
"""

import os

DEFAULT_NODE_BUDGET = 5_000_000
DEFAULT_ROBUST_VERTEX_LIMIT = 15
DEFAULT_PERFECT_VERTEX_LIMIT = 10


class BudgetExceeded(RuntimeError):
    """An exact search hit its node limit; the instance is too large for exact mode."""


def node_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("ORIENTCHI_NODE_BUDGET")
    if env:
        return int(env)
    return DEFAULT_NODE_BUDGET
