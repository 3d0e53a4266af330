"""Work budgets for the exact searches.

Budgets are expressed in explored-node counts, never wall time, so runs are
reproducible. ``MULTITURAN_BUDGET`` overrides the default node limit.
"""
import os
from dataclasses import dataclass

from .errors import ParameterError

DEFAULT_MAX_NODES = 20_000_000
DEFAULT_REPORT_INTERVAL = 1_000_000

_ENV_VAR = "MULTITURAN_BUDGET"


@dataclass(frozen=True)
class SearchBudget:
    """Node budget for a branch-and-bound search.

    ``report_interval`` controls how often a progress hook (if any) fires;
    it does not affect results.
    """

    max_nodes: int = DEFAULT_MAX_NODES
    report_interval: int = DEFAULT_REPORT_INTERVAL

    def __post_init__(self):
        if self.max_nodes <= 0:
            raise ParameterError("max_nodes must be positive")
        if self.report_interval <= 0:
            raise ParameterError("report_interval must be positive")


def default_budget() -> SearchBudget:
    """Budget from the environment, or the built-in default."""
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return SearchBudget()
    try:
        max_nodes = int(raw)
    except ValueError as exc:
        raise ParameterError(f"{_ENV_VAR} must be an integer, got {raw!r}") from exc
    return SearchBudget(max_nodes=max_nodes)
