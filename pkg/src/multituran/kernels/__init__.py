"""Embedding-search kernels with a compiled core and a pure-Python fallback.

The hot primitive everywhere in this package is "embed a small pattern graph
into a host graph, injectively, optionally with pairwise-distinct edge
colors". A Cython implementation (``_speedups``) is used when available; the
pure-Python twin (``pure``) is selected otherwise. ``MULTITURAN_KERNEL``
forces the choice: ``c``, ``py`` or ``auto`` (default).

Both backends are behaviorally identical; ``benchmarks/bench_backends.py``
compares their speed and the test suite checks output parity.
"""

import os

from ..errors import ParameterError
from . import pure as _pure


def _load_backend():
    choice = os.environ.get("MULTITURAN_KERNEL", "auto")
    if choice not in ("auto", "c", "py"):
        raise ParameterError(f"MULTITURAN_KERNEL must be auto, c or py, got {choice!r}")
    if choice in ("auto", "c"):
        try:
            from . import _speedups

            return "c", _speedups
        except ImportError:
            if choice == "c":
                raise
    return "python", _pure


_BACKEND_NAME, _BACKEND = _load_backend()


def backend_name() -> str:
    """Name of the active kernel backend: "c" or "python"."""
    return _BACKEND_NAME


def _build_plan_arrays(pattern_n, pattern_edges, seed_vertices):
    """Assignment order and parent lists for a pattern.

    Seeded vertices come first (in the given order); the rest follow by
    descending pattern degree, ties by vertex index. parents[i] lists the
    earlier plan positions pattern-adjacent to position i.
    """
    deg = [0] * pattern_n
    adj = [set() for _ in range(pattern_n)]
    for u, v in pattern_edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].add(v)
        adj[v].add(u)
    seeded = list(seed_vertices)
    rest = sorted(
        (v for v in range(pattern_n) if v not in set(seeded)),
        key=lambda v: (-deg[v], v),
    )
    order = seeded + rest
    parents = []
    for i, pv in enumerate(order):
        parents.append([j for j in range(i) if order[j] in adj[pv]])
    return order, parents


_PLAN_CACHE = {}


def _plan_for(pattern_n, pattern_edges, seed_vertices):
    key = (pattern_n, pattern_edges, seed_vertices)
    plan = _PLAN_CACHE.get(key)
    if plan is None:
        order, parents = _build_plan_arrays(pattern_n, pattern_edges, seed_vertices)
        plan = _BACKEND.compile_plan(pattern_n, order, parents)
        _PLAN_CACHE[key] = plan
    return plan


class HostGraph:
    """Mutable colored host for embedding searches, backed by the active kernel."""

    __slots__ = ("n", "_host")

    def __init__(self, n, max_colors=1):
        self.n = n
        self._host = _BACKEND.Host(n, max_colors)

    def add_edge(self, u, v, color=0):
        self._host.add_edge(u, v, color)

    def remove_edge(self, u, v):
        self._host.remove_edge(u, v)

    def has_edge(self, u, v):
        return self._host.has_edge(u, v)

    def edge_color(self, u, v):
        return self._host.edge_color(u, v)

    def search(self, pattern_n, pattern_edges, seeds=(), limit=1, rainbow=False):
        """Embeddings of the pattern into the current host.

        ``pattern_edges`` must be a tuple of (u, v) pairs with u < v, sorted.
        ``seeds`` pins pattern vertices to host vertices, as ((pv, hv), ...).
        ``limit <= 0`` enumerates all embeddings. Each result tuple maps
        pattern vertex -> host vertex.
        """
        if pattern_n < 1:
            raise ParameterError("pattern must have at least one vertex")
        seed_pvs = tuple(pv for pv, _ in seeds)
        if len(set(seed_pvs)) != len(seed_pvs):
            raise ParameterError("duplicate seeded pattern vertex")
        seed_hosts = [hv for _, hv in seeds]
        plan = _plan_for(pattern_n, pattern_edges, seed_pvs)
        return _BACKEND.search(self._host, plan, seed_hosts, limit, rainbow)

    def plan(self, pattern_n, pattern_edges, seed_pvs=()):
        """Pre-resolve a search plan for repeated search_plan calls."""
        return _plan_for(pattern_n, pattern_edges, tuple(seed_pvs))

    def search_plan(self, plan, seed_hosts, limit=1, rainbow=False):
        """Hot path: run a pre-resolved plan, skipping per-call key lookups.

        ``seed_hosts[i]`` pins the plan's i-th seeded pattern vertex.
        """
        return _BACKEND.search(self._host, plan, seed_hosts, limit, rainbow)
