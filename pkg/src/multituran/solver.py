"""Exact multicolor Turan numbers and packing numbers.

Both solvers are branch-and-bound searches over the canonical list of
pattern copies (copies sorted by edge set, added in increasing order only).
Feasibility after adding a copy is checked incrementally: a new multicolor
target copy must use at least one edge of the newest pattern copy, so only
embeddings seeded on those edges are searched. Star targets short-circuit
through vertex profiles: a multicolor K_{1,s} exists iff some vertex lies in
s copies.

Node budgets make runs reproducible; witnesses are deterministic (the
lexicographically least optimal system, by copy edge sets).
"""

import itertools
import logging
from dataclasses import dataclass

from .budget import default_budget
from .bounds import ordinary_turan_number
from .errors import ParameterError
from .graphs import as_star, clique, enumerate_copies, require_pattern
from .kernels import HostGraph
from .lp import FractionalPacking, fractional_packing  # noqa: F401  (re-export)
from .systems import CopySystem, copy_vertices, find_multicolor


@dataclass(frozen=True)
class ExactResult:
    """Outcome of an exact search.

    When ``optimal`` is False the budget ran out and ``value`` is only the
    best lower bound found; the witness still verifies.
    """

    value: int
    witness: CopySystem
    optimal: bool
    nodes_explored: int


_LOG = logging.getLogger(__name__)


class _StopSearch(Exception):
    pass


class _BudgetUp(Exception):
    pass


def _tick(state, budget, label):
    state["nodes"] += 1
    nodes = state["nodes"]
    if nodes > budget.max_nodes:
        raise _BudgetUp()
    if nodes % budget.report_interval == 0:
        _LOG.debug("%s: %d nodes, incumbent %d", label, nodes, state["best"])


def _rainbow_plans(host, target):
    plans = []
    for p, q in target.edges:
        plans.append(host.plan(target.n, target.edges, (p, q)))
        plans.append(host.plan(target.n, target.edges, (q, p)))
    return plans


def _creates_rainbow(host, plans, new_edges):
    """Is there a rainbow target embedding using one of the new host edges?"""
    for a, b in new_edges:
        seed = [a, b]
        for plan in plans:
            if host.search_plan(plan, seed, limit=1, rainbow=True):
                return True
    return False


def _upper_cap(n, copies, f, g, budget):
    """Tightest a-priori cap on the number of copies (catalog upper bounds
    plus the edge-disjointness ceiling)."""
    caps = [len(copies), (n * (n - 1) // 2) // f.edge_count]
    s = as_star(g)
    if s is not None:
        caps.append(n * (s - 1) // f.n)
    ordinary = ordinary_turan_number(n, g, budget)
    if ordinary is not None:
        caps.append(ordinary[0])
    return min(caps)


def multicolor_turan_exact(n, f, g, budget=None):
    """Maximum number of edge-disjoint f-copies on n vertices with no
    multicolor g, with an optimal witness system.

    Symmetry breaking: since the host K_n is vertex-transitive, any nonempty
    system can be relabeled so that its least copy is the globally least
    edge set, so the search forces the first chosen copy to canonical index
    0. The search stops as soon as the incumbent matches the a-priori cap.
    """
    require_pattern(f, "F")
    require_pattern(g, "G")
    if n < 0:
        raise ParameterError("n must be nonnegative")
    budget = budget or default_budget()

    if n >= max(2, f.n):
        copies = list(enumerate_copies(clique(n), f))
    else:
        copies = []
    ncopies = len(copies)
    upper = _upper_cap(n, copies, f, g, budget)

    copy_verts = [copy_vertices(c) for c in copies]
    edge_ids = {e: i for i, e in enumerate(itertools.combinations(range(n), 2))}
    copy_masks = [0] * ncopies
    for j, copy in enumerate(copies):
        for e in copy:
            copy_masks[j] |= 1 << edge_ids[e]

    star_s = as_star(g)
    host = None
    rainbow_plans = None
    if star_s is None:
        host = HostGraph(n, max_colors=max(1, ncopies))
        rainbow_plans = _rainbow_plans(host, g)

    ef, vf = f.edge_count, f.n
    profiles = [0] * n
    cap_total = n * (star_s - 1) if star_s is not None else 0

    state = {
        "nodes": 0,
        "best": 0,
        "best_copies": [],
        "used": 0,
        "free": n * (n - 1) // 2,
        "cap": cap_total,
    }
    chosen = []

    def dfs(start):
        _tick(state, budget, "multicolor-turan")
        cur = len(chosen)
        if cur > state["best"]:
            state["best"] = cur
            state["best_copies"] = list(chosen)
            if cur >= upper:
                raise _StopSearch()
        bound = cur + state["free"] // ef
        if star_s is not None:
            bound = min(bound, cur + state["cap"] // vf)
        if bound <= state["best"]:
            return
        if not chosen:
            # forced canonical first copy
            if start > 0:
                return
            candidates = range(0, min(1, ncopies))
        else:
            candidates = range(start, ncopies)
        for j in candidates:
            if cur + (ncopies - j) <= state["best"]:
                break
            if copy_masks[j] & state["used"]:
                continue
            if star_s is not None:
                if any(profiles[v] >= star_s - 1 for v in copy_verts[j]):
                    continue
            else:
                for a, b in copies[j]:
                    host.add_edge(a, b, j)
                if _creates_rainbow(host, rainbow_plans, copies[j]):
                    for a, b in copies[j]:
                        host.remove_edge(a, b)
                    continue
            state["used"] |= copy_masks[j]
            state["free"] -= ef
            for v in copy_verts[j]:
                profiles[v] += 1
            state["cap"] -= vf
            chosen.append(j)
            dfs(j + 1)
            chosen.pop()
            state["cap"] += vf
            for v in copy_verts[j]:
                profiles[v] -= 1
            state["free"] += ef
            state["used"] &= ~copy_masks[j]
            if star_s is None:
                for a, b in copies[j]:
                    host.remove_edge(a, b)

    optimal = True
    try:
        dfs(0)
    except _StopSearch:
        pass
    except _BudgetUp:
        optimal = False

    witness = CopySystem(n, f, [copies[j] for j in state["best_copies"]])
    _check_result(witness, g)
    return ExactResult(
        value=state["best"],
        witness=witness,
        optimal=optimal,
        nodes_explored=state["nodes"],
    )


def _check_result(witness, g):
    violation = witness.verify()
    if violation is not None:
        raise RuntimeError(f"internal error: solver witness broken: {violation}")
    if find_multicolor(witness, g) is not None:
        raise RuntimeError("internal error: solver witness contains a multicolor target")


def max_packing(host_graph, f, budget=None):
    """Maximum edge-disjoint packing of f-copies into a host graph.

    Branch and bound over the canonical copy list with the edge-count
    ceiling e(host)/e(f); stops when the ceiling is met.
    """
    require_pattern(f, "F")
    budget = budget or default_budget()
    copies = list(enumerate_copies(host_graph, f))
    ncopies = len(copies)
    ef = f.edge_count
    upper = min(ncopies, host_graph.edge_count // ef)

    edge_ids = {e: i for i, e in enumerate(host_graph.edges)}
    copy_masks = [0] * ncopies
    for j, copy in enumerate(copies):
        for e in copy:
            copy_masks[j] |= 1 << edge_ids[e]

    state = {"nodes": 0, "best": 0, "best_copies": [], "used": 0, "free": host_graph.edge_count}
    chosen = []

    def dfs(start):
        _tick(state, budget, "max-packing")
        cur = len(chosen)
        if cur > state["best"]:
            state["best"] = cur
            state["best_copies"] = list(chosen)
            if cur >= upper:
                raise _StopSearch()
        if cur + state["free"] // ef <= state["best"]:
            return
        for j in range(start, ncopies):
            if cur + (ncopies - j) <= state["best"]:
                break
            if copy_masks[j] & state["used"]:
                continue
            state["used"] |= copy_masks[j]
            state["free"] -= ef
            chosen.append(j)
            dfs(j + 1)
            chosen.pop()
            state["free"] += ef
            state["used"] &= ~copy_masks[j]

    optimal = True
    try:
        dfs(0)
    except _StopSearch:
        pass
    except _BudgetUp:
        optimal = False

    witness = CopySystem(host_graph.n, f, [copies[j] for j in state["best_copies"]])
    return ExactResult(
        value=state["best"],
        witness=witness,
        optimal=optimal,
        nodes_explored=state["nodes"],
    )


def greedy_pack(host_graph, f):
    """Maximal (not maximum) packing: repeatedly take the canonically least
    copy that is edge-disjoint from everything taken so far.

    One pass suffices: once a copy loses an edge it never becomes available
    again. Guarantees maximality only, no residual-size promise.
    """
    require_pattern(f, "F")
    taken = []
    used = set()
    for copy in enumerate_copies(host_graph, f):
        if any(e in used for e in copy):
            continue
        taken.append(copy)
        used.update(copy)
    return CopySystem(host_graph.n, f, taken)
