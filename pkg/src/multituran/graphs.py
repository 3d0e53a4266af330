"""Simple undirected graphs at desk scale.

Vertices are the integers 0..n-1 and edges are unordered pairs. Everything
here is exact: isomorphism, homomorphism, subgraph enumeration, independence
and chromatic numbers are computed by complete backtracking searches, which
is the right trade-off for the graph sizes this package targets (patterns
with a handful of vertices, hosts with at most a few dozen).
"""

import itertools
import logging
from dataclasses import dataclass

from .budget import default_budget
from .errors import BudgetExhaustedError, FormatError, ParameterError, ResourceError
from .kernels import HostGraph

_LOG = logging.getLogger(__name__)


class Graph:
    """Immutable simple graph on the vertex set {0, ..., n-1}."""

    __slots__ = ("n", "edges", "_edge_set", "_adj")

    def __init__(self, n, edges=()):
        if n < 0:
            raise ParameterError("vertex count must be nonnegative")
        normalized = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            normalized.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(normalized))
        self._edge_set = frozenset(self.edges)
        adj = [0] * n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._adj = tuple(adj)

    @property
    def edge_count(self):
        return len(self.edges)

    def has_edge(self, u, v):
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def degree(self, v):
        return self._adj[v].bit_count()

    def degrees(self):
        return [m.bit_count() for m in self._adj]

    def neighbors(self, v):
        mask = self._adj[v]
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    @property
    def adjacency_masks(self):
        return self._adj

    def isolated_vertices(self):
        return [v for v in range(self.n) if not self._adj[v]]

    def relabel(self, perm):
        """Apply a permutation of the vertex set (perm[v] = new label of v)."""
        if sorted(perm) != list(range(self.n)):
            raise ParameterError("relabel requires a permutation of the vertices")
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def to_json_dict(self):
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges]}

    @classmethod
    def from_json_dict(cls, data):
        try:
            n = data["n"]
            edges = data["edges"]
        except (TypeError, KeyError) as exc:
            raise FormatError("graph JSON needs keys 'n' and 'edges'") from exc
        if not isinstance(n, int) or not isinstance(edges, list):
            raise FormatError("graph JSON: 'n' must be int, 'edges' a list")
        try:
            return cls(n, [(int(u), int(v)) for u, v in edges])
        except (ValueError, TypeError, ParameterError) as exc:
            raise FormatError(f"bad graph JSON: {exc}") from exc

    def __eq__(self, other):
        return (
            isinstance(other, Graph) and self.n == other.n and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


# ---------------------------------------------------------------------------
# Generators


def clique(k):
    if k < 1:
        raise ParameterError("clique needs k >= 1")
    return Graph(k, itertools.combinations(range(k), 2))


def path(k):
    """Path on k vertices (k-1 edges)."""
    if k < 1:
        raise ParameterError("path needs k >= 1")
    return Graph(k, ((i, i + 1) for i in range(k - 1)))


def cycle(k):
    if k < 3:
        raise ParameterError("cycle needs k >= 3")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def star(s):
    """Star K_{1,s}: center 0 with s leaves."""
    if s < 1:
        raise ParameterError("star needs s >= 1")
    return Graph(s + 1, ((0, i) for i in range(1, s + 1)))


def biclique(a, b):
    """Complete bipartite K_{a,b} with classes {0..a-1} and {a..a+b-1}."""
    if a < 1 or b < 1:
        raise ParameterError("biclique needs a, b >= 1")
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def turan_graph(n, m):
    """Complete m-partite graph on n vertices with class sizes differing by <= 1.

    The first n % m classes get the larger size; classes occupy consecutive
    vertex ranges.
    """
    if not (n >= m >= 1):
        raise ParameterError("turan graph needs n >= m >= 1")
    q, r = divmod(n, m)
    sizes = [q + 1] * r + [q] * (m - r)
    bounds = [0]
    for s in sizes:
        bounds.append(bounds[-1] + s)
    classes = [range(bounds[i], bounds[i + 1]) for i in range(m)]
    edges = []
    for i in range(m):
        for j in range(i + 1, m):
            edges.extend((u, v) for u in classes[i] for v in classes[j])
    return Graph(n, edges)


_GENERATORS = {
    "clique": (1, lambda p: clique(p[0])),
    "path": (1, lambda p: path(p[0])),
    "cycle": (1, lambda p: cycle(p[0])),
    "biclique": (2, lambda p: biclique(p[0], p[1])),
    "turan": (2, lambda p: turan_graph(p[0], p[1])),
}


def generate(kind, params):
    """Named generator dispatch: clique/path/cycle/star/biclique/turan."""
    params = list(params)
    if kind == "star":
        # star accepts [s] or the biclique-style [1, s]
        if len(params) == 1:
            return star(params[0])
        if len(params) == 2 and params[0] == 1:
            return star(params[1])
        raise ParameterError("star needs params [s] or [1, s]")
    if kind not in _GENERATORS:
        raise ParameterError(f"unknown graph kind {kind!r}")
    arity, fn = _GENERATORS[kind]
    if len(params) != arity:
        raise ParameterError(f"{kind} needs {arity} parameter(s), got {len(params)}")
    return fn(params)


def blow_up(g, t):
    """t-blow-up g[t]: each vertex becomes a class of t clones, edges between
    classes of adjacent originals. Vertex v's class is {v*t, ..., v*t + t - 1}."""
    if t < 1:
        raise ParameterError("blow-up needs t >= 1")
    edges = []
    for u, v in g.edges:
        for i in range(t):
            for j in range(t):
                edges.append((u * t + i, v * t + j))
    return Graph(g.n * t, edges)


# ---------------------------------------------------------------------------
# Structural predicates


def require_pattern(g, name="graph"):
    """Reject graphs unusable as packing patterns or forbidden targets."""
    if g.edge_count == 0:
        raise ParameterError(f"{name} must have at least one edge")
    if g.isolated_vertices():
        raise ParameterError(f"{name} must have no isolated vertices")


def has_homomorphism(g, f):
    """True iff an edge-preserving (not necessarily injective) map g -> f exists."""
    if g.edge_count == 0 or f.edge_count == 0:
        raise ParameterError("homomorphism test needs nonempty graphs")
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    fadj = f.adjacency_masks
    gadj = g.adjacency_masks
    image = [-1] * g.n

    def extend(i):
        if i == g.n:
            return True
        v = order[i]
        for w in range(f.n):
            ok = True
            mask = gadj[v]
            while mask:
                low = mask & -mask
                u = low.bit_length() - 1
                mask ^= low
                if image[u] >= 0 and not (fadj[w] >> image[u]) & 1:
                    ok = False
                    break
            if ok:
                image[v] = w
                if extend(i + 1):
                    return True
                image[v] = -1
        return False

    return extend(0)


def _host_from_graph(g, max_colors=1):
    host = HostGraph(g.n, max_colors)
    for u, v in g.edges:
        host.add_edge(u, v, 0)
    return host


def embedding_edge_set(pattern, embedding):
    """Image of the pattern's edges under an embedding tuple, as a sorted tuple."""
    out = []
    for u, v in pattern.edges:
        a, b = embedding[u], embedding[v]
        out.append((a, b) if a < b else (b, a))
    return tuple(sorted(out))


def enumerate_copies(host, pattern):
    """Yield every subgraph of host isomorphic to pattern, once, as a sorted
    edge tuple. Copies found via different pattern automorphisms are merged.
    """
    require_pattern(pattern, "pattern")
    if pattern.n > host.n:
        return
    hg = _host_from_graph(host)
    seen = set()
    for emb in hg.search(pattern.n, pattern.edges, limit=0):
        copy = embedding_edge_set(pattern, emb)
        if copy not in seen:
            seen.add(copy)
            yield copy


def count_copies(host, pattern):
    return sum(1 for _ in enumerate_copies(host, pattern))


def has_subgraph(host, pattern):
    """True iff host contains a (not necessarily induced) copy of pattern."""
    require_pattern(pattern, "pattern")
    if pattern.n > host.n:
        return False
    hg = _host_from_graph(host)
    return bool(hg.search(pattern.n, pattern.edges, limit=1))


# ---------------------------------------------------------------------------
# Isomorphism and canonical forms


def _wl_colors(g):
    """Iterated neighborhood refinement; returns a stable coloring of vertices."""
    colors = g.degrees()
    for _ in range(g.n):
        sigs = []
        for v in range(g.n):
            sigs.append((colors[v], tuple(sorted(colors[u] for u in g.neighbors(v)))))
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if new == colors:
            break
        colors = new
    return colors


def is_isomorphic(a, b):
    """Exact isomorphism test by backtracking over color-compatible maps."""
    if a.n != b.n or a.edge_count != b.edge_count:
        return False
    ca, cb = _wl_colors(a), _wl_colors(b)
    if sorted(ca) != sorted(cb):
        return False
    by_color = {}
    for v in range(b.n):
        by_color.setdefault(cb[v], []).append(v)
    order = sorted(range(a.n), key=lambda v: (len(by_color.get(ca[v], ())), -a.degree(v), v))
    image = [-1] * a.n
    used = [False] * b.n
    aadj, badj = a.adjacency_masks, b.adjacency_masks

    def extend(i):
        if i == a.n:
            return True
        v = order[i]
        for w in by_color.get(ca[v], ()):
            if used[w]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if bool((aadj[v] >> u) & 1) != bool((badj[w] >> image[u]) & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                used[w] = False
                image[v] = -1
        return False

    return extend(0)


def automorphism_count(g):
    """Order of the automorphism group, by complete backtracking."""
    colors = _wl_colors(g)
    by_color = {}
    for v in range(g.n):
        by_color.setdefault(colors[v], []).append(v)
    order = sorted(range(g.n), key=lambda v: (len(by_color[colors[v]]), -g.degree(v), v))
    adj = g.adjacency_masks
    image = [-1] * g.n
    used = [False] * g.n
    count = 0

    def extend(i):
        nonlocal count
        if i == g.n:
            count += 1
            return
        v = order[i]
        for w in by_color[colors[v]]:
            if used[w]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if bool((adj[v] >> u) & 1) != bool((adj[w] >> image[u]) & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(i + 1)
                used[w] = False
                image[v] = -1

    extend(0)
    return count


_CANON_PERM_LIMIT = 2_000_000


def canonical_form(g):
    """Canonical bytes label: minimum adjacency bitstring over all vertex
    orders compatible with the refinement classes. Classes keep the search
    far below factorial for everything but highly regular graphs; a guard
    raises ResourceError when the class structure leaves too many orders.
    """
    colors = _wl_colors(g)
    classes = {}
    for v in range(g.n):
        classes.setdefault(colors[v], []).append(v)
    class_items = [classes[c] for c in sorted(classes)]
    total = 1
    for cl in class_items:
        for i in range(2, len(cl) + 1):
            total *= i
        if total > _CANON_PERM_LIMIT:
            raise ResourceError("canonical form: too many candidate orders")
    adj = g.adjacency_masks
    best = None
    for parts in itertools.product(*(itertools.permutations(cl) for cl in class_items)):
        vertex_order = [v for part in parts for v in part]
        bits = 0
        k = 0
        for i in range(g.n):
            vi = vertex_order[i]
            for j in range(i + 1, g.n):
                if (adj[vi] >> vertex_order[j]) & 1:
                    bits |= 1 << k
                k += 1
        if best is None or bits < best:
            best = bits
    nbits = g.n * (g.n - 1) // 2
    payload = (best or 0).to_bytes((nbits + 7) // 8 or 1, "big")
    return bytes([g.n]) + payload


# ---------------------------------------------------------------------------
# Invariants


@dataclass(frozen=True)
class GraphInvariants:
    e: int
    v: int
    alpha: int
    chi: int


def maximum_independent_set(g):
    """A maximum independent set, deterministic (first optimum in search order)."""
    adj = g.adjacency_masks
    best = []

    def extend(cand_mask, chosen):
        nonlocal best
        if len(chosen) + cand_mask.bit_count() <= len(best):
            return
        if not cand_mask:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        v = (cand_mask & -cand_mask).bit_length() - 1
        chosen.append(v)
        extend(cand_mask & ~adj[v] & ~(1 << v), chosen)
        chosen.pop()
        extend(cand_mask & ~(1 << v), chosen)

    extend((1 << g.n) - 1, [])
    return tuple(best)


def independence_number(g):
    return len(maximum_independent_set(g))


def _is_k_colorable(g, k):
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    adj = g.adjacency_masks
    coloring = [-1] * g.n

    def extend(i, used):
        if i == g.n:
            return True
        v = order[i]
        forbidden = 0
        for j in range(i):
            u = order[j]
            if (adj[v] >> u) & 1:
                forbidden |= 1 << coloring[u]
        # new colors are interchangeable: allow at most one fresh color
        limit = min(k, used + 1)
        for c in range(limit):
            if (forbidden >> c) & 1:
                continue
            coloring[v] = c
            if extend(i + 1, max(used, c + 1)):
                return True
            coloring[v] = -1
        return False

    return extend(0, 0)


def chromatic_number(g):
    if g.n == 0:
        return 0
    if g.edge_count == 0:
        return 1
    for k in range(2, g.n + 1):
        if _is_k_colorable(g, k):
            return k
    return g.n


def invariants(g):
    """Exact (e, v, alpha, chi) record."""
    return GraphInvariants(
        e=g.edge_count, v=g.n, alpha=independence_number(g), chi=chromatic_number(g)
    )


# ---------------------------------------------------------------------------
# Exact ordinary Turan numbers


_TURAN_MEMO = {}


def _edge_seeded_plans(hg, pattern):
    """One plan per (pattern edge, orientation), reused across search calls."""
    plans = []
    for p, q in pattern.edges:
        plans.append(hg.plan(pattern.n, pattern.edges, (p, q)))
        plans.append(hg.plan(pattern.n, pattern.edges, (q, p)))
    return plans


def _creates_copy(hg, plans, u, v):
    """Does the host (which already contains edge uv) have a pattern copy
    through uv? Seeded searches over all pattern edges and orientations."""
    seed = [u, v]
    for plan in plans:
        if hg.search_plan(plan, seed, limit=1):
            return True
    return False


def turan_number_exact(n, g, budget=None):
    """Exact ex(n, g) with an extremal witness.

    Max-edge branch and bound: edges of K_n are decided in lexicographic
    order, include-first, pruning when the remaining undecided edges cannot
    beat the incumbent. The incumbent is seeded with the Turan graph on
    chi(g)-1 classes (always g-free) and a greedy g-free graph, so the
    search mostly proves optimality. Raises BudgetExhaustedError with the
    best bounds found when the node budget runs out.
    """
    require_pattern(g, "forbidden graph")
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if g.n > n:
        return n * (n - 1) // 2, clique(max(n, 1)) if n else Graph(0)
    key = (n, canonical_form(g))
    if key in _TURAN_MEMO:
        return _TURAN_MEMO[key]
    budget = budget or default_budget()

    all_edges = list(itertools.combinations(range(n), 2))
    m = len(all_edges)

    seed = turan_graph(n, chromatic_number(g) - 1)
    best = seed.edge_count
    best_edges = list(seed.edges)

    hg = HostGraph(n)
    plans = _edge_seeded_plans(hg, g)
    greedy = []
    for u, v in all_edges:
        hg.add_edge(u, v)
        if _creates_copy(hg, plans, u, v):
            hg.remove_edge(u, v)
        else:
            greedy.append((u, v))
    if len(greedy) > best:
        best = len(greedy)
        best_edges = list(greedy)
    for u, v in greedy:
        hg.remove_edge(u, v)

    nodes = 0
    current = []

    def dfs(i):
        nonlocal nodes, best, best_edges
        nodes += 1
        if nodes > budget.max_nodes:
            raise BudgetExhaustedError(
                f"turan_number_exact({n}): budget of {budget.max_nodes} nodes exhausted",
                best_value=best,
                best_witness=Graph(n, best_edges),
            )
        if nodes % budget.report_interval == 0:
            _LOG.debug("turan-exact(%d): %d nodes, incumbent %d", n, nodes, best)
        if len(current) > best:
            best = len(current)
            best_edges = list(current)
        if i == m or len(current) + (m - i) <= best:
            return
        u, v = all_edges[i]
        hg.add_edge(u, v)
        if _creates_copy(hg, plans, u, v):
            hg.remove_edge(u, v)
        else:
            current.append((u, v))
            dfs(i + 1)
            current.pop()
            hg.remove_edge(u, v)
        dfs(i + 1)

    dfs(0)
    result = (best, Graph(n, best_edges))
    _TURAN_MEMO[key] = result
    return result


# ---------------------------------------------------------------------------
# Shape detection helpers used by the bound catalog and the solver


def as_clique(g):
    """r if g is isomorphic to K_r (no isolated vertices), else None."""
    if g.isolated_vertices():
        return None
    return g.n if g.edge_count == g.n * (g.n - 1) // 2 else None


def as_star(g):
    """s if g is isomorphic to K_{1,s}, else None."""
    if g.n < 2 or g.edge_count != g.n - 1 or g.isolated_vertices():
        return None
    degs = sorted(g.degrees())
    s = g.n - 1
    if degs == [1] * s + [s] or (s == 1 and degs == [1, 1]):
        return s
    return None


def as_path(g):
    """t if g is isomorphic to the path P_t on t vertices, else None."""
    if g.n < 2 or g.edge_count != g.n - 1:
        return None
    return g.n if is_isomorphic(g, path(g.n)) else None
