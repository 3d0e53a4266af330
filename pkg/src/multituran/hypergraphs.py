"""Linear uniform hypergraphs and Berge-subgraph detection.

A linear r-uniform hypergraph (hyperedges pairwise sharing at most one
vertex) corresponds exactly to a system of edge-disjoint K_r copies: each
hyperedge spans one clique copy, and conversely each copy's vertex support
is one hyperedge. Under that correspondence a Berge copy of a graph G (a
distinct hyperedge containing the image of each G-edge) is the same thing
as a multicolor G in the clique system, which is what the conversion
functions plus contains_berge let tests confirm witness-by-witness.
"""

from dataclasses import dataclass

from .errors import FormatError, LinearityError, ParameterError
from .graphs import as_clique, clique, require_pattern
from .systems import CopySystem, copy_vertices


class LinearHypergraph:
    """r-uniform hypergraph on 0..n-1 with pairwise intersections <= 1."""

    __slots__ = ("n", "r", "hyperedges")

    def __init__(self, n, r, hyperedges):
        if n < 0:
            raise ParameterError("vertex count must be nonnegative")
        if r < 2:
            raise ParameterError("uniformity r must be >= 2")
        self.n = n
        self.r = r
        normalized = []
        for idx, he in enumerate(hyperedges):
            verts = tuple(sorted(he))
            if len(set(verts)) != self.r or len(verts) != self.r:
                raise ParameterError(
                    f"hyperedge {idx} must have exactly {self.r} distinct vertices"
                )
            if verts[0] < 0 or verts[-1] >= n:
                raise ParameterError(f"hyperedge {idx} out of vertex range")
            normalized.append(verts)
        self.hyperedges = tuple(normalized)
        self._check_linearity()

    def _check_linearity(self):
        for i in range(len(self.hyperedges)):
            a = set(self.hyperedges[i])
            for j in range(i + 1, len(self.hyperedges)):
                if len(a.intersection(self.hyperedges[j])) > 1:
                    raise LinearityError(
                        f"hyperedges {i} and {j} share more than one vertex",
                        pair=(i, j),
                    )

    @property
    def edge_count(self):
        return len(self.hyperedges)

    def to_json_dict(self):
        return {
            "n": self.n,
            "r": self.r,
            "edges": [list(he) for he in self.hyperedges],
        }

    @classmethod
    def from_json_dict(cls, data):
        try:
            n, r, edges = data["n"], data["r"], data["edges"]
        except (TypeError, KeyError) as exc:
            raise FormatError("hypergraph JSON needs 'n', 'r', 'edges'") from exc
        if not isinstance(n, int) or not isinstance(r, int) or not isinstance(edges, list):
            raise FormatError("hypergraph JSON: bad field types")
        try:
            return cls(n, r, [[int(v) for v in he] for he in edges])
        except (ValueError, TypeError, ParameterError) as exc:
            raise FormatError(f"bad hypergraph JSON: {exc}") from exc

    def __eq__(self, other):
        return (
            isinstance(other, LinearHypergraph)
            and (self.n, self.r, self.hyperedges) == (other.n, other.r, other.hyperedges)
        )

    def __hash__(self):
        return hash((self.n, self.r, self.hyperedges))

    def __repr__(self):
        return f"LinearHypergraph(n={self.n}, r={self.r}, edges={self.edge_count})"


def to_copy_system(h):
    """Each hyperedge becomes one K_r copy on its vertex set; linearity makes
    the copies edge-disjoint."""
    pattern = clique(h.r)
    copies = []
    for he in h.hyperedges:
        copies.append(
            tuple((he[i], he[j]) for i in range(h.r) for j in range(i + 1, h.r))
        )
    return CopySystem(h.n, pattern, copies)


def from_copy_system(system):
    """Inverse direction: vertex supports of complete-graph copies are the
    hyperedges. Edge-disjointness of the copies is exactly linearity (two
    copies sharing two vertices would share that edge)."""
    r = as_clique(system.pattern)
    if r is None:
        raise ParameterError("from_copy_system needs a complete-graph pattern")
    return LinearHypergraph(system.n, r, [copy_vertices(c) for c in system.copies])


@dataclass(frozen=True)
class BergeWitness:
    """A Berge copy: core vertex map plus an injective hyperedge assignment."""

    core_map: dict
    edge_assignment: dict

    def validate(self, h, target):
        if len(set(self.core_map.values())) != len(self.core_map):
            raise ParameterError("Berge core map is not injective")
        used = set()
        for pu, pv in target.edges:
            key = (pu, pv) if pu < pv else (pv, pu)
            if key not in self.edge_assignment:
                raise ParameterError(f"missing hyperedge for target edge {key}")
            idx = self.edge_assignment[key]
            if idx in used:
                raise ParameterError(f"hyperedge {idx} assigned twice")
            used.add(idx)
            he = set(h.hyperedges[idx])
            if self.core_map[pu] not in he or self.core_map[pv] not in he:
                raise ParameterError(
                    f"hyperedge {idx} does not contain the image of edge {key}"
                )

    def to_json_dict(self):
        return {
            "core_map": [[pv, hv] for pv, hv in sorted(self.core_map.items())],
            "edge_assignment": [
                [[u, v], idx] for (u, v), idx in sorted(self.edge_assignment.items())
            ],
        }


def _match_edges_to_hyperedges(eligible):
    """Injective assignment of target edges to hyperedges by augmenting paths.

    ``eligible[i]`` lists hyperedge indices usable for target edge i; returns
    the assignment list or None. Deterministic: edges processed in order,
    candidates tried in listed order.
    """
    owner = {}

    def augment(i, banned):
        for he in eligible[i]:
            if he in banned:
                continue
            banned.add(he)
            if he not in owner or augment(owner[he], banned):
                owner[he] = i
                return True
        return False

    for i in range(len(eligible)):
        if not augment(i, set()):
            return None
    assignment = [None] * len(eligible)
    for he, i in owner.items():
        assignment[i] = he
    return assignment


def contains_berge(h, target):
    """First Berge copy of ``target`` in ``h``, or None.

    Backtracks over injective core maps (target vertices into hypergraph
    vertices), pruning a partial map as soon as some mapped target edge has
    no covering hyperedge; each complete core is finished off by an exact
    bipartite matching between target edges and covering hyperedges.
    """
    require_pattern(target, "target")
    if h.edge_count < target.edge_count:
        return None
    pair_cover = {}
    for idx, he in enumerate(h.hyperedges):
        for i in range(h.r):
            for j in range(i + 1, h.r):
                pair_cover.setdefault((he[i], he[j]), []).append(idx)

    order = sorted(range(target.n), key=lambda v: (-target.degree(v), v))
    tadj = target.adjacency_masks
    core = [-1] * target.n
    used = [False] * h.n
    tedges = list(target.edges)

    def mapped_pairs():
        pairs = []
        for u, v in tedges:
            a, b = core[u], core[v]
            pairs.append((a, b) if a < b else (b, a))
        return pairs

    def extend(i):
        if i == target.n:
            eligible = [pair_cover.get(p, ()) for p in mapped_pairs()]
            assignment = _match_edges_to_hyperedges(eligible)
            if assignment is None:
                return None
            return BergeWitness(
                core_map={v: core[v] for v in range(target.n)},
                edge_assignment={
                    tedges[k]: assignment[k] for k in range(len(tedges))
                },
            )
        tv = order[i]
        for hv in range(h.n):
            if used[hv]:
                continue
            ok = True
            mask = tadj[tv]
            while mask:
                low = mask & -mask
                u = low.bit_length() - 1
                mask ^= low
                if core[u] >= 0:
                    key = (hv, core[u]) if hv < core[u] else (core[u], hv)
                    if key not in pair_cover:
                        ok = False
                        break
            if not ok:
                continue
            core[tv] = hv
            used[hv] = True
            found = extend(i + 1)
            used[hv] = False
            core[tv] = -1
            if found is not None:
                return found
        return None

    return extend(0)
