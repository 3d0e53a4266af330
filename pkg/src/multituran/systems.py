"""Colored systems of edge-disjoint pattern copies and multicolor detection.

A CopySystem is an ordered list of edge-disjoint copies of one pattern graph
on a common ground set; the position of a copy in the list is its color. The
feasibility question everywhere else in the package is whether such a system
contains a multicolor (rainbow) copy of a target graph: an embedded copy in
the union of the system in which no two edges come from the same pattern
copy.
"""

from dataclasses import dataclass

from .errors import FormatError, ParameterError
from .graphs import Graph, is_isomorphic, require_pattern
from .kernels import HostGraph


def _normalize_copy(edges):
    out = set()
    for e in edges:
        u, v = e
        if u == v:
            raise ParameterError(f"loop edge at {u} in copy")
        key = (u, v) if u < v else (v, u)
        if key in out:
            raise ParameterError(f"duplicate edge {key} in copy")
        out.add(key)
    return tuple(sorted(out))


def copy_vertices(copy_edges):
    """Sorted vertex support of a copy's edge set."""
    verts = set()
    for u, v in copy_edges:
        verts.add(u)
        verts.add(v)
    return tuple(sorted(verts))


@dataclass(frozen=True)
class SystemViolation:
    """First invariant failure found by verify(): which copies and why."""

    kind: str  # "vertex-range" | "not-isomorphic" | "edge-overlap"
    copy_indices: tuple
    detail: str

    def __str__(self):
        return f"{self.kind} at copies {self.copy_indices}: {self.detail}"


class CopySystem:
    """Ordered edge-disjoint copies of ``pattern`` on vertices 0..n-1.

    Construction normalizes edge lists but does not prove the semantic
    invariants; call verify() for that. Vertex overlap between copies is
    allowed; only edges must be disjoint.
    """

    __slots__ = ("n", "pattern", "copies", "_edge_to_copy", "_union", "_profiles")

    def __init__(self, n, pattern, copies):
        if n < 0:
            raise ParameterError("ground set size must be nonnegative")
        require_pattern(pattern, "pattern")
        self.n = n
        self.pattern = pattern
        self.copies = tuple(_normalize_copy(c) for c in copies)
        for idx, copy in enumerate(self.copies):
            for u, v in copy:
                if v >= n:
                    raise ParameterError(
                        f"copy {idx} uses vertex {v} outside ground set of size {n}"
                    )
        self._edge_to_copy = None
        self._union = None
        self._profiles = None

    @property
    def copy_count(self):
        return len(self.copies)

    def verify(self):
        """None if both invariants hold, else the first SystemViolation.

        Checks, in copy order: every copy spans a subgraph isomorphic to the
        pattern; no two copies share an edge.
        """
        seen = {}
        for idx, copy in enumerate(self.copies):
            verts = copy_vertices(copy)
            index = {v: i for i, v in enumerate(verts)}
            spanned = Graph(len(verts), ((index[u], index[v]) for u, v in copy))
            if not is_isomorphic(spanned, self.pattern):
                return SystemViolation(
                    kind="not-isomorphic",
                    copy_indices=(idx,),
                    detail=f"copy {idx} with edges {list(copy)} is not a pattern copy",
                )
            for e in copy:
                if e in seen:
                    return SystemViolation(
                        kind="edge-overlap",
                        copy_indices=(seen[e], idx),
                        detail=f"edge {e} belongs to copies {seen[e]} and {idx}",
                    )
                seen[e] = idx
        return None

    def edge_to_copy(self):
        """Edge -> copy index map; raises if copies overlap (unverified system)."""
        if self._edge_to_copy is None:
            mapping = {}
            for idx, copy in enumerate(self.copies):
                for e in copy:
                    if e in mapping:
                        raise ParameterError(
                            f"system is not edge-disjoint: {e} in copies "
                            f"{mapping[e]} and {idx}"
                        )
                    mapping[e] = idx
            self._edge_to_copy = mapping
        return self._edge_to_copy

    def union_graph(self):
        """Simple graph whose edges are the disjoint union of the copies."""
        if self._union is None:
            self._union = Graph(self.n, self.edge_to_copy().keys())
        return self._union

    def color_profile(self, v):
        """Number of copies whose vertex support contains v."""
        if not (0 <= v < self.n):
            raise ParameterError(f"vertex {v} out of range")
        return self.vertex_profiles()[v]

    def vertex_profiles(self):
        if self._profiles is None:
            prof = [0] * self.n
            for copy in self.copies:
                for v in copy_vertices(copy):
                    prof[v] += 1
            self._profiles = prof
        return self._profiles

    def to_json_dict(self):
        return {
            "n": self.n,
            "pattern": self.pattern.to_json_dict(),
            "copies": [[[u, v] for u, v in copy] for copy in self.copies],
        }

    @classmethod
    def from_json_dict(cls, data):
        try:
            n = data["n"]
            pattern = Graph.from_json_dict(data["pattern"])
            copies = data["copies"]
        except (TypeError, KeyError) as exc:
            raise FormatError("copy-system JSON needs 'n', 'pattern', 'copies'") from exc
        if not isinstance(n, int) or not isinstance(copies, list):
            raise FormatError("copy-system JSON: bad field types")
        try:
            return cls(n, pattern, [[(int(u), int(v)) for u, v in copy] for copy in copies])
        except (ValueError, TypeError, ParameterError) as exc:
            raise FormatError(f"bad copy-system JSON: {exc}") from exc

    def __eq__(self, other):
        return (
            isinstance(other, CopySystem)
            and self.n == other.n
            and self.pattern == other.pattern
            and self.copies == other.copies
        )

    def __hash__(self):
        return hash((self.n, self.pattern, self.copies))

    def __repr__(self):
        return (
            f"CopySystem(n={self.n}, pattern={self.pattern!r}, "
            f"copies={self.copy_count})"
        )


def verify_system(system):
    """Module-level alias for CopySystem.verify()."""
    return system.verify()


def union_graph(system):
    return system.union_graph()


def color_profile(system, v):
    return system.color_profile(v)


@dataclass(frozen=True)
class MulticolorWitness:
    """A multicolor copy of ``target`` inside a system's union graph.

    ``embedding`` maps target vertices to ground vertices; ``edge_colors``
    maps each target edge to the index of the copy supplying its image.
    """

    target: Graph
    embedding: dict
    edge_colors: dict

    def validate(self, system):
        """Check the witness against a system; raises ParameterError if broken."""
        image = self.embedding
        if len(set(image.values())) != len(image):
            raise ParameterError("witness embedding is not injective")
        e2c = system.edge_to_copy()
        seen_colors = set()
        for pu, pv in self.target.edges:
            key = (pu, pv) if pu < pv else (pv, pu)
            if key not in self.edge_colors:
                raise ParameterError(f"witness misses target edge {key}")
            color = self.edge_colors[key]
            a, b = image[pu], image[pv]
            host_edge = (a, b) if a < b else (b, a)
            if e2c.get(host_edge) != color:
                raise ParameterError(
                    f"target edge {key} maps to {host_edge}, not in copy {color}"
                )
            if color in seen_colors:
                raise ParameterError(f"copy {color} supplies two target edges")
            seen_colors.add(color)

    def to_json_dict(self):
        return {
            "target": self.target.to_json_dict(),
            "embedding": [[pv, hv] for pv, hv in sorted(self.embedding.items())],
            "edge_colors": [
                [[u, v], c] for (u, v), c in sorted(self.edge_colors.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, data):
        try:
            target = Graph.from_json_dict(data["target"])
            embedding = {int(pv): int(hv) for pv, hv in data["embedding"]}
            edge_colors = {
                (int(u), int(v)): int(c) for (u, v), c in data["edge_colors"]
            }
        except (TypeError, KeyError, ValueError) as exc:
            raise FormatError(f"bad witness JSON: {exc}") from exc
        return cls(target=target, embedding=embedding, edge_colors=edge_colors)


def system_host(system):
    """Kernel host for a verified system: union edges colored by copy index."""
    host = HostGraph(system.n, max_colors=max(1, system.copy_count))
    for edge, idx in system.edge_to_copy().items():
        host.add_edge(edge[0], edge[1], idx)
    return host


def witness_from_embedding(system, target, emb):
    e2c = system.edge_to_copy()
    embedding = {pv: emb[pv] for pv in range(target.n)}
    edge_colors = {}
    for pu, pv in target.edges:
        a, b = emb[pu], emb[pv]
        edge_colors[(pu, pv)] = e2c[(a, b) if a < b else (b, a)]
    return MulticolorWitness(target=target, embedding=embedding, edge_colors=edge_colors)


def find_multicolor(system, target):
    """First multicolor copy of ``target`` in the system, or None.

    Exact backtracking over embeddings of the target into the union graph,
    pruning as soon as two target edges would reuse a copy. Deterministic:
    target vertices are matched by descending degree, host candidates by
    ascending union-graph degree, so the returned witness is the first one
    in that fixed order.
    """
    require_pattern(target, "target")
    if system.copy_count < target.edge_count:
        return None  # pigeonhole: each copy supplies at most one target edge
    host = system_host(system)
    found = host.search(target.n, target.edges, limit=1, rainbow=True)
    if not found:
        return None
    return witness_from_embedding(system, target, found[0])
