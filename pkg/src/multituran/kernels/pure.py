"""Pure-Python embedding-search kernel.

This is the fallback twin of the compiled kernel in ``_speedups``. Both
enumerate injective, edge-preserving maps of a small pattern graph into a
mutable host graph. In rainbow mode every host edge carries a color and an
embedding may not map two pattern edges onto equally colored host edges;
this is the primitive behind multicolor-subgraph detection.

The two kernels must stay behaviorally identical: same candidate order
(host vertices by ascending (degree, index), recomputed per search), same
result order, same tie-breaking. Keep any change mirrored in the .pyx file.
"""

from ..errors import ParameterError


class Host:
    """Mutable colored host graph, adjacency kept as per-vertex bitmasks."""

    __slots__ = ("n", "max_colors", "adj", "deg", "color")

    def __init__(self, n, max_colors=1):
        if n < 0:
            raise ParameterError("host size must be nonnegative")
        if max_colors < 1:
            raise ParameterError("max_colors must be >= 1")
        self.n = n
        self.max_colors = max_colors
        self.adj = [0] * n
        self.deg = [0] * n
        self.color = {}

    def add_edge(self, u, v, color=0):
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ParameterError(f"bad edge ({u}, {v})")
        if not (0 <= color < self.max_colors):
            raise ParameterError(f"color {color} out of range")
        key = (u, v) if u < v else (v, u)
        if key in self.color:
            raise ParameterError(f"edge {key} already present")
        self.color[key] = color
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u
        self.deg[u] += 1
        self.deg[v] += 1

    def remove_edge(self, u, v):
        key = (u, v) if u < v else (v, u)
        del self.color[key]
        self.adj[u] &= ~(1 << v)
        self.adj[v] &= ~(1 << u)
        self.deg[u] -= 1
        self.deg[v] -= 1

    def has_edge(self, u, v):
        return (u, v) in self.color or (v, u) in self.color

    def edge_color(self, u, v):
        return self.color[(u, v) if u < v else (v, u)]


def compile_plan(pn, order, parents):
    """Freeze a search plan; this backend just tuples it up."""
    return (pn, tuple(order), tuple(tuple(p) for p in parents))


def search(host, plan, seed_hosts, limit, rainbow):
    """Enumerate embeddings for a compiled plan.

    ``seed_hosts[i]`` pins the pattern vertex at plan position i to a host
    vertex. ``limit <= 0`` means enumerate all. Returns a list of tuples t
    with t[pattern_vertex] = host_vertex, in deterministic search order.
    """
    pn, order, parents = plan
    n = host.n
    adj = host.adj
    colors = host.color
    nseed = len(seed_hosts)

    # Host iteration order: ascending (current degree, index).
    deg = host.deg
    order_all = sorted(range(n), key=lambda w: (deg[w], w))
    rank = [0] * n
    for i, w in enumerate(order_all):
        rank[w] = i

    emb = [-1] * pn            # pattern vertex -> host vertex
    at = [-1] * pn             # plan position -> host vertex
    used = 0
    used_colors = bytearray(host.max_colors) if rainbow else None
    results = []

    def extend(pos):
        nonlocal used
        if pos == pn:
            results.append(tuple(emb))
            return 0 < limit <= len(results)
        par = parents[pos]
        if pos < nseed:
            cands = (seed_hosts[pos],)
            check_adj = True
        elif par:
            mask = ~used
            for j in par:
                mask &= adj[at[j]]
            bits = []
            while mask:
                low = mask & -mask
                bits.append(low.bit_length() - 1)
                mask ^= low
            bits.sort(key=rank.__getitem__)
            cands = bits
            check_adj = False
        else:
            cands = order_all
            check_adj = False
        for h in cands:
            if (used >> h) & 1:
                continue
            if check_adj:
                ok = True
                for j in par:
                    if not (adj[h] >> at[j]) & 1:
                        ok = False
                        break
                if not ok:
                    continue
            marked = None
            if rainbow:
                marked = []
                ok = True
                for j in par:
                    o = at[j]
                    c = colors[(h, o) if h < o else (o, h)]
                    if used_colors[c]:
                        ok = False
                        break
                    used_colors[c] = 1
                    marked.append(c)
                if not ok:
                    for c in marked:
                        used_colors[c] = 0
                    continue
            pv = order[pos]
            emb[pv] = h
            at[pos] = h
            used |= 1 << h
            stop = extend(pos + 1)
            used &= ~(1 << h)
            at[pos] = -1
            emb[pv] = -1
            if rainbow:
                for c in marked:
                    used_colors[c] = 0
            if stop:
                return True
        return False

    extend(0)
    return results
