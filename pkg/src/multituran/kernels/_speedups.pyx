# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled embedding-search kernel.

Behavioral twin of multituran.kernels.pure: identical candidate order,
identical results, identical tie-breaking. Any semantic change must be
mirrored there.
"""

import numpy as np

from ..errors import ParameterError


cdef class Host:
    cdef public int n
    cdef public int max_colors
    cdef unsigned long long[::1] adj      # n * words bitmask rows
    cdef int[::1] deg
    cdef int[::1] color                   # n * n, -1 when absent
    cdef int words
    # scratch reused across search calls (single-threaded usage)
    cdef unsigned long long[::1] used_words
    cdef unsigned char[::1] used_colors
    cdef int[::1] order_all
    cdef int[::1] rank
    cdef int[::1] seed_buf
    cdef dict _scratch                    # pn -> (emb, at, cand, mark) arrays

    def __init__(self, int n, int max_colors=1):
        if n < 0:
            raise ParameterError("host size must be nonnegative")
        if max_colors < 1:
            raise ParameterError("max_colors must be >= 1")
        self.n = n
        self.max_colors = max_colors
        self.words = (n + 63) >> 6 if n else 1
        self.adj = np.zeros(n * self.words if n else 1, dtype=np.uint64)
        self.deg = np.zeros(n if n else 1, dtype=np.int32)
        self.color = np.full(n * n if n else 1, -1, dtype=np.int32)
        self.used_words = np.zeros(self.words, dtype=np.uint64)
        self.used_colors = np.zeros(max(1, max_colors), dtype=np.uint8)
        self.order_all = np.empty(max(1, n), dtype=np.int32)
        self.rank = np.empty(max(1, n), dtype=np.int32)
        self.seed_buf = np.empty(64, dtype=np.int32)
        self._scratch = {}

    def add_edge(self, int u, int v, int color=0):
        if u == v or u < 0 or v < 0 or u >= self.n or v >= self.n:
            raise ParameterError(f"bad edge ({u}, {v})")
        if color < 0 or color >= self.max_colors:
            raise ParameterError(f"color {color} out of range")
        if self.color[u * self.n + v] >= 0:
            key = (u, v) if u < v else (v, u)
            raise ParameterError(f"edge {key} already present")
        self.color[u * self.n + v] = color
        self.color[v * self.n + u] = color
        self.adj[u * self.words + (v >> 6)] |= <unsigned long long> 1 << (v & 63)
        self.adj[v * self.words + (u >> 6)] |= <unsigned long long> 1 << (u & 63)
        self.deg[u] += 1
        self.deg[v] += 1

    def remove_edge(self, int u, int v):
        if u < 0 or v < 0 or u >= self.n or v >= self.n or self.color[u * self.n + v] < 0:
            raise KeyError((u, v) if u < v else (v, u))
        self.color[u * self.n + v] = -1
        self.color[v * self.n + u] = -1
        self.adj[u * self.words + (v >> 6)] &= ~(<unsigned long long> 1 << (v & 63))
        self.adj[v * self.words + (u >> 6)] &= ~(<unsigned long long> 1 << (u & 63))
        self.deg[u] -= 1
        self.deg[v] -= 1

    def has_edge(self, int u, int v):
        if u < 0 or v < 0 or u >= self.n or v >= self.n:
            return False
        return self.color[u * self.n + v] >= 0

    def edge_color(self, int u, int v):
        cdef int c = self.color[u * self.n + v]
        if c < 0:
            raise KeyError((u, v) if u < v else (v, u))
        return c


class Plan:
    __slots__ = ("pn", "order", "pstart", "ppos")

    def __init__(self, pn, order, pstart, ppos):
        self.pn = pn
        self.order = order
        self.pstart = pstart
        self.ppos = ppos


def compile_plan(pn, order, parents):
    flat = []
    pstart = [0]
    for plist in parents:
        flat.extend(plist)
        pstart.append(len(flat))
    return Plan(
        pn,
        np.asarray(order, dtype=np.int32),
        np.asarray(pstart, dtype=np.int32),
        np.asarray(flat if flat else [0], dtype=np.int32),
    )


cdef int _extend(
    int pos,
    int pn,
    int nseed,
    int n,
    int words,
    unsigned long long[::1] adj,
    unsigned long long[::1] used_words,
    int[::1] color,
    unsigned char[::1] used_colors,
    int[::1] order,
    int[::1] pstart,
    int[::1] ppos,
    int[::1] at,
    int[::1] emb,
    int[::1] order_all,
    int[::1] rank,
    int[::1] seed_hosts,
    int[:, ::1] cand_buf,
    int[:, ::1] mark_buf,
    bint rainbow,
    int limit,
    list results,
) except -1:
    cdef int ps, pe, ncand, i, j, w, h, c, k, o, pv, nmark, ci
    cdef unsigned long long m, low
    cdef bint ok, check_adj

    if pos == pn:
        results.append(tuple([emb[i] for i in range(pn)]))
        if 0 < limit <= len(results):
            return 1
        return 0

    ps = pstart[pos]
    pe = pstart[pos + 1]
    ncand = 0
    check_adj = False
    if pos < nseed:
        cand_buf[pos, 0] = seed_hosts[pos]
        ncand = 1
        check_adj = True
    elif pe > ps:
        for w in range(words):
            m = ~used_words[w]
            for j in range(ps, pe):
                m &= adj[at[ppos[j]] * words + w]
            while m:
                low = m & (~m + 1)
                h = (w << 6) + _bit_index(low)
                cand_buf[pos, ncand] = h
                ncand += 1
                m ^= low
        # insertion sort by host rank (ascending degree, then index)
        for i in range(1, ncand):
            h = cand_buf[pos, i]
            j = i - 1
            while j >= 0 and rank[cand_buf[pos, j]] > rank[h]:
                cand_buf[pos, j + 1] = cand_buf[pos, j]
                j -= 1
            cand_buf[pos, j + 1] = h
    else:
        for i in range(n):
            cand_buf[pos, i] = order_all[i]
        ncand = n

    pv = order[pos]
    for ci in range(ncand):
        h = cand_buf[pos, ci]
        if used_words[h >> 6] & (<unsigned long long> 1 << (h & 63)):
            continue
        if check_adj:
            ok = True
            for j in range(ps, pe):
                o = at[ppos[j]]
                if not (adj[h * words + (o >> 6)] >> (o & 63)) & 1:
                    ok = False
                    break
            if not ok:
                continue
        nmark = 0
        if rainbow:
            ok = True
            for j in range(ps, pe):
                o = at[ppos[j]]
                c = color[h * n + o]
                if used_colors[c]:
                    ok = False
                    break
                used_colors[c] = 1
                mark_buf[pos, nmark] = c
                nmark += 1
            if not ok:
                for k in range(nmark):
                    used_colors[mark_buf[pos, k]] = 0
                continue
        emb[pv] = h
        at[pos] = h
        used_words[h >> 6] |= <unsigned long long> 1 << (h & 63)
        k = _extend(
            pos + 1, pn, nseed, n, words, adj, used_words, color, used_colors,
            order, pstart, ppos, at, emb, order_all, rank, seed_hosts,
            cand_buf, mark_buf, rainbow, limit, results,
        )
        used_words[h >> 6] &= ~(<unsigned long long> 1 << (h & 63))
        at[pos] = -1
        emb[pv] = -1
        if rainbow:
            for j in range(nmark):
                used_colors[mark_buf[pos, j]] = 0
        if k:
            return 1
    return 0


cdef inline int _bit_index(unsigned long long low):
    cdef int idx = 0
    while not (low & 1):
        low >>= 1
        idx += 1
    return idx


def search(Host host, plan, seed_hosts, limit, rainbow):
    cdef int pn = plan.pn
    cdef int n = host.n
    cdef int nseed = len(seed_hosts)
    cdef int i, v, d, idx

    cdef int[::1] order_all = host.order_all
    cdef int[::1] rank = host.rank
    # counting pass: ascending (degree, index)
    idx = 0
    for d in range(n):
        for v in range(n):
            if host.deg[v] == d:
                order_all[idx] = v
                rank[v] = idx
                idx += 1
        if idx == n:
            break

    scratch = host._scratch.get(pn)
    if scratch is None:
        scratch = (
            np.full(pn, -1, dtype=np.int32),
            np.full(pn, -1, dtype=np.int32),
            np.empty((pn, max(1, n)), dtype=np.int32),
            np.empty((pn, max(1, pn)), dtype=np.int32),
        )
        host._scratch[pn] = scratch
    cdef int[::1] emb = scratch[0]
    cdef int[::1] at = scratch[1]
    cdef int[:, ::1] cand = scratch[2]
    cdef int[:, ::1] mark = scratch[3]
    cdef int[::1] seeds = host.seed_buf
    for i in range(nseed):
        seeds[i] = seed_hosts[i]

    results = []
    if pn == 0:
        return results
    # the search unwinds its own state, so the reused used_words/used_colors
    # scratch is all-zero again on return, even after an early stop
    _extend(
        0, pn, nseed, n, host.words, host.adj, host.used_words, host.color,
        host.used_colors, plan.order, plan.pstart, plan.ppos, at, emb,
        order_all, rank, seeds, cand, mark,
        bool(rainbow), int(limit), results,
    )
    return results
