"""Explicit lower-bound constructions, emitted as verified certificates.

Every constructor returns a ConstructionReport whose system has been checked
end to end: the system invariants hold and an exact multicolor search for
the claimed forbidden graph comes back empty. Only the Steiner wrapper can
legitimately fail (small cliques do appear for small t); it returns a report
marked unverified with the violating witness instead of raising.
"""

import itertools
from dataclasses import dataclass

from .budget import default_budget
from .errors import ParameterError, ResourceError
from .graphs import (
    Graph,
    as_clique,
    chromatic_number,
    clique,
    maximum_independent_set,
    path,
    require_pattern,
    star,
    turan_graph,
)
from .solver import greedy_pack, max_packing
from .systems import CopySystem, find_multicolor


@dataclass(frozen=True)
class ConstructionReport:
    """A constructed system plus what it certifies.

    validity "exact" means the emitted copy count is the construction's full
    promise at this size; "large-n-only" marks instances below a padding
    threshold (or, for the Steiner wrapper, a clique size the system cannot
    exclude) where the closed form is only guaranteed for larger parameters.
    """

    system: CopySystem
    claimed_forbidden: Graph
    copy_count: int
    validity: str
    method: str
    verified: bool = True
    violation: object = None


def _report(system, forbidden, validity, method):
    violation = system.verify()
    if violation is not None:
        raise RuntimeError(f"internal error: {method} built a broken system: {violation}")
    witness = find_multicolor(system, forbidden)
    if witness is not None:
        raise RuntimeError(
            f"internal error: {method} admits a multicolor forbidden graph"
        )
    return ConstructionReport(
        system=system,
        claimed_forbidden=forbidden,
        copy_count=system.copy_count,
        validity=validity,
        method=method,
    )


def _place(pattern, verts):
    """Edge set of the pattern placed on the given host vertices."""
    out = []
    for u, v in pattern.edges:
        a, b = verts[u], verts[v]
        out.append((a, b) if a < b else (b, a))
    return tuple(sorted(out))


def _is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Blow-up decompositions


def blowup_decomposition(f, m):
    """m^2 transversal f-copies decomposing every edge of the blow-up f[m].

    Vertex (w, x) of the blow-up is w*m + x. Copy (a, b) over Z_m places
    pattern vertex w at (w, a*w + b mod m). For a pattern edge uv the map
    (a, b) -> (endpoint pair) is a bijection onto the m^2 edges between the
    classes of u and v, because u != v and m is prime, so the copies are
    edge-disjoint and cover everything.
    """
    require_pattern(f, "F")
    if not _is_prime(m):
        raise ParameterError(f"m={m} must be prime")
    if m < f.n:
        raise ParameterError(f"m={m} must be at least v(F)={f.n}")
    copies = []
    for a in range(m):
        for b in range(m):
            verts = [w * m + (a * w + b) % m for w in range(f.n)]
            copies.append(_place(f, verts))
    return CopySystem(f.n * m, f, copies)


def blowup_lower_bound(f, g, n):
    """Blow-up construction on n vertices: multicolor-g-free because the
    blow-up of f contains no g at all (requires that no homomorphism g -> f
    exists)."""
    from .graphs import has_homomorphism

    require_pattern(f, "F")
    require_pattern(g, "G")
    if has_homomorphism(g, f):
        raise ParameterError(
            "blow-up construction invalid: a homomorphism from G to F exists"
        )
    m = n // f.n
    while m >= f.n and not _is_prime(m):
        m -= 1
    if m < f.n:
        raise ParameterError(
            f"n={n} too small: no prime m with v(F) <= m and m*v(F) <= n"
        )
    base = blowup_decomposition(f, m)
    system = CopySystem(n, f, base.copies)
    return _report(system, g, "exact", "pattern-blow-up")


# ---------------------------------------------------------------------------
# Turan-graph packing


def _transversal_clique_copies(r, t):
    """t^2 transversal r-cliques decomposing the balanced Turan graph with r
    classes of prime-free size t (r=3 works for every t via the cyclic Latin
    square; r>=4 needs t prime to keep the linear maps invertible)."""
    copies = []
    pattern = clique(r)
    for i in range(t):
        for j in range(t):
            verts = [i, t + j] + [c * t + ((c - 1) * i + j) % t for c in range(2, r)]
            copies.append(_place(pattern, verts))
    return copies


def turan_packing(f, g, n, budget=None):
    """Pack f-copies into the Turan graph with chi(g)-1 classes.

    The union stays inside a (chi(g)-1)-partite graph, which contains no g,
    so the system is multicolor-g-free outright. Uses the algebraic
    transversal decomposition when f is the full clique K_{chi(g)-1} on
    balanced classes (and the class size is prime for 4+ classes), otherwise
    falls back to exact packing on small hosts and greedy packing beyond.
    """
    require_pattern(f, "F")
    require_pattern(g, "G")
    if chromatic_number(f) >= chromatic_number(g):
        raise ParameterError("turan packing needs chi(F) < chi(G)")
    r = chromatic_number(g) - 1
    if n < r:
        raise ParameterError(f"n={n} too small for {r} classes")
    host = turan_graph(n, r)

    copies = None
    if f.n == 2:
        copies = [(e,) for e in host.edges]
    elif as_clique(f) == r and n % r == 0:
        t = n // r
        if r == 3 or (_is_prime(t) and r <= t + 1):
            copies = _transversal_clique_copies(r, t)
    if copies is None:
        if n <= 10:
            copies = max_packing(host, f, budget or default_budget()).witness.copies
        else:
            copies = greedy_pack(host, f).copies
    system = CopySystem(n, f, copies)
    return _report(system, g, "exact", "turan-graph-packing")


# ---------------------------------------------------------------------------
# Star constructions (forbidden K_{1,s})


def _block_lines(offset, v, s):
    """Axis lines of the (s-1)-dimensional coordinate cube over an alphabet
    of size v, as sorted vertex lists. A vertex is offset + sum a_i v^i."""
    lines = []
    for c in range(s - 1):
        others = [p for p in range(s - 1) if p != c]
        for fixed in itertools.product(range(v), repeat=s - 2):
            base = sum(val * v**pos for val, pos in zip(fixed, others))
            lines.append([offset + base + a * v**c for a in range(v)])
    return lines


def star_construction(f, s, n):
    """System with no multicolor K_{1,s}: every vertex lies in at most s-1
    copies.

    At n = v^(s-1) (v = v(F)) each axis line of the coordinate cube hosts
    one copy and every vertex sits on exactly s-1 lines. General n tiles
    disjoint cubes; above the padding threshold n >= v^(2s-2) (s-1) the
    remainder vertices are bridged in (one copy deleted from r(s-1) blocks,
    each leftover vertex joined to freed line vertices, spare vertices
    grouped cross-block), which attains floor(n(s-1)/v) exactly. Below the
    threshold the remainder is dropped and the report says large-n-only.
    """
    require_pattern(f, "F")
    if s < 2:
        raise ParameterError("star construction needs s >= 2")
    if n < f.n:
        raise ParameterError(f"n={n} smaller than v(F)={f.n}")
    v = f.n
    base = v ** (s - 1)
    m, r = divmod(n, base)
    target = n * (s - 1) // v
    copies = []

    if m > 0 and (r == 0 or n < base * v ** (s - 1) * (s - 1)):
        # plain tiling of full blocks, remainder (if any) dropped
        for b in range(m):
            for line in _block_lines(b * base, v, s):
                copies.append(_place(f, line))
    elif m > 0:
        deleted = r * (s - 1)  # one line-copy removed from this many blocks
        freed = []
        for b in range(m):
            lines = _block_lines(b * base, v, s)
            start = 0
            if b < deleted:
                freed.append(lines[0])
                start = 1
            for line in lines[start:]:
                copies.append(_place(f, line))
        leftovers = [m * base + i for i in range(r)]
        for i, x in enumerate(leftovers):
            for j in range(s - 1):
                line = freed[i * (s - 1) + j]
                copies.append(_place(f, sorted(line[: v - 1] + [x])))
        spares = [line[v - 1] for line in freed]
        for gidx in range(deleted // v):
            copies.append(_place(f, sorted(spares[gidx * v : (gidx + 1) * v])))

    system = CopySystem(n, f, copies)
    validity = "exact" if system.copy_count == target else "large-n-only"
    return _report(system, star(s), validity, "star-coordinate")


# ---------------------------------------------------------------------------
# Path-target constructions


def shared_independent_set_construction(f, n):
    """Copies agreeing exactly on one maximum independent set of the pattern;
    the union has no multicolor 4-vertex path. Yields
    floor((n - alpha) / (v - alpha)) copies."""
    require_pattern(f, "F")
    if n < f.n:
        raise ParameterError(f"n={n} smaller than v(F)={f.n}")
    s_verts = sorted(maximum_independent_set(f))
    alpha = len(s_verts)
    rest = [w for w in range(f.n) if w not in set(s_verts)]
    k = (n - alpha) // (f.n - alpha)
    copies = []
    for i in range(k):
        image = [0] * f.n
        for idx, sv in enumerate(s_verts):
            image[sv] = idx
        fresh = alpha + i * (f.n - alpha)
        for idx, wv in enumerate(rest):
            image[wv] = fresh + idx
        copies.append(_place(f, image))
    system = CopySystem(n, f, copies)
    return _report(system, path(4), "exact", "shared-independent-set")


def clique_group_construction(f, t, n, budget=None):
    """Disjoint q-blocks each holding t-2 edge-disjoint pattern copies, with
    q minimal; any path is confined to one block, where only t-2 colors
    exist, too few for the t-1 edges of a t-vertex path."""
    require_pattern(f, "F")
    if t < 3:
        raise ParameterError("clique-group construction needs t >= 3")
    budget = budget or default_budget()
    q = None
    block_copies = None
    for cand in range(max(2, f.n), f.n * (t - 2) + 1):
        result = max_packing(clique(cand), f, budget)
        if not result.optimal:
            raise ResourceError(f"q search exceeded budget at K_{cand}")
        if result.value >= t - 2:
            q = cand
            block_copies = result.witness.copies[: t - 2]
            break
    if q is None:
        raise RuntimeError("internal error: no q found (vertex-disjoint bound broken)")
    copies = []
    for b in range(n // q):
        for copy in block_copies:
            copies.append(tuple(sorted((u + b * q, v + b * q) for u, v in copy)))
    system = CopySystem(n, f, copies)
    return _report(system, path(t), "exact", f"clique-group(q={q})")


# ---------------------------------------------------------------------------
# Steiner triple systems


def _bose_triples(n):
    """n = 6k+3: points Z_{2k+1} x {0,1,2} with the idempotent quasigroup
    x*y = (x+y)/2 mod 2k+1."""
    q = n // 3
    inv2 = (q + 1) // 2
    vid = lambda x, i: 3 * x + i
    triples = []
    for x in range(q):
        triples.append((vid(x, 0), vid(x, 1), vid(x, 2)))
    for x in range(q):
        for y in range(x + 1, q):
            z = ((x + y) * inv2) % q
            for i in range(3):
                triples.append(tuple(sorted((vid(x, i), vid(y, i), vid(z, (i + 1) % 3)))))
    return triples


def _skolem_triples(n):
    """n = 6k+1: points Z_{2k} x {0,1,2} plus one extra point, with the
    half-idempotent quasigroup sigma(x+y), sigma mapping evens to 0..k-1 and
    odds to k..2k-1."""
    k = n // 6
    q = 2 * k
    sigma = [0] * q
    for i in range(k):
        sigma[2 * i] = i
        sigma[2 * i + 1] = k + i
    vid = lambda x, i: 3 * x + i
    inf = n - 1
    triples = []
    for x in range(k):
        triples.append((vid(x, 0), vid(x, 1), vid(x, 2)))
    for x in range(k, q):
        for i in range(3):
            triples.append(tuple(sorted((inf, vid(x, i), vid(x - k, (i + 1) % 3)))))
    for x in range(q):
        for y in range(x + 1, q):
            z = sigma[(x + y) % q]
            for i in range(3):
                triples.append(tuple(sorted((vid(x, i), vid(y, i), vid(z, (i + 1) % 3)))))
    return triples


def sts_construction(n):
    """Steiner triple system on n vertices as a triangle system: n(n-1)/6
    triples covering every vertex pair exactly once. Admissible n only."""
    if n < 1 or n % 6 not in (1, 3):
        raise ParameterError(f"no Steiner triple system on n={n} (need n = 1, 3 mod 6)")
    if n == 1:
        return CopySystem(1, clique(3), [])
    triples = _bose_triples(n) if n % 6 == 3 else _skolem_triples(n)
    copies = sorted(
        tuple(sorted(((a, b), (a, c), (b, c)))) for a, b, c in (sorted(t) for t in triples)
    )
    return CopySystem(n, clique(3), copies)


def sts_lower_bound(n, t):
    """Steiner system as a multicolor-K_t-freeness certificate.

    A multicolor K_t here is exactly a t-set containing no triple, so the
    check succeeds iff the system has no independent t-set. That fails for
    small t (the report comes back unverified with the witness); the full
    n(n-1)/6 bound is only guaranteed for t large relative to n.
    """
    if t < 2:
        raise ParameterError("t >= 2 required")
    system = sts_construction(n)
    forbidden = clique(t)
    witness = find_multicolor(system, forbidden)
    if witness is None:
        return ConstructionReport(
            system=system,
            claimed_forbidden=forbidden,
            copy_count=system.copy_count,
            validity="exact",
            method="steiner-triple-system",
        )
    return ConstructionReport(
        system=system,
        claimed_forbidden=forbidden,
        copy_count=system.copy_count,
        validity="large-n-only",
        method="steiner-triple-system",
        verified=False,
        violation=witness,
    )


# ---------------------------------------------------------------------------
# Progression-free sets and the unique-triangle construction


def _max_ap_free_exact(n):
    """Maximum 3-AP-free subset of {1..n} by exhaustive search.

    Bootstraps a table of maximum sizes for every prefix length: a shifted
    tail [x..n] packs no better than [1..n-x+1], which gives a strong prune.
    Include-first order makes the returned optimum lexicographically least.
    """
    sizes = [0] * (n + 1)
    best_set = []
    for m in range(1, n + 1):
        keep = m == n
        # non-final lengths only need the size; seeding with the previous
        # size keeps their searches tiny
        best = [0 if keep else sizes[m - 1]]
        chosen = []
        member = bytearray(m + 1)
        found = [None]

        def dfs(x):
            if len(chosen) > best[0]:
                best[0] = len(chosen)
                if keep:
                    found[0] = list(chosen)
            if x > m:
                return
            if len(chosen) + sizes[m - x] + 1 <= best[0]:
                return
            ok = True
            for b in chosen:
                a = 2 * b - x
                if a >= 1 and member[a]:
                    ok = False
                    break
            if ok:
                chosen.append(x)
                member[x] = 1
                dfs(x + 1)
                member[x] = 0
                chosen.pop()
            dfs(x + 1)

        dfs(1)
        sizes[m] = best[0]
        if keep:
            best_set = found[0] if found[0] is not None else []
    return tuple(best_set)


def _behrend_set(n):
    """Large 3-AP-free subset of {1..n}: digit vectors of a fixed squared
    length in a base wide enough that adding two members never carries, so
    a progression would force equal vectors on a sphere."""
    best = (1,)
    d = 2
    while 3**d <= 2 * n - 1:
        big = 2 * n - 1
        mbase = int(round(big ** (1.0 / d)))
        while (mbase + 1) ** d <= big:
            mbase += 1
        while mbase**d > big:
            mbase -= 1
        q = (mbase + 1) // 2
        mbase = 2 * q - 1
        if q >= 2:
            buckets = {}
            powers = [mbase**i for i in range(d)]
            for digits in itertools.product(range(q), repeat=d):
                r2 = sum(a * a for a in digits)
                val = 1 + sum(a * p for a, p in zip(digits, powers))
                buckets.setdefault(r2, []).append(val)
            size, r2 = max((len(v), -k) for k, v in buckets.items())
            cand = buckets[-r2]
            if len(cand) > len(best):
                best = tuple(sorted(cand))
        d += 1
    return best


AP_EXACT_LIMIT = 40


def threeAP_free_set(n):
    """A 3-AP-free subset of {1..n}: the exact maximum for n <= 40, a
    Behrend sphere set beyond. Returned as a sorted tuple."""
    if n < 1:
        raise ParameterError("N must be positive")
    if n <= AP_EXACT_LIMIT:
        return _max_ap_free_exact(n)
    return _behrend_set(n)


def ruzsa_szemeredi_construction(k):
    """Edge-disjoint triangles on 6k vertices in which every union edge lies
    in exactly one triangle, hence no multicolor triangle exists.

    Tripartite ground set X (size k), Y (2k), Z (3k); for x in [1..k] and a
    in a 3-AP-free set A of [1..k], the triangle (x, x+a, x+2a) goes across
    X, Y, Z. Any stray triangle of the union would force a nontrivial
    3-term progression in A.
    """
    if k < 1:
        raise ParameterError("k >= 1 required")
    ap_set = threeAP_free_set(k)
    n = 6 * k
    copies = []
    for x in range(1, k + 1):
        for a in ap_set:
            vx = x - 1
            vy = k + (x + a) - 1
            vz = 3 * k + (x + 2 * a) - 1
            copies.append(tuple(sorted(((vx, vy), (vx, vz), (vy, vz)))))
    system = CopySystem(n, clique(3), copies)
    return _report(system, clique(3), "exact", "ruzsa-szemeredi")
