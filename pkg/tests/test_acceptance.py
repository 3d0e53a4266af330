"""End-to-end acceptance suite.

One test per criterion, each printing a single pass line (pytest itself
reports failures); all tolerances are exact, with no floating point in
the assertions.
"""

import itertools
import json
import random
import time
from fractions import Fraction

import pytest

from multituran.cli import main as cli_main
from multituran.constructions import (
    blowup_decomposition,
    blowup_lower_bound,
    ruzsa_szemeredi_construction,
    sts_construction,
    sts_lower_bound,
    threeAP_free_set,
    turan_packing,
)
from multituran.errors import ParameterError
from multituran.graphs import blow_up, clique, cycle, enumerate_copies, path, star
from multituran.hypergraphs import LinearHypergraph, contains_berge, to_copy_system
from multituran.lp import fractional_packing
from multituran.solver import max_packing, multicolor_turan_exact
from multituran.systems import find_multicolor, verify_system
from oracles import exhaustive_multicolor_turan, has_3ap


def _ok(num, message):
    print(f"[acceptance] criterion {num:02d}: PASS - {message}")


def test_criterion_01_star_formula_exactness():
    start = time.time()
    for pattern in (clique(3), path(3)):
        v = pattern.n
        for s in (2, 3):
            formula = lambda n: n * (s - 1) // v
            for n in (v ** (s - 1), 2 * v ** (s - 1)):
                result = multicolor_turan_exact(n, pattern, star(s))
                assert result.optimal
                assert result.value == formula(n), (pattern, s, n, result.value)
            for n in range(2, 10):
                result = multicolor_turan_exact(n, pattern, star(s))
                assert result.optimal
                assert result.value <= formula(n)
    elapsed = time.time() - start
    assert elapsed < 300
    _ok(1, f"star formula exact at base sizes, never exceeded for n<=9 ({elapsed:.1f}s)")


def test_criterion_02_ordinary_turan_reduction():
    for n in range(4, 8):
        result = multicolor_turan_exact(n, clique(2), clique(3))
        assert result.optimal
        assert result.value == n * n // 4
    _ok(2, "single-edge pattern reproduces floor(n^2/4) for n=4..7")


def test_criterion_03_turan_packing_witness():
    report = turan_packing(clique(3), clique(4), 12)
    assert report.copy_count == 16
    assert report.verified
    assert verify_system(report.system) is None
    coefficient = (1 - Fraction(1, 3)) / Fraction(2 * 3)
    assert coefficient * 12 * 12 == Fraction(16)
    _ok(3, "16 verified triangles on 12 vertices match the chromatic coefficient")


def test_criterion_04_blowup_decomposition():
    for pattern in (clique(3), cycle(5), path(3)):
        for m in (3, 5):
            if m < pattern.n:
                with pytest.raises(ParameterError):
                    blowup_decomposition(pattern, m)
                continue
            system = blowup_decomposition(pattern, m)
            assert system.copy_count == m * m
            assert verify_system(system) is None
            counts = {}
            for copy in system.copies:
                for e in copy:
                    counts[e] = counts.get(e, 0) + 1
            assert len(counts) == pattern.edge_count * m * m
            assert all(c == 1 for c in counts.values())
            assert blow_up(pattern, m).edge_count == len(counts)
    report = blowup_lower_bound(cycle(5), clique(3), 25)
    assert report.verified
    assert find_multicolor(report.system, clique(3)) is None
    _ok(4, "blow-up decompositions cover e(F)m^2 edges once; pentagon report is triangle-free")


def test_criterion_05_fractional_identity():
    for pattern in (clique(3), path(3)):
        for m in (2, 3):
            value = fractional_packing(blow_up(pattern, m), pattern).value
            assert value == Fraction(m * m)
    _ok(5, "exact rational LP returns m^2 on blow-ups for F in {K3, P3}, m in {2, 3}")


def test_criterion_06_packing_sanity():
    fano = max_packing(clique(7), clique(3))
    assert fano.value == 7 and fano.optimal
    counts = {}
    for copy in fano.witness.copies:
        for e in copy:
            counts[e] = counts.get(e, 0) + 1
    assert len(counts) == 21 and all(c == 1 for c in counts.values())
    assert max_packing(clique(6), clique(3)).value == 4

    rng = random.Random(2026)
    from multituran.graphs import Graph

    checked = 0
    while checked < 50:
        n = rng.randint(4, 8)
        p = rng.choice((0.3, 0.5, 0.7))
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
        host = Graph(n, edges)
        nu = max_packing(host, clique(3))
        assert nu.optimal
        nu_star = fractional_packing(host, clique(3)).value
        assert Fraction(nu.value) <= nu_star <= Fraction(host.edge_count, 3)
        checked += 1
    _ok(6, "nu(K7)=7 with a decomposition witness, nu(K6)=4, nu<=nu*<=e/3 on 50 hosts")


def test_criterion_07_steiner_systems():
    for n in (7, 9, 13, 15):
        system = sts_construction(n)
        assert system.copy_count == n * (n - 1) // 6
        counts = {}
        for copy in system.copies:
            for e in copy:
                counts[e] = counts.get(e, 0) + 1
        assert set(counts) == set(itertools.combinations(range(n), 2))
        assert all(c == 1 for c in counts.values())
    good = sts_lower_bound(7, 5)
    assert good.verified and find_multicolor(good.system, clique(5)) is None
    bad = sts_lower_bound(7, 4)
    assert not bad.verified and bad.violation is not None
    bad.violation.validate(bad.system)
    _ok(7, "Steiner systems cover each pair once; (7,5) certified, (7,4) correctly invalid")


def test_criterion_08_ruzsa_szemeredi():
    start = time.time()
    for k in range(1, 16):
        ap_set = threeAP_free_set(k)
        assert not has_3ap(ap_set)
        report = ruzsa_szemeredi_construction(k)
        assert report.copy_count == k * len(ap_set)
        assert find_multicolor(report.system, clique(3)) is None
        union = report.system.union_graph()
        triangles = set(enumerate_copies(union, clique(3)))
        assert triangles == set(report.system.copies)
        edge_cover = {}
        for tri in triangles:
            for e in tri:
                edge_cover[e] = edge_cover.get(e, 0) + 1
        assert set(edge_cover) == set(union.edges)
        assert all(c == 1 for c in edge_cover.values())
    elapsed = time.time() - start
    assert elapsed < 60
    _ok(8, f"every union edge lies in exactly one triangle for k<=15 ({elapsed:.1f}s)")


def _random_linear_hypergraph(rng, n):
    candidates = list(itertools.combinations(range(n), 3))
    rng.shuffle(candidates)
    chosen = []
    target = rng.randint(1, 9)
    for cand in candidates:
        if all(len(set(cand) & set(other)) <= 1 for other in chosen):
            chosen.append(cand)
        if len(chosen) >= target:
            break
    return LinearHypergraph(n, 3, chosen)


def test_criterion_09_berge_equivalence():
    rng = random.Random(20260810)
    targets = [clique(3), cycle(4), cycle(5), clique(4)]
    disagreements = 0
    for _ in range(200):
        h = _random_linear_hypergraph(rng, rng.randint(5, 9))
        system = to_copy_system(h)
        for target in targets:
            berge = contains_berge(h, target) is not None
            multicolor = find_multicolor(system, target) is not None
            if berge != multicolor:
                disagreements += 1
    assert disagreements == 0
    _ok(9, "Berge and multicolor detection agree on 200 random linear hypergraphs x 4 targets")


def test_criterion_10_monotonicity_suite():
    value = {}

    def ex(n, f, g):
        key = (n, f, g)
        if key not in value:
            result = multicolor_turan_exact(n, f, g)
            assert result.optimal
            value[key] = result.value
        return value[key]

    k2, k3, k4, p3, p4, c4, s2 = clique(2), clique(3), clique(4), path(3), path(4), cycle(4), star(2)
    checks = 0
    # pattern-monotone: F subgraph of F' lowers the value
    for small, large, g, n in [
        (k2, k3, k3, 6), (k2, p3, k3, 6), (p3, k3, k3, 6), (p3, p4, p4, 6),
        (k2, k3, p4, 5), (p3, k3, s2, 6), (k2, p3, p4, 6),
    ]:
        assert ex(n, large, g) <= ex(n, small, g)
        checks += 1
    # target-monotone: G1 subgraph of G2 raises the value
    for f, g1, g2, n in [
        (k3, s2, p4, 6), (k3, s2, k3, 6), (k3, k3, k4, 6), (p3, s2, p4, 6),
        (k2, k3, k4, 6), (p3, p4, c4, 6), (k2, s2, k3, 5),
    ]:
        assert ex(n, f, g1) <= ex(n, f, g2)
        checks += 1
    # monotone in n
    for f, g, ns in [(k3, k3, (4, 5, 6)), (p3, p4, (4, 5, 6)), (k2, k3, (5, 6)), (p3, k3, (5, 6))]:
        for a, b in zip(ns, ns[1:]):
            assert ex(a, f, g) <= ex(b, f, g)
            checks += 1
    assert checks == 20
    _ok(10, "all 20 sampled monotonicity comparisons hold with optimal values")


def test_criterion_11_oracle_equivalence():
    start = time.time()
    for pattern in (clique(2), clique(3), path(3)):
        for target in (clique(3), star(2), path(4)):
            for n in range(2, 7):
                oracle = exhaustive_multicolor_turan(n, pattern, target)
                result = multicolor_turan_exact(n, pattern, target)
                assert result.optimal
                assert result.value == oracle, (pattern, target, n)
    elapsed = time.time() - start
    assert elapsed < 600
    _ok(11, f"branch and bound equals flat enumeration on all 9 pairs, n<=6 ({elapsed:.1f}s)")


def test_criterion_12_cli_determinism(tmp_path):
    def run_bytes(name, argv):
        out = tmp_path / name
        code = cli_main(argv + ["--out", str(out)])
        assert code == 0
        return out.read_bytes()

    fano = {
        "n": 7,
        "r": 3,
        "edges": [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
    }
    src = tmp_path / "fano.json"
    src.write_text(json.dumps(fano))

    fixed = {
        "exact": ["exact", "--F", "K3", "--G", "star:2", "--n", "7"],
        "construct": ["construct", "rs", "--k", "6"],
        "convert": ["convert", "--input", str(src), "--from", "hypergraph", "--to", "system"],
        "verify": None,  # filled below, needs the construct output
    }
    first = run_bytes("c1", fixed["construct"])
    cert = tmp_path / "cert.json"
    cert.write_bytes(first)
    fixed["verify"] = ["verify", "--certificate", str(cert)]

    for name, argv in fixed.items():
        runs = {run_bytes(f"{name}-{i}", list(argv)) for i in range(2)}
        assert len(runs) == 1, f"{name} output not reproducible"

    table_argv = ["table", "--F", "K3", "--G", "star:2", "--n-from", "3", "--n-to", "9", "--exact"]
    outputs = {
        run_bytes(f"t{w}", ["--workers", w] + table_argv) for w in ("1", "2", "5")
    }
    assert len(outputs) == 1
    _ok(12, "byte-identical CLI output across repeats and worker counts")
