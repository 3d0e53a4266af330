import itertools
import random
from fractions import Fraction

import pytest

from multituran.budget import SearchBudget
from multituran.bounds import bound_catalog
from multituran.errors import ResourceError
from multituran.graphs import Graph, biclique, clique, path, star, turan_graph, turan_number_exact
from multituran.lp import fractional_packing, simplex_maximize
from multituran.solver import greedy_pack, max_packing, multicolor_turan_exact
from multituran.systems import find_multicolor, verify_system
from oracles import exhaustive_multicolor_turan, lp_value_float, naive_max_packing


class TestMulticolorTuranExamples:
    def test_star_target_two_disjoint_triangles(self):
        result = multicolor_turan_exact(6, clique(3), star(2))
        assert result.value == 2 and result.optimal
        assert result.witness.copy_count == 2

    def test_triangle_in_triangle_system_k5(self):
        assert multicolor_turan_exact(5, clique(3), clique(3)).value == 2

    def test_triangle_k6_within_ceiling(self):
        result = multicolor_turan_exact(6, clique(3), clique(3))
        assert 2 <= result.value <= 4
        assert result.value == exhaustive_multicolor_turan(6, clique(3), clique(3))

    def test_k4_holds_one_triangle(self):
        assert multicolor_turan_exact(4, clique(3), clique(3)).value == 1

    def test_single_edge_target_forces_zero(self):
        assert multicolor_turan_exact(5, clique(3), clique(2)).value == 0


class TestOrdinaryTuranReduction:
    @pytest.mark.parametrize("n", range(2, 8))
    def test_single_edge_pattern_is_ordinary_turan(self, n):
        for g in (clique(3), path(4)):
            lhs = multicolor_turan_exact(n, clique(2), g)
            assert lhs.optimal
            assert lhs.value == turan_number_exact(n, g)[0]

    @pytest.mark.parametrize("n", range(4, 8))
    def test_mantel_values(self, n):
        assert multicolor_turan_exact(n, clique(2), clique(3)).value == n * n // 4


class TestOracleEquivalenceSlice:
    # the full n <= 6 sweep runs in the acceptance suite
    @pytest.mark.parametrize("pattern", [clique(2), clique(3), path(3)])
    @pytest.mark.parametrize("target", [clique(3), star(2), path(4)])
    def test_flat_enumeration_matches(self, pattern, target):
        for n in range(2, 6):
            assert (
                multicolor_turan_exact(n, pattern, target).value
                == exhaustive_multicolor_turan(n, pattern, target)
            )

    @pytest.mark.parametrize("pattern", [path(4), Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])])
    def test_four_vertex_patterns_match(self, pattern):
        for n in range(4, 7):
            assert (
                multicolor_turan_exact(n, pattern, clique(3)).value
                == exhaustive_multicolor_turan(n, pattern, clique(3))
            )


class TestResultContracts:
    def test_witness_always_verifies(self):
        cases = [
            (6, clique(3), clique(3)),
            (7, path(3), path(4)),
            (6, path(3), clique(3)),
            (5, clique(2), clique(3)),
        ]
        for n, f, g in cases:
            result = multicolor_turan_exact(n, f, g)
            assert verify_system(result.witness) is None
            assert find_multicolor(result.witness, g) is None
            assert result.witness.copy_count == result.value

    def test_value_within_catalog_bounds(self):
        for n, f, g in [(6, clique(3), star(2)), (6, clique(2), clique(3)), (7, clique(3), path(4))]:
            result = multicolor_turan_exact(n, f, g)
            for record in bound_catalog(n, f, g):
                if "exact" not in record.validity_flags:
                    continue
                if record.side == "upper":
                    assert result.value <= record.value
                elif record.side == "lower":
                    assert result.value >= record.value

    def test_budget_exhaustion_flagged(self):
        result = multicolor_turan_exact(7, path(3), path(4), SearchBudget(max_nodes=3))
        assert not result.optimal
        assert verify_system(result.witness) is None

    def test_deterministic_reruns(self):
        a = multicolor_turan_exact(6, path(3), clique(3))
        b = multicolor_turan_exact(6, path(3), clique(3))
        assert a.value == b.value
        assert a.witness == b.witness
        assert a.nodes_explored == b.nodes_explored


class TestMonotonicity:
    def test_larger_pattern_smaller_value(self):
        # pattern monotone: F subgraph of F' implies value(F') <= value(F)
        for n in (5, 6):
            for small, large in [(clique(2), path(3)), (path(3), clique(3)), (clique(2), clique(3))]:
                assert (
                    multicolor_turan_exact(n, large, clique(3)).value
                    <= multicolor_turan_exact(n, small, clique(3)).value
                )

    def test_target_monotone(self):
        for n in (5, 6):
            for small, large in [(star(2), path(4)), (path(3), clique(3)), (clique(3), clique(4))]:
                assert (
                    multicolor_turan_exact(n, clique(3), small).value
                    <= multicolor_turan_exact(n, clique(3), large).value
                )

    def test_monotone_in_n(self):
        values = [multicolor_turan_exact(n, clique(3), clique(3)).value for n in range(3, 7)]
        assert values == sorted(values)


class TestMaxPacking:
    def test_k4_single_triangle(self):
        assert max_packing(clique(4), clique(3)).value == 1

    def test_k7_fano(self):
        result = max_packing(clique(7), clique(3))
        assert result.value == 7
        union = result.witness.union_graph()
        assert union.edge_count == 21  # decomposes K_7

    def test_k6(self):
        assert max_packing(clique(6), clique(3)).value == 4

    def test_matches_naive_oracle(self):
        rng = random.Random(17)
        for _ in range(15):
            n = rng.randint(4, 7)
            edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.6]
            host = Graph(n, edges)
            for pattern in (clique(3), path(3)):
                assert (
                    max_packing(host, pattern).value
                    == naive_max_packing(n, edges, pattern)
                )


class TestGreedyPack:
    def test_triangle_in_itself(self):
        assert greedy_pack(clique(3), clique(3)).copy_count == 1

    def test_bipartite_has_no_triangle(self):
        assert greedy_pack(biclique(3, 3), clique(3)).copy_count == 0

    def test_k444_at_least_13(self):
        system = greedy_pack(turan_graph(12, 3), clique(3))
        assert system.copy_count >= 13
        assert verify_system(system) is None

    def test_maximality(self):
        rng = random.Random(23)
        from multituran.graphs import enumerate_copies

        for _ in range(10):
            n = rng.randint(4, 7)
            edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.7]
            host = Graph(n, edges)
            system = greedy_pack(host, clique(3))
            used = {e for copy in system.copies for e in copy}
            for copy in enumerate_copies(host, clique(3)):
                assert any(e in used for e in copy)  # nothing else fits


class TestFractionalPacking:
    def test_single_triangle(self):
        assert fractional_packing(clique(3), clique(3)).value == 1

    def test_k4_is_two(self):
        packing = fractional_packing(clique(4), clique(3))
        assert packing.value == Fraction(2)
        # per-edge load never exceeds 1
        load = {}
        for copy, weight in packing.weights.items():
            for e in copy:
                load[e] = load.get(e, 0) + weight
        assert all(total <= 1 for total in load.values())

    @pytest.mark.parametrize("pattern", [clique(3), path(3)])
    @pytest.mark.parametrize("m", [2, 3])
    def test_blowup_identity(self, pattern, m):
        from multituran.graphs import blow_up

        host = blow_up(pattern, m)
        assert fractional_packing(host, pattern).value == Fraction(m * m)

    def test_matches_float_lp(self):
        rng = random.Random(41)
        for _ in range(8):
            n = rng.randint(4, 7)
            edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.65]
            host = Graph(n, edges)
            exact = fractional_packing(host, clique(3)).value
            approx = lp_value_float(host, clique(3))
            assert abs(float(exact) - approx) < 1e-7

    def test_copy_overflow_guard(self):
        with pytest.raises(ResourceError):
            fractional_packing(clique(6), clique(3), max_copies=3)

    def test_sandwich_order(self):
        rng = random.Random(53)
        for _ in range(10):
            n = rng.randint(4, 7)
            edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.6]
            host = Graph(n, edges)
            nu = max_packing(host, clique(3)).value
            nu_star = fractional_packing(host, clique(3)).value
            assert nu <= nu_star <= Fraction(host.edge_count, 3)


class TestSimplex:
    def test_simple_lp(self):
        # max x+y st x <= 1, y <= 1, x+y <= 3/2
        value, x = simplex_maximize(
            2,
            [[1, 0], [0, 1], [1, 1]],
            [1, 1, Fraction(3, 2)],
            [1, 1],
        )
        assert value == Fraction(3, 2)
        assert sum(x) == Fraction(3, 2)

    def test_degenerate_terminates(self):
        value, _ = simplex_maximize(
            3,
            [[1, 1, 0], [1, 0, 1], [0, 1, 1]],
            [1, 1, 1],
            [1, 1, 1],
        )
        assert value == Fraction(3, 2)
