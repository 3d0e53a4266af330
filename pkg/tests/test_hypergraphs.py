import itertools
import random

import pytest

from multituran.errors import LinearityError, ParameterError
from multituran.graphs import clique, cycle, path, star
from multituran.hypergraphs import (
    BergeWitness,
    LinearHypergraph,
    contains_berge,
    from_copy_system,
    to_copy_system,
)
from multituran.systems import CopySystem, find_multicolor, verify_system


@pytest.fixture
def fano(fano_triples):
    return LinearHypergraph(7, 3, fano_triples)


def random_linear_hypergraph(rng, n, r=3, max_edges=8):
    candidates = list(itertools.combinations(range(n), r))
    rng.shuffle(candidates)
    chosen = []
    target = rng.randint(1, max_edges)
    for cand in candidates:
        if all(len(set(cand) & set(other)) <= 1 for other in chosen):
            chosen.append(cand)
        if len(chosen) >= target:
            break
    return LinearHypergraph(n, r, chosen)


class TestLinearity:
    def test_pairwise_intersection_enforced(self):
        with pytest.raises(LinearityError) as err:
            LinearHypergraph(5, 3, [(0, 1, 2), (1, 2, 3)])
        assert err.value.pair == (0, 1)

    def test_uniformity_enforced(self):
        with pytest.raises(ParameterError):
            LinearHypergraph(5, 3, [(0, 1)])
        with pytest.raises(ParameterError):
            LinearHypergraph(5, 3, [(0, 1, 1)])

    def test_fano_is_linear(self, fano):
        assert fano.edge_count == 7


class TestConversions:
    def test_fano_to_system(self, fano):
        system = to_copy_system(fano)
        assert system.copy_count == 7
        assert verify_system(system) is None
        assert system.union_graph().edge_count == 21

    def test_single_hyperedge(self):
        system = to_copy_system(LinearHypergraph(4, 3, [(1, 2, 3)]))
        assert system.copies == (((1, 2), (1, 3), (2, 3)),)

    def test_round_trip_identity(self, fano):
        rng = random.Random(13)
        samples = [fano] + [random_linear_hypergraph(rng, rng.randint(5, 9)) for _ in range(20)]
        for h in samples:
            assert from_copy_system(to_copy_system(h)) == h

    def test_disjoint_triangles_to_triples(self):
        system = CopySystem(
            6, clique(3), [[(0, 1), (0, 2), (1, 2)], [(3, 4), (3, 5), (4, 5)]]
        )
        h = from_copy_system(system)
        assert h.hyperedges == ((0, 1, 2), (3, 4, 5))

    def test_non_clique_pattern_rejected(self):
        system = CopySystem(4, path(3), [[(0, 1), (1, 2)]])
        with pytest.raises(ParameterError):
            from_copy_system(system)

    def test_four_uniform(self):
        h = LinearHypergraph(8, 4, [(0, 1, 2, 3), (0, 4, 5, 6)])
        system = to_copy_system(h)
        assert system.pattern == clique(4)
        assert verify_system(system) is None
        assert from_copy_system(system) == h


class TestContainsBerge:
    def test_cyclic_triples_have_berge_triangle(self):
        h = LinearHypergraph(6, 3, [(0, 1, 2), (2, 3, 4), (4, 5, 0)])
        w = contains_berge(h, clique(3))
        assert w is not None
        w.validate(h, clique(3))
        assert sorted(w.core_map.values()) == [0, 2, 4]

    def test_single_hyperedge_no_berge_path(self):
        h = LinearHypergraph(3, 3, [(0, 1, 2)])
        assert contains_berge(h, path(3)) is None

    def test_fano_c4_matches_multicolor_route(self, fano):
        berge = contains_berge(fano, cycle(4))
        multicolor = find_multicolor(to_copy_system(fano), cycle(4))
        assert (berge is None) == (multicolor is None)
        if berge is not None:
            berge.validate(fano, cycle(4))

    def test_witness_assignment_injective(self, fano):
        w = contains_berge(fano, clique(4))
        assert w is not None
        assert len(set(w.edge_assignment.values())) == 6

    def test_bad_witness_rejected(self, fano):
        w = BergeWitness(core_map={0: 0, 1: 1, 2: 1}, edge_assignment={})
        with pytest.raises(ParameterError):
            w.validate(fano, clique(3))


class TestEquivalence:
    @pytest.mark.parametrize("target", [clique(3), cycle(4), cycle(5), path(4), clique(4)])
    def test_berge_iff_multicolor(self, target):
        rng = random.Random(sum(ord(c) for c in repr(target.edges)))
        for _ in range(40):
            h = random_linear_hypergraph(rng, rng.randint(5, 9))
            system = to_copy_system(h)
            assert (contains_berge(h, target) is not None) == (
                find_multicolor(system, target) is not None
            )

    def test_star_targets_too(self):
        rng = random.Random(77)
        for _ in range(20):
            h = random_linear_hypergraph(rng, rng.randint(5, 9))
            system = to_copy_system(h)
            for s in (2, 3):
                assert (contains_berge(h, star(s)) is not None) == (
                    find_multicolor(system, star(s)) is not None
                )


class TestJson:
    def test_round_trip(self, fano):
        assert LinearHypergraph.from_json_dict(fano.to_json_dict()) == fano
