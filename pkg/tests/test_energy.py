import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specwalk import energy, errors, graphs
from specwalk.operators import OperatorKind, q_form
from specwalk.spectral import decompose_kind


class TestLowerBound:
    @pytest.mark.parametrize("maker, expected", [
        (lambda: graphs.generate("cycle", {"n": 3}, 0), 0.5),
        (lambda: graphs.generate("cycle", {"n": 5}, 0), 1 / 3),
        (lambda: graphs.petersen(), 1 / 3),
    ])
    def test_values(self, maker, expected):
        assert energy.efficiency_lower(maker()) == pytest.approx(expected)

    def test_bipartite_rejected(self, c4):
        with pytest.raises(errors.BipartiteGraph):
            energy.efficiency_lower(c4)

    def test_bipartite_certificate(self, c4):
        f = energy.bipartite_certificate(c4)
        assert f.min() < 0 < f.max()
        objective = q_form(c4, f) / np.abs(f).max() ** 2
        assert objective < 1e-3


class TestUpperBound:
    def test_triangle_known_value(self, triangle):
        # symmetric witness (1, -a, -a) minimizes at a = 1/3, objective 4/3
        est = energy.efficiency_upper(triangle)
        assert est.upper_bound == pytest.approx(4 / 3, abs=1e-9)
        assert est.lower_bound <= est.upper_bound
        f = est.witness
        assert f.min() < 0 < f.max()
        objective = q_form(triangle, f) / np.abs(f).max() ** 2
        assert objective == pytest.approx(est.upper_bound, abs=1e-8)

    def test_triangle_below_eigenvector_candidate(self, triangle):
        dec_Q = decompose_kind(triangle, OperatorKind.SIGNLESS)
        h = dec_Q.eigenbasis[:, 0]
        candidate = q_form(triangle, h) / np.abs(h).max() ** 2
        est = energy.efficiency_upper(triangle)
        assert est.upper_bound <= candidate + 1e-12

    def test_c5_sandwich(self, c5):
        dec_Q = decompose_kind(c5, OperatorKind.SIGNLESS)
        h = dec_Q.eigenbasis[:, 0]
        candidate = q_form(c5, h) / np.abs(h).max() ** 2
        est = energy.efficiency_upper(c5)
        assert 1 / 3 <= est.upper_bound <= candidate + 1e-12

    def test_methods_agree_small(self, triangle, c5):
        for g in (triangle, c5):
            pair, _ = energy.pairwise_upper_bound(g)
            multi, _ = energy.multistart_upper_bound(g)
            assert abs(pair - multi) < 1e-6

    def test_nonbipartite_family_sandwich(self):
        for maker in [
            lambda: graphs.petersen(),
            lambda: graphs.generate("circulant", {"n": 9, "offsets": (1, 2)},
                                    0),
            lambda: graphs.random_connected(10, 8, 4),
        ]:
            g = maker()
            if graphs.bipartiteness(g).is_bipartite:
                continue
            est = energy.efficiency_upper(g, restarts=8)
            assert est.lower_bound <= est.upper_bound + 1e-12


class TestPathEnergy:
    def test_constant_heavy_edge_boundary(self):
        g = graphs.build_graph([(0, 1, 1.0)])
        check = energy.path_energy_bound(g, np.ones(2), [0, 1])
        assert check.holds
        assert check.lhs == pytest.approx(4.0)
        assert check.rhs == pytest.approx(4.0)

    def test_zero_function(self, c5):
        check = energy.path_energy_bound(c5, np.zeros(5), [0, 1, 2])
        assert check.holds and check.lhs == 0.0 and check.rhs == 0.0

    def test_not_a_path(self, c5):
        with pytest.raises(errors.NotAPath):
            energy.path_energy_bound(c5, np.zeros(5), [0, 2])
        with pytest.raises(errors.NotAPath):
            energy.path_energy_bound(c5, np.zeros(5), [0, 1, 0, 1])

    def test_requires_unit_weights(self):
        g = graphs.build_graph([(0, 1, 0.5), (1, 2, 1.0), (0, 2, 1.0)])
        with pytest.raises(errors.PreconditionViolated):
            energy.path_energy_bound(g, np.zeros(3), [0, 1])

    @given(st.integers(min_value=0, max_value=400))
    @settings(max_examples=100, deadline=None)
    def test_random_functions_on_c5(self, seed):
        g = graphs.generate("cycle", {"n": 5}, 0)
        rng = np.random.default_rng(seed)
        f = rng.standard_normal(5)
        start = int(rng.integers(0, 5))
        length = int(rng.integers(1, 5))
        path = [(start + i) % 5 for i in range(length + 1)]
        assert energy.path_energy_bound(g, f, path).holds


class TestSetSelection:
    def test_triangle_center_count(self, triangle):
        dec_Q = decompose_kind(triangle, OperatorKind.SIGNLESS)
        sel = energy.set_selection(triangle, dec_Q, 0.5)
        assert sel.m == 2
        assert len(sel.centers) == 2
        assert sel.average_mass == pytest.approx(2 / 3)

    def test_m_formula(self, small_family):
        for g in small_family:
            if graphs.bipartiteness(g).is_bipartite:
                continue
            dec_Q = decompose_kind(g, OperatorKind.SIGNLESS)
            delta = float(np.median(dec_Q.eigenvalues))
            sel = energy.set_selection(g, dec_Q, delta)
            assert sel.m == int(np.floor(g.n / 2 * sel.average_mass + 1e-9)) + 1

    def test_below_spectrum_raises(self, c5):
        dec_Q = decompose_kind(c5, OperatorKind.SIGNLESS)
        with pytest.raises(errors.EmptySelection):
            energy.set_selection(c5, dec_Q, 0.01)

    def test_bipartite_rejected(self, c4):
        dec_Q = decompose_kind(c4, OperatorKind.SIGNLESS)
        with pytest.raises(errors.PreconditionViolated):
            energy.set_selection(c4, dec_Q, 1.0)

    def test_selection_invariants(self, small_family):
        for g in small_family:
            if graphs.bipartiteness(g).is_bipartite or not g.unweighted:
                continue
            dec_Q = decompose_kind(g, OperatorKind.SIGNLESS)
            for delta in (float(dec_Q.eigenvalues[0]),
                          float(np.median(dec_Q.eigenvalues))):
                sel = energy.set_selection(g, dec_Q, delta)
                assert all(mass <= 4 / 3 + 1e-9
                           for mass in sel.region_masses)
                assert all(mass >= sel.average_mass / 3 - 1e-9
                           for mass in sel.center_masses)
                seen = set()
                for tree in sel.trees:
                    assert not seen & set(tree)
                    seen |= set(tree)
                for tree, e in zip(sel.trees, sel.tree_energies):
                    assert e > sel.average_mass / (250 * len(tree) ** 2) \
                        - 1e-12

    def test_triangle_geometry_by_hand(self, triangle):
        # the level-1/2 eigenspace of the triangle is the complement of
        # the constant vector: Gram entries are 1/2 - 1/6 on the diagonal
        # and -1/6 off it, so squared distances are 1 and squared sums
        # 1/3, both above the region (1/48) and star (1/243) thresholds
        from specwalk.spectral import embedding_gram
        dec_Q = decompose_kind(triangle, OperatorKind.SIGNLESS)
        G = embedding_gram(dec_Q, 0.5)
        assert np.allclose(np.diag(G), 1 / 3, atol=1e-10)
        assert G[0, 1] == pytest.approx(-1 / 6, abs=1e-10)
        sel = energy.set_selection(triangle, dec_Q, 0.5)
        assert all(region == (center,) for center, region
                   in zip(sel.centers, sel.regions))
        assert all(star == () for star in sel.stars)
        assert all(tree == (center,) for center, tree
                   in zip(sel.centers, sel.trees))
        # incident energy of {x}: two edges, each |F_x + F_y|^2 = 1/3
        assert all(e == pytest.approx(2 / 3, abs=1e-10)
                   for e in sel.tree_energies)

    def test_tree_contains_star_and_center(self, petersen):
        dec_Q = decompose_kind(petersen, OperatorKind.SIGNLESS)
        sel = energy.set_selection(petersen, dec_Q,
                                   float(np.median(dec_Q.eigenvalues)))
        for center, star, tree, parity in zip(sel.centers, sel.stars,
                                              sel.trees, sel.tree_parities):
            assert center in tree
            assert set(star) <= set(tree)
            assert parity[center] == 0
            for y in star:
                assert parity[y] == 1


class TestTreeEnergy:
    def test_empty(self, c5):
        dec_Q = decompose_kind(c5, OperatorKind.SIGNLESS)
        assert energy.tree_energy(c5, dec_Q, 1.0, []) == 0.0

    def test_full_vertex_set_is_all_edges(self, triangle):
        dec_Q = decompose_kind(triangle, OperatorKind.SIGNLESS)
        delta = 2.0
        total = energy.tree_energy(triangle, dec_Q, delta, range(3))
        from specwalk.spectral import embedding
        direct = 0.0
        embs = [embedding(dec_Q, delta, x).coordinates for x in range(3)]
        w = triangle.vertex_weight
        for u, v, _ in triangle.edges:
            s = embs[u] + embs[v]
            direct += float(np.dot(w * s, s))
        assert total == pytest.approx(direct, abs=1e-10)

    def test_disjoint_sets_double_count(self, petersen):
        dec_Q = decompose_kind(petersen, OperatorKind.SIGNLESS)
        delta = 1.0
        full = energy.tree_energy(petersen, dec_Q, delta, range(10))
        part1 = energy.tree_energy(petersen, dec_Q, delta, range(5))
        part2 = energy.tree_energy(petersen, dec_Q, delta, range(5, 10))
        assert part1 + part2 <= 2 * full + 1e-10
