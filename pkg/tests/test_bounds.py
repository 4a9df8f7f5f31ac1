import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specwalk import bounds, errors, graphs
from specwalk.bounds import (Envelope, GraphBundle, certify_growth,
                             check_calculus, cbrt_kernel_integral,
                             envelope_return_integral, delta_grid,
                             sqrt_kernel_integral,
                             step_envelope_direct_integral, t_grid)
from specwalk.operators import OperatorKind
from specwalk.spectral import decompose_kind, reduced_measure


class TestEnvelope:
    def test_linear_closed_form(self):
        env = Envelope.from_function(lambda lam: lam)
        for t in (1, 2, 3, 8, 9):
            expected = (1.0 - (-1.0) ** (t + 1)) / (t + 1)
            assert envelope_return_integral(env, t) == pytest.approx(
                expected, abs=1e-9)

    def test_constant_envelope_is_zero(self):
        env = Envelope(jumps=())
        assert envelope_return_integral(env, 4) == pytest.approx(0.0)

    def test_triangle_reduced_measure(self, triangle):
        dec_L = decompose_kind(triangle, OperatorKind.LAPLACIAN)
        env = Envelope.from_step_measure(reduced_measure(dec_L, 0))
        assert envelope_return_integral(env, 2) == pytest.approx(1 / 6,
                                                                 abs=1e-10)

    def test_non_monotone_rejected(self):
        env = Envelope.from_function(lambda lam: -lam)
        with pytest.raises(errors.NonMonotoneEnvelope):
            envelope_return_integral(env, 2)

    def test_atom_at_zero_rejected(self):
        from specwalk.spectral import StepMeasure
        m = StepMeasure(np.array([0.0, 1.0]), np.array([0.3, 0.7]))
        with pytest.raises(ValueError):
            Envelope.from_step_measure(m)

    @given(st.integers(min_value=0, max_value=10 ** 6))
    @settings(max_examples=20, deadline=None)
    def test_parts_identity_random_steps(self, seed):
        rng = np.random.default_rng(seed)
        k = int(rng.integers(1, 7))
        locs = np.sort(rng.uniform(0.01, 2.0, size=k))
        masses = rng.uniform(0.0, 1.0, size=k)
        env = Envelope(jumps=tuple(zip(locs.tolist(), masses.tolist())))
        t = int(rng.integers(1, 30))
        via_identity = envelope_return_integral(env, t)
        direct = step_envelope_direct_integral(env, t)
        assert via_identity == pytest.approx(direct, abs=1e-8)

    def test_smooth_piece_against_direct_quadrature(self):
        env = Envelope.from_function(lambda lam: math.sqrt(lam), 0.0, 1.0)
        t = 5
        # d(sqrt) = 1/(2 sqrt(l)) dl on [0, 1]
        from scipy import integrate
        direct, _ = integrate.quad(
            lambda lam: (1 - lam) ** t * 0.5 / math.sqrt(lam), 0, 1)
        assert envelope_return_integral(env, t) == pytest.approx(direct,
                                                                 abs=1e-8)


class TestCalculus:
    def test_sqrt_kernel_beta_values(self):
        # exact Beta(1/2, t+1) values for small t
        assert sqrt_kernel_integral(1) == pytest.approx(4 / 3, abs=1e-10)
        assert sqrt_kernel_integral(2) == pytest.approx(16 / 15, abs=1e-10)

    def test_cbrt_kernel_beta_value(self):
        assert cbrt_kernel_integral(1) == pytest.approx(9 / 4, abs=1e-10)

    def test_bounds_hold_on_dyadic_grid(self):
        checks = check_calculus()
        assert len(checks) == 2
        assert all(c.holds for c in checks)
        assert all(c.context["points_checked"] == 13 for c in checks)

    def test_slack_never_exceeded(self):
        for t in (2 ** k for k in range(13)):
            assert sqrt_kernel_integral(t) <= 1.8 / math.sqrt(t) + 1e-6
            lhs = 4000.0 ** (1 / 3) / 3.0 * cbrt_kernel_integral(t)
            assert lhs <= 15.0 / t ** (1 / 3) + 1e-6


class TestGrids:
    def test_delta_grid_contains_atoms(self, petersen):
        dec = decompose_kind(petersen, OperatorKind.SIGNLESS)
        grid = delta_grid(dec, 0.0, 2.0)
        locs, _ = dec.atoms()
        for loc in locs:
            assert np.min(np.abs(grid - loc)) < 1e-12

    def test_open_endpoints(self, petersen):
        dec = decompose_kind(petersen, OperatorKind.SIGNLESS)
        grid = delta_grid(dec, 0.0, 2.0, open_lo=True, open_hi=True)
        assert grid.min() > 0.0 and grid.max() < 2.0

    def test_t_grid(self):
        ts = t_grid(2 ** 14)
        assert set(range(1, 17)) <= set(ts)
        assert 2 ** 14 in ts and 2 ** 10 + 1 in ts
        assert max(ts) <= 2 ** 14

    def test_overrides(self, petersen):
        dec = decompose_kind(petersen, OperatorKind.SIGNLESS)
        try:
            bounds.set_grid_overrides(deltas=[0.123], ts=[7, 9, 2 ** 15])
            assert 0.123 in delta_grid(dec, 0.0, 2.0)
            assert t_grid(2 ** 14) == [7, 9]
        finally:
            bounds.set_grid_overrides()


class TestCheckerPreconditions:
    def test_regular_measure_needs_regular(self, path3):
        with pytest.raises(errors.PreconditionViolated):
            bounds.check_regular_measure(GraphBundle(path3))

    def test_regular_measure_needs_nonbipartite(self):
        g = graphs.generate("cycle", {"n": 6}, 0)
        with pytest.raises(errors.PreconditionViolated):
            bounds.check_regular_measure(GraphBundle(g))

    def test_transitive_rejects_uncertified(self):
        g = graphs.generate("lollipop", {"m": 4, "k": 2}, 0)
        with pytest.raises(errors.NotTransitive):
            bounds.check_transitive(GraphBundle(g))

    def test_transitive_profile_certifies_unflagged(self):
        flagged = graphs.generate("circulant", {"n": 9, "offsets": (1, 2)}, 0)
        unflagged = graphs.build_graph(list(flagged.edges), label="c9copy")
        assert not unflagged.vertex_transitive
        checks = bounds.check_transitive(GraphBundle(unflagged))
        assert checks and all(c.holds for c in checks)

    def test_bipartite_needs_bipartite(self, c5):
        with pytest.raises(errors.PreconditionViolated):
            bounds.check_bipartite(GraphBundle(c5))

    def test_weights_below_one_refused(self):
        g = graphs.build_graph([(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)])
        for checker in (bounds.check_mixing, bounds.check_combinatorial,
                        bounds.check_volume_growth):
            with pytest.raises(errors.PreconditionViolated):
                checker(GraphBundle(g))


class TestCheckerExamples:
    def test_regular_measure_triangle(self, triangle):
        checks = bounds.check_regular_measure(GraphBundle(triangle))
        assert all(c.holds for c in checks)

    def test_regular_return_triangle_examples(self, triangle):
        checks = bounds.check_regular_return(GraphBundle(triangle))
        assert all(c.holds for c in checks)
        # spot values behind the aggregated record
        assert 0.5 - 1 / 3 <= 18 / math.sqrt(2)
        assert abs(0.25 - 1 / 3) <= 9 / math.sqrt(3)

    def test_eigenvalue_ladders_examples(self, triangle, petersen):
        for g in (triangle, petersen):
            checks = bounds.check_eigenvalue_lower(GraphBundle(g))
            assert checks and all(c.holds for c in checks)
        # Petersen k=1 efficiency form: -2/3 >= -1 + 1/(3*30)
        assert -2 / 3 >= -1 + 1 / 90

    def test_relaxation_triangle(self, triangle):
        checks = bounds.check_relaxation_return(GraphBundle(triangle))
        names = {c.name for c in checks}
        assert "relaxation_vs_commute" in names
        assert "typical_set_nonempty" in names
        assert all(c.holds for c in checks)

    def test_relaxation_example_value(self, triangle):
        # p_4 = 3/8 so the even bound at t = 2 reads 1/24 <= 8*2*sqrt(3)/6
        bundle = GraphBundle(triangle)
        from specwalk.walks import return_prob_spectral
        p4 = return_prob_spectral(bundle.dec_P, 0, 4)
        assert p4 == pytest.approx(3 / 8)
        assert p4 - 1 / 3 <= 8 * 2 * math.sqrt(3) / 6

    def test_mixing_triangle(self, triangle):
        checks = bounds.check_mixing(GraphBundle(triangle))
        by_name = {c.name: c for c in checks}
        assert by_name["uniform_mixing_cubic"].lhs == 3.0
        assert by_name["uniform_mixing_cubic"].rhs == 8 * 27
        assert all(c.holds for c in checks if c.asserted)
        # worst relative deviation at t = 2 is 1/2, against 2*2*6/2 = 12
        times = GraphBundle(triangle).times
        assert times.deviations[1] == pytest.approx(0.5)
        assert times.deviations[1] <= 2 * 2 * 6 / 2

    def test_transitive_c9(self):
        g = graphs.generate("cycle", {"n": 9}, 0)
        checks = bounds.check_transitive(GraphBundle(g))
        by_name = {c.name: c for c in checks}
        me = by_name["transitive_min_eigenvalue"]
        assert me.lhs == pytest.approx(1 + math.cos(8 * math.pi / 9),
                                       abs=1e-9)
        assert me.rhs == pytest.approx(math.sin(math.pi / 20) ** 2, abs=1e-12)
        assert all(c.holds for c in checks)

    def test_transitive_c5_explicit_constant(self, c5):
        checks = bounds.check_transitive(GraphBundle(c5), D=1.0, C=2.0)
        by_name = {c.name: c for c in checks}
        even = by_name["transitive_return_even"]
        assert even.holds
        # worst t recorded; the explicit example value at t=4:
        from specwalk.walks import return_prob_spectral
        p4 = return_prob_spectral(GraphBundle(c5).dec_P, 0, 4)
        ct = bounds._transitive_constant(2.0, 2.0, 1.0)
        assert p4 - 0.2 <= 2 * ct / math.sqrt(4)

    def test_transitive_uncertified_constant(self, c5):
        with pytest.raises(errors.UncertifiedGrowth):
            bounds.check_transitive(GraphBundle(c5), D=1.0, C=50.0)

    def test_average_triangle(self, triangle):
        checks = bounds.check_average(GraphBundle(triangle))
        assert all(c.holds for c in checks)
        lam = GraphBundle(triangle).dec_P.eigenvalues
        assert (np.sum(lam ** 2) - 1) / 3 == pytest.approx(1 / 6)
        assert np.sum(np.abs(lam[:-1]) ** 3) / 3 == pytest.approx(1 / 12)
        assert 1 / 12 <= 30 / (9 - 1) ** (1 / 6)

    def test_bipartite_c4_and_cube(self, c4):
        for g in (c4, graphs.generate("hypercube", {"k": 3}, 0)):
            checks = bounds.check_bipartite(GraphBundle(g))
            assert checks and all(c.holds for c in checks)

    def test_combinatorial_triangle(self, triangle):
        bundle = GraphBundle(triangle)
        lam_T = bundle.dec_Theta.eigenvalues
        assert np.allclose(lam_T, [1.0, 1.0, 4.0], atol=1e-9)
        checks = bounds.check_combinatorial(bundle)
        by_name = {c.name: c for c in checks}
        assert by_name["line_graph_spectrum"].holds
        assert all(c.holds for c in checks if c.asserted)
        # K3 line graph is K3 again: spectrum {-1, -1, 2} = {1-2, 1-2, 4-2}

    def test_selection_checker(self, petersen):
        checks = bounds.check_selection(GraphBundle(petersen))
        assert checks and all(c.holds for c in checks)

    def test_counting_checker(self, small_family):
        for g in small_family:
            checks = bounds.check_counting(GraphBundle(g))
            assert checks and all(c.holds for c in checks)


class TestVolumeGrowth:
    def test_checker_on_torus(self):
        g = graphs.generate("grid_torus", {"dims": (5, 5)}, 0)
        checks = bounds.check_volume_growth(GraphBundle(g))
        assert checks and all(c.holds for c in checks)

    def test_certification(self):
        g = graphs.generate("grid_torus", {"dims": (15, 15)}, 0)
        assert certify_growth(g, 1.0, 2.0, r_max=7)
        assert certify_growth(g, 1.0, 2.0)
        assert not certify_growth(g, 500.0, 2.0)

    def test_demo_rows(self):
        g = graphs.generate("grid_torus", {"dims": (15, 15)}, 0)
        rows = bounds.volume_growth_demo(GraphBundle(g), 1.0, 2.0)
        kinds = {row["kind"] for row in rows}
        assert kinds == {"measure", "return"}

    def test_demo_rejects_uncertified(self, triangle):
        with pytest.raises(errors.UncertifiedGrowth):
            bounds.volume_growth_demo(GraphBundle(triangle), 100.0, 3.0)

    def test_reference_constant(self):
        # D = 1, c = 2 plugged into the odd-return constant formula
        D, c = 1.0, 2.0
        C_r = ((D + 1) / (c ** (1 / (D + 1)) * D ** ((D - 1) / (D + 1)))
               * math.gamma(D / (D + 1)))
        assert C_r == pytest.approx(2 * math.gamma(0.5) / math.sqrt(2.0),
                                    rel=1e-12)


class TestGapDemo:
    def test_rows_and_trend(self):
        rows = bounds.spectral_gap_demo(sizes=(8, 16, 32))
        assert [r["n"] for r in rows] == [8, 16, 32]
        # on growing truncations the top gap shrinks below the bottom gap
        assert rows[-1]["gamma_plus"] < rows[-1]["gamma_minus"]


class TestRunCheckers:
    def test_unknown_checker_rejected(self, triangle):
        with pytest.raises(errors.BadSpec):
            bounds.run_checkers([triangle], ["no_such_checker"])

    def test_skips_recorded(self, c4):
        checks, skips = bounds.run_checkers([c4], ["regular_measure"])
        assert not checks
        assert skips and skips[0]["checker"] == "regular_measure"

    def test_small_sample_all_hold(self, small_family):
        checks, _ = bounds.run_checkers(small_family)
        bad = [c for c in checks if c.asserted and not c.holds]
        assert not bad
        assert len(checks) > 100
