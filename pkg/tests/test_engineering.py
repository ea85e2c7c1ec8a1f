import numpy as np
import pytest

from wolfopt.core import evaluate
from wolfopt.engineering import (
    design_problems,
    gear_train,
    gear_train_spec,
    pressure_vessel,
    pressure_vessel_spec,
    welded_beam,
    welded_beam_spec,
)


class TestGearTrain:
    def test_reported_best_point(self):
        # Direct evaluation at the integer solution reported as best.
        value = float(gear_train(np.array([43.0, 16.0, 19.0, 49.0])))
        assert value == pytest.approx(2.70086e-12, rel=1e-4)

    def test_all_minimum_teeth(self):
        value = float(gear_train(np.array([12.0, 12.0, 12.0, 12.0])))
        assert value == pytest.approx((1.0 / 6.931 - 1.0) ** 2, rel=1e-15)

    def test_driver_swap_symmetry(self):
        a = gear_train(np.array([49.0, 16.0, 19.0, 43.0]))
        b = gear_train(np.array([43.0, 16.0, 19.0, 49.0]))
        assert float(a) == float(b)

    def test_symmetry_and_nonnegativity_on_probes(self):
        rng = np.random.default_rng(0)
        x = rng.uniform(12, 60, size=(500, 4))
        values = gear_train(x)
        assert np.all(values >= 0)
        swapped_14 = x[:, [3, 1, 2, 0]]
        swapped_23 = x[:, [0, 2, 1, 3]]
        np.testing.assert_allclose(gear_train(swapped_14), values, rtol=1e-12)
        np.testing.assert_allclose(gear_train(swapped_23), values, rtol=1e-12)

    def test_problem_rounds_teeth(self):
        spec = gear_train_spec()
        assert evaluate(spec.problem, np.array([43.4, 15.6, 19.2, 48.9])) == float(
            gear_train(np.array([43.0, 16.0, 19.0, 49.0]))
        )


class TestPressureVessel:
    def test_objective_at_classic_point(self):
        f, _ = pressure_vessel(np.array([0.8125, 0.4375, 42.0984, 176.6366]))
        assert float(f) == pytest.approx(6059.7068, rel=1e-6)

    def test_g4_violation(self):
        _, g = pressure_vessel(np.array([1.0, 1.0, 50.0, 250.0]))
        assert g[3] == pytest.approx(10.0)

    def test_printed_g2_variant(self):
        # Without the radius factor, x2 = 0.009 still violates g2 by 0.00054.
        _, g = pressure_vessel(np.array([1.0, 0.009, 50.0, 100.0]), scaled_g2=False)
        assert g[1] == pytest.approx(-0.009 + 0.00954, rel=1e-12)
        assert g[1] > 0

    def test_standard_g2_scales_with_radius(self):
        _, g = pressure_vessel(np.array([1.0, 0.5, 56.0, 100.0]))
        assert g[1] == pytest.approx(-0.5 + 0.00954 * 56.0, rel=1e-12)

    def test_feasible_point_penalty_free(self):
        spec = pressure_vessel_spec()
        x = np.array([1.0, 1.0, 50.0, 150.0])
        f, g = pressure_vessel(x)
        assert np.all(g <= 0)
        assert evaluate(spec.problem, x) == float(f)


class TestWeldedBeam:
    OPTIMUM = np.array([0.20573, 3.470489, 9.036624, 0.20573])

    def test_objective_and_feasibility_at_optimum(self):
        f, g = welded_beam(self.OPTIMUM)
        assert float(f) == pytest.approx(1.7249, abs=5e-4)
        assert np.all(g <= 1e-3)

    def test_active_constraints_at_optimum(self):
        # Shear, bending and buckling all bind at the known optimum.
        _, g = welded_beam(self.OPTIMUM)
        assert abs(g[0]) < 0.1      # tau ~ 13600 psi
        assert abs(g[1]) < 0.1      # sigma ~ 30000 psi
        assert abs(g[4]) < 0.1      # buckling load ~ applied load
        assert abs(g[3]) < 1e-12    # x1 == x4

    def test_min_weld_size_violation(self):
        _, g = welded_beam(np.array([0.1, 3.0, 9.0, 0.2]))
        assert g[5] == pytest.approx(0.025)
        assert g[5] > 0

    def test_hand_computed_cost(self):
        f, _ = welded_beam(np.array([0.2, 3.5, 9.0, 0.21]))
        assert float(f) == pytest.approx(1.74589765, rel=1e-9)
        # Terms: 1.10471*0.04*3.5 = 0.154659; 0.04811*9*0.21*17.5 = 1.591238.
        assert float(f) == pytest.approx(0.1546594 + 1.5912382, abs=1e-6)

    def test_objective_finite_on_box(self):
        rng = np.random.default_rng(1)
        spec = welded_beam_spec()
        x = rng.uniform([0.1, 0.1, 0.1, 0.1], [2.0, 10.0, 10.0, 2.0], size=(2000, 4))
        f, g = welded_beam(x)
        assert np.all(np.isfinite(f)) and np.all(np.isfinite(g))
        fitness = evaluate(spec.problem, x)
        assert np.all(np.isfinite(fitness))

    def test_feasible_points_penalty_free(self):
        spec = welded_beam_spec()
        rng = np.random.default_rng(2)
        x = rng.uniform([0.15, 2.0, 8.0, 0.2], [0.3, 4.0, 10.0, 0.4], size=(300, 4))
        f, g = welded_beam(x)
        feasible = np.all(g <= 0, axis=-1)
        assert feasible.any()
        fitness = evaluate(spec.problem, x[feasible])
        np.testing.assert_array_equal(fitness, f[feasible])


class TestRegistry:
    def test_names_and_metadata(self):
        problems = design_problems()
        assert set(problems) == {"gear-train", "pressure-vessel", "welded-beam"}
        assert problems["gear-train"].reference_best == pytest.approx(2.70086e-12)
        assert problems["pressure-vessel"].reference_best == pytest.approx(6059.87, abs=0.01)
        assert problems["welded-beam"].reference_best == pytest.approx(1.72621)
        for spec in problems.values():
            assert len(spec.variable_names) == spec.problem.dim

    def test_bounds_as_printed(self):
        problems = design_problems()
        gear = problems["gear-train"].problem.bounds
        assert gear.lower[0] == 12.0 and gear.upper[0] == 60.0
        vessel = problems["pressure-vessel"].problem.bounds
        np.testing.assert_array_equal(vessel.lower, [0.0, 0.0, 10.0, 10.0])
        np.testing.assert_array_equal(vessel.upper, [100.0, 100.0, 200.0, 200.0])
        beam = problems["welded-beam"].problem.bounds
        np.testing.assert_array_equal(beam.lower, [0.1, 0.1, 0.1, 0.1])
        np.testing.assert_array_equal(beam.upper, [2.0, 10.0, 10.0, 2.0])
        # The reported best designs (weld length ~3.47) fit these boxes.
        assert beam.contains(np.array([0.20573, 3.470489, 9.036624, 0.20573]))
