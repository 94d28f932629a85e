#!/usr/bin/python3
# -*- coding: utf-8 -*-

import unittest
import warnings
from dataclasses import replace

import numpy as np
from numpy.testing import assert_allclose

from spdeint.experiments import (
		LevelPlan, fit_order, strong_error, compare_schemes, hs_norm_squared,
		check_gg_assumption, runtime_table, pointwise_hs_norm_squared, SchemeComparison,
	)
from spdeint.integrator_tools import UnsuccessfulIntegration
from spdeint.schemes import RunConfig, simulate
from spdeint.spectral import SineBasis, h_norm, resample

from scenarios import heat_sine, heat_cosine, linear_g, zero_noise

class TestFitOrder(unittest.TestCase):
	def test_exact_power_law(self):
		slope, stderr = fit_order([(n, 3*n**-1.5) for n in (4, 8, 16, 32)])
		self.assertAlmostEqual(slope, -1.5)
		self.assertAlmostEqual(stderr, 0)

	def test_two_points(self):
		self.assertAlmostEqual(fit_order([(2, 1.0), (4, 0.25)])[0], -2)

	def test_scale_invariant(self):
		points = [(4, 0.3), (8, 0.11), (16, 0.05), (32, 0.013)]
		slope, stderr = fit_order(points)
		for factor in (1e-6, 7.3, 2**20):
			scaled = fit_order([(n, factor*error) for n, error in points])
			self.assertAlmostEqual(scaled[0], slope, places=12)
			self.assertAlmostEqual(scaled[1], stderr, places=12)

	def test_invalid(self):
		for points in [
					[(4, 0.1)],
					[(4, 0.1), (8, 0.0)],
					[(4, 0.1), (4, 0.2)],
				]:
			with self.assertRaises(ValueError):
				fit_order(points)

class TestLevelPlan(unittest.TestCase):
	def test_paired(self):
		plan = LevelPlan.paired([8, 4], "m=n2", paths=10)
		self.assertEqual(plan.levels, ((4, 16, 4), (8, 64, 8)))
		self.assertEqual(plan.reference, (16, 256, 16))
		plan = LevelPlan.paired([4, 8, 16], "m=n3", ref_n=32)
		self.assertEqual(plan.reference, (32, 32768, 32))

	def test_empty(self):
		plan = LevelPlan.paired([])
		self.assertEqual(plan.levels, ())

	def test_invalid(self):
		for levels, reference in [
					([(4, 16, 4)], (8, 24, 8)),
					([(16, 16, 4)], (8, 64, 8)),
					([(4, 16, 16)], (8, 64, 8)),
					([(8, 64, 8), (4, 16, 4)], (16, 256, 16)),
					([(4, 0, 4)], (8, 64, 8)),
				]:
			with self.assertRaises(ValueError):
				LevelPlan(levels, reference)
		with self.assertRaises(ValueError):
			LevelPlan([], (8, 64, 8), paths=0)

class TestStrongError(unittest.TestCase):
	def test_reference_level(self):
		plan = LevelPlan([(8, 64, 8)], (8, 64, 8), paths=3)
		report = strong_error(heat_sine, "rk", plan, threads=1)
		self.assertEqual(report.levels[0].rms_error, 0)
		self.assertEqual(report.levels[0].mc_standard_error, 0)
		self.assertTrue(np.isnan(report.fitted_slope))

	def test_report(self):
		plan = LevelPlan.paired([2, 4], "m=n2", paths=4, base_seed=7)
		report = strong_error(heat_sine, "runge-kutta", plan, threads=1)
		self.assertEqual((report.problem, report.scheme, report.paths, report.base_seed), ("heat-sine", "runge-kutta", 4, 7))
		self.assertEqual([level.draws for level in report.levels], [8, 64])
		self.assertTrue(all(level.rms_error > 0 for level in report.levels))
		self.assertTrue(all(level.seconds >= 0 for level in report.levels))
		self.assertAlmostEqual(report.predicted_slope, -1.5)
		self.assertAlmostEqual(report.predicted_order, 0.5)
		self.assertIsNone(report.theta)
		self.assertTrue(np.isfinite(report.fitted_slope))
		self.assertTrue(np.isfinite(report.effort_slope))

	def test_independent_of_threads(self):
		plan = LevelPlan.paired([2, 4], "m=n2", paths=6)
		serial = strong_error(heat_sine, "milstein", plan, threads=1)
		parallel = strong_error(heat_sine, "milstein", plan, threads=3)
		self.assertEqual(
				[(level.rms_error, level.mc_standard_error) for level in serial.levels],
				[(level.rms_error, level.mc_standard_error) for level in parallel.levels],
			)
		self.assertEqual(serial.fitted_slope, parallel.fitted_slope)

	def test_empty_plan(self):
		report = strong_error(heat_sine, "euler", LevelPlan.paired([]))
		self.assertEqual(report.levels, ())
		self.assertTrue(np.isnan(report.fitted_slope))

	def test_single_path(self):
		plan = LevelPlan.paired([2], "m=n2", paths=1)
		with warnings.catch_warnings(record=True) as caught:
			warnings.simplefilter("always")
			report = strong_error(heat_sine, "rk", plan, threads=1)
		self.assertTrue(caught)
		self.assertTrue(np.isnan(report.levels[0].mc_standard_error))

	def test_zero_noise_coupling(self):
		# without noise every path has the same deterministic error
		plan = LevelPlan.paired([2, 4], "m=n2", paths=3)
		report = strong_error(zero_noise, "runge-kutta", plan, threads=1)
		n_ref, m_ref, k_ref = plan.reference
		fine_basis = SineBasis(n_ref, zero_noise.diffusivity)
		reference = simulate(zero_noise, RunConfig(n_ref, m_ref, k_ref, "runge-kutta"), basis=fine_basis)
		for level, (n, m, k) in zip(report.levels, plan.levels):
			basis = SineBasis(n, zero_noise.diffusivity)
			coarse = simulate(zero_noise, RunConfig(n, m, k, "runge-kutta"), basis=basis)
			expected = h_norm(resample(coarse, basis, fine_basis)-reference)
			self.assertGreater(expected, 0)
			self.assertAlmostEqual(level.rms_error, expected, places=12)
			self.assertAlmostEqual(level.mc_standard_error, 0, places=12)

	def test_failing_path(self):
		spec = replace(zero_noise, drift=lambda xs, ys: np.where(np.abs(ys) > 0.5, np.nan, 1.0))
		with self.assertRaises(UnsuccessfulIntegration) as context:
			strong_error(spec, "rk", LevelPlan.paired([2], "m=n2", paths=2), threads=1)
		self.assertEqual(context.exception.path, 0)

	def test_milstein_needs_derivative(self):
		with self.assertRaises(ValueError):
			strong_error(replace(heat_sine, diffusion_dy=None), "milstein", LevelPlan.paired([2]))

class TestCompareSchemes(unittest.TestCase):
	def test_linear_diffusion(self):
		plan = LevelPlan.paired([2, 4], "m=n2", paths=4)
		comparisons = compare_schemes(linear_g, plan, threads=1)
		self.assertEqual([entry.n for entry in comparisons], [2, 4])
		for entry in comparisons:
			self.assertLess(entry.rk_mil_distance, 1e-12)
			self.assertAlmostEqual(entry.err_rk, entry.err_mil, places=10)
			self.assertLess(entry.relative_gap, 1e-8)
			self.assertGreater(entry.err_euler, 0)

	def test_zero_errors(self):
		entry = SchemeComparison(4, 16, 4, err_rk=0.0, err_mil=0.0, err_euler=0.1, rk_mil_distance=0.0)
		self.assertEqual(entry.relative_gap, 0.0)
		entry = SchemeComparison(4, 16, 4, err_rk=0.3, err_mil=0.2, err_euler=0.1, rk_mil_distance=0.0)
		self.assertAlmostEqual(entry.relative_gap, 0.5)

	def test_distance_shrinks_with_steps(self):
		plan = LevelPlan([(8, 16, 8), (8, 64, 8), (8, 256, 8)], (8, 256, 8), paths=10)
		comparisons = compare_schemes(heat_sine, plan, threads=1)
		distances = [entry.rk_mil_distance for entry in comparisons]
		self.assertTrue(all(distance > 0 for distance in distances))
		slope, _ = fit_order([(entry.m, entry.rk_mil_distance) for entry in comparisons])
		self.assertLessEqual(slope, -0.9)

	def test_needs_derivative(self):
		with self.assertRaises(ValueError):
			compare_schemes(replace(heat_sine, diffusion_dy=None), LevelPlan.paired([2]))

class TestGGCheck(unittest.TestCase):
	def test_hs_norm(self):
		basis = SineBasis(6, heat_sine.diffusivity)
		factor = np.linspace(-1, 1, 6)
		K = 4
		mu = heat_sine.noise.eigenvalues(K)
		eta = heat_sine.noise.eigenfunctions(K, basis.grid)
		expected = sum(
				mu[i]*mu[j]*np.sum((factor*eta[i]*eta[j])**2)/7
				for i in range(K) for j in range(K)
			)
		self.assertAlmostEqual(hs_norm_squared(factor, heat_sine, K, basis), expected)

	def test_hs_norm_closed_form(self):
		for spec in (heat_sine, heat_cosine):
			basis = SineBasis(10, spec.diffusivity)
			factor = np.cos(3*basis.grid)
			for K in (1, 4, 10):
				with self.subTest(problem=spec.name, K=K):
					self.assertAlmostEqual(
							pointwise_hs_norm_squared(factor, spec, K, basis),
							hs_norm_squared(factor, spec, K, basis),
							places=12,
						)

	def test_linear_diffusion(self):
		result = check_gg_assumption(linear_g, 4, SineBasis(8, linear_g.diffusivity), trials=5)
		self.assertTrue(result.passed)
		self.assertEqual(set(result.remainder_constants), {0.0})
		self.assertTrue(all(constant > 0 for constant in result.lipschitz_constants))
		self.assertEqual(len(result.step_sizes), 9)

	def test_zero_noise(self):
		result = check_gg_assumption(zero_noise, 4, SineBasis(8, zero_noise.diffusivity), trials=3)
		self.assertTrue(result.passed)

	def test_too_many_modes(self):
		with self.assertRaises(ValueError):
			check_gg_assumption(heat_sine, 9, SineBasis(8, heat_sine.diffusivity))

class TestRuntime(unittest.TestCase):
	def test_table(self):
		timings = runtime_table(heat_sine, [2, 4], repeats=2)
		self.assertEqual(len(timings), 6)
		euler = [timing for timing in timings if timing.scheme == "euler"]
		self.assertEqual([timing.steps for timing in euler], [8, 64])
		self.assertEqual([timing.draws for timing in euler], [16, 256])
		self.assertTrue(all(timing.seconds > 0 for timing in timings))

	def test_skips_milstein(self):
		with warnings.catch_warnings(record=True) as caught:
			warnings.simplefilter("always")
			timings = runtime_table(replace(heat_sine, diffusion_dy=None), [2], repeats=1)
		self.assertTrue(caught)
		self.assertEqual({timing.scheme for timing in timings}, {"euler", "runge-kutta"})

if __name__ == "__main__":
	unittest.main(buffer=True)
