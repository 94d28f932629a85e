#!/usr/bin/python3
# -*- coding: utf-8 -*-

"""
Monte-Carlo convergence studies on the built-in problems. These take a few minutes.
"""

import unittest

from spdeint.experiments import LevelPlan, strong_error, compare_schemes, check_gg_assumption
from spdeint.spectral import SineBasis

from scenarios import heat_sine, heat_cosine

class TestOrders(unittest.TestCase):
	def test_runge_kutta_heat_sine(self):
		plan = LevelPlan.paired([4, 8, 16, 32], "m=n2", paths=100, base_seed=42)
		self.assertEqual(plan.reference, (64, 4096, 64))
		report = strong_error(heat_sine, "runge-kutta", plan)
		self.assertGreaterEqual(report.fitted_slope, -1.8)
		self.assertLessEqual(report.fitted_slope, -1.2)
		self.assertAlmostEqual(report.predicted_slope, -1.5)

	def test_milstein_heat_sine(self):
		plan = LevelPlan.paired([4, 8, 16, 32], "m=n2", paths=100, base_seed=42)
		report = strong_error(heat_sine, "milstein", plan)
		self.assertGreaterEqual(report.fitted_slope, -1.8)
		self.assertLessEqual(report.fitted_slope, -1.2)

	def test_euler_heat_sine(self):
		plan = LevelPlan.paired([4, 8, 16], "m=n3", ref_n=32, paths=50, base_seed=42)
		report = strong_error(heat_sine, "euler", plan)
		self.assertEqual([level.draws for level in report.levels], [4**4, 8**4, 16**4])
		self.assertGreaterEqual(report.fitted_slope, -1.9)
		self.assertLessEqual(report.fitted_slope, -1.1)

	def test_runge_kutta_heat_cosine(self):
		plan = LevelPlan.paired([2, 4, 8, 16], "m=n2", ref_n=32, paths=100, base_seed=42)
		report = strong_error(heat_cosine, "runge-kutta", plan)
		self.assertGreaterEqual(report.fitted_slope, -2.4)
		self.assertLessEqual(report.fitted_slope, -1.4)

	def test_milstein_parity(self):
		plan = LevelPlan.paired([4, 8, 16, 32], "m=n2", paths=100, base_seed=42)
		self.assertEqual(plan.reference, (64, 4096, 64))
		for entry in compare_schemes(heat_sine, plan):
			self.assertLessEqual(entry.relative_gap, 0.15)

	def test_monotone_in_resolution(self):
		plan = LevelPlan.paired([2, 4, 8, 16], "m=n2", ref_n=32, paths=400, base_seed=42)
		levels = strong_error(heat_sine, "runge-kutta", plan).levels
		inversions = [
				(coarse, fine) for coarse, fine in zip(levels, levels[1:])
				if fine.rms_error >= coarse.rms_error
			]
		self.assertLessEqual(len(inversions), 1)
		for coarse, fine in inversions:
			tolerance = 2*(coarse.mc_standard_error+fine.mc_standard_error)
			self.assertLessEqual(fine.rms_error-coarse.rms_error, tolerance)

class TestGGConditions(unittest.TestCase):
	def test_heat_sine(self):
		result = check_gg_assumption(heat_sine, 16, SineBasis(32, heat_sine.diffusivity), trials=50, seed=42)
		self.assertTrue(result.lipschitz_ok)
		self.assertTrue(result.remainder_ok)

if __name__ == "__main__":
	unittest.main(buffer=True)
