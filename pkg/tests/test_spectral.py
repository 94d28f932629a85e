#!/usr/bin/python3
# -*- coding: utf-8 -*-

import unittest

import numpy as np
from numpy.testing import assert_allclose

from spdeint.spectral import (
		SineBasis, dst, idst, direct_dst, to_physical, to_coefficients,
		semigroup_multipliers, resolvent_multipliers, h_norm, grid_norm, resample,
	)

from scenarios import coefficients

class TestTransforms(unittest.TestCase):
	def test_against_direct_summation(self):
		rng = np.random.default_rng(1)
		for n in (1, 2, 3, 7, 16, 33, 64):
			z = rng.standard_normal(n)
			assert_allclose(dst(z), direct_dst(z), atol=1e-12)

	def test_inverse(self):
		rng = np.random.default_rng(2)
		for n in (1, 5, 32, 100):
			z = rng.standard_normal(n)
			assert_allclose(idst(dst(z)), z, atol=1e-12)
			assert_allclose(dst(idst(z)), z, atol=1e-12)

	def test_involution(self):
		rng = np.random.default_rng(4)
		for n in range(1, 257):
			z = rng.standard_normal(n)
			assert_allclose(dst(dst(z)), (n+1)/2*z, atol=1e-12*n)
			assert_allclose(idst(dst(z)), z, atol=1e-12)

	def test_batched(self):
		rng = np.random.default_rng(3)
		table = rng.standard_normal((4, 9))
		assert_allclose(dst(table), np.array([dst(row) for row in table]))

	def test_empty(self):
		with self.assertRaises(ValueError):
			dst([])

	def test_single_mode(self):
		assert_allclose(dst([2.5]), [2.5])

class TestBasis(unittest.TestCase):
	def setUp(self):
		self.basis = SineBasis(len(coefficients), 0.02)

	def test_grid(self):
		assert_allclose(self.basis.grid, np.arange(1, 9)/9)
		self.assertEqual(self.basis.spacing, 1/9)

	def test_eigenvalues(self):
		assert_allclose(self.basis.eigenvalues, 0.02*np.pi**2*np.arange(1, 9)**2)

	def test_read_only(self):
		with self.assertRaises(ValueError):
			self.basis.grid[0] = 0.5

	def test_equality(self):
		self.assertEqual(self.basis, SineBasis(8, 0.02))
		self.assertNotEqual(self.basis, SineBasis(8, 0.01))
		self.assertEqual(len({self.basis, SineBasis(8, 0.02)}), 1)

	def test_invalid(self):
		for args in [(0, 1.0), (2.5, 1.0), (4, 0.0), (4, -1.0), (4, np.inf)]:
			with self.assertRaises(ValueError):
				SineBasis(*args)

	def test_unit_coefficient_is_eigenfunction(self):
		functions = self.basis.eigenfunctions()
		for j in range(self.basis.n_modes):
			unit = np.zeros(self.basis.n_modes)
			unit[j] = 1
			assert_allclose(to_physical(unit, self.basis), functions[j], atol=1e-13)

	def test_physical_round_trip(self):
		values = to_physical(coefficients, self.basis)
		assert_allclose(to_coefficients(values, self.basis), coefficients, atol=1e-14)

	def test_evaluation(self):
		values = to_physical(coefficients, self.basis)
		direct = coefficients @ self.basis.eigenfunctions()
		assert_allclose(values, direct, atol=1e-13)

	def test_length_check(self):
		with self.assertRaises(ValueError):
			to_physical(np.zeros(7), self.basis)
		with self.assertRaises(ValueError):
			to_coefficients(np.zeros(9), self.basis)

	def test_norms_agree(self):
		values = to_physical(coefficients, self.basis)
		self.assertAlmostEqual(grid_norm(values), h_norm(coefficients), places=13)

	def test_parseval(self):
		rng = np.random.default_rng(5)
		for n in range(1, 17):
			basis = SineBasis(n, 0.02)
			for _ in range(5):
				c = rng.standard_normal(n)
				self.assertAlmostEqual(grid_norm(to_physical(c, basis)), h_norm(c), delta=1e-12)

class TestMultipliers(unittest.TestCase):
	def setUp(self):
		self.basis = SineBasis(16, 1/200)

	def test_semigroup(self):
		h = 1/256
		assert_allclose(semigroup_multipliers(self.basis, h), np.exp(-self.basis.eigenvalues*h))

	def test_semigroup_law(self):
		for h1, h2 in [(1/256, 1/256), (1/64, 3/64), (0.1, 0.4)]:
			assert_allclose(
					semigroup_multipliers(self.basis, h1)*semigroup_multipliers(self.basis, h2),
					semigroup_multipliers(self.basis, h1+h2),
					rtol=0, atol=1e-13,
				)

	def test_resolvent(self):
		h = 1/4096
		assert_allclose(resolvent_multipliers(self.basis, h), 1/(1+self.basis.eigenvalues*h))

	def test_contractive(self):
		for h in (1e-6, 0.01, 1.0):
			for multipliers in (semigroup_multipliers(self.basis, h), resolvent_multipliers(self.basis, h)):
				self.assertTrue(np.all(multipliers > 0))
				self.assertTrue(np.all(multipliers <= 1))
				self.assertTrue(np.all(np.diff(multipliers) < 0))

	def test_invalid_step(self):
		for h in (0, -0.1):
			with self.assertRaises(ValueError):
				semigroup_multipliers(self.basis, h)
			with self.assertRaises(ValueError):
				resolvent_multipliers(self.basis, h)

class TestResample(unittest.TestCase):
	def test_pad_and_truncate(self):
		coarse = SineBasis(8, 0.1)
		fine = SineBasis(12, 0.1)
		padded = resample(coefficients, coarse, fine)
		assert_allclose(padded[:8], coefficients)
		assert_allclose(padded[8:], 0)
		assert_allclose(resample(padded, fine, coarse), coefficients)

	def test_diffusivity_mismatch(self):
		with self.assertRaises(ValueError):
			resample(coefficients, SineBasis(8, 0.1), SineBasis(8, 0.2))

if __name__ == "__main__":
	unittest.main(buffer=True)
