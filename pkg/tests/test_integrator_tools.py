#!/usr/bin/python3
# -*- coding: utf-8 -*-

import unittest

from spdeint.integrator_tools import (
		UnsuccessfulIntegration, scheme_name, scheme_info, pairing_power, steps_for,
	)
from spdeint.spectral import resolvent_multipliers, semigroup_multipliers

class TestSchemeInfo(unittest.TestCase):
	def test_names(self):
		for name, expected in [
					("rk", "runge-kutta"),
					("Runge_Kutta", "runge-kutta"),
					(" milstein ", "milstein"),
					("implicit-euler", "euler"),
				]:
			self.assertEqual(scheme_name(name), expected)

	def test_unknown(self):
		with self.assertRaises(ValueError):
			scheme_name("heun")

	def test_euler(self):
		info = scheme_info("euler")
		self.assertIs(info["multipliers"], resolvent_multipliers)
		self.assertIsNone(info["correction"])
		self.assertFalse(info["wants_derivative"])
		self.assertEqual(info["pairing"], "m=n3")

	def test_milstein(self):
		info = scheme_info("milstein")
		self.assertIs(info["multipliers"], semigroup_multipliers)
		self.assertEqual(info["correction"], "milstein")
		self.assertTrue(info["wants_derivative"])

	def test_runge_kutta(self):
		info = scheme_info("rk")
		self.assertEqual(info["name"], "runge-kutta")
		self.assertEqual(info["correction"], "derivative-free")
		self.assertFalse(info["wants_derivative"])
		self.assertEqual(info["pairing"], "m=n2")

class TestPairing(unittest.TestCase):
	def test_powers(self):
		self.assertEqual(pairing_power("m=n2"), 2)
		self.assertEqual(pairing_power("M = N3"), 3)
		self.assertEqual(steps_for(8, "m=n3"), 512)
		self.assertEqual(steps_for(4, "m=n4"), 256)

	def test_unknown(self):
		with self.assertRaises(ValueError):
			pairing_power("m=n")

class TestUnsuccessfulIntegration(unittest.TestCase):
	def test_message(self):
		error = UnsuccessfulIntegration("state not finite", step=7)
		self.assertEqual(str(error), "Integration failed in step 7: state not finite")
		located = error.at_path(3)
		self.assertEqual((located.path, located.step), (3, 7))
		self.assertEqual(str(located), "Integration failed in path 3, step 7: state not finite")
		self.assertEqual(str(UnsuccessfulIntegration()), "Integration failed")

if __name__ == "__main__":
	unittest.main(buffer=True)
