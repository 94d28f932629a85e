#!/usr/bin/python3
# -*- coding: utf-8 -*-

"""
Sine eigenbasis of the Dirichlet Laplacian on (0,1), exact discrete sine transforms and the per-mode multipliers of the linear part.

A state is either a `SpectralField` (coefficients against :math:`e_j(x)=\\sqrt{2}\\sin(jπx)`) or a `PhysicalField` (values at the interior grid points :math:`x_k=k/(N+1)`). Both are one-dimensional NumPy arrays; conversions are always explicit.
"""

import numpy as np
from scipy.fft import dst as _scipy_dst

SQRT2 = np.sqrt(2.0)

class SineBasis(object):
	"""
	Spectral Galerkin basis of the operator :math:`A = k ∂²/∂x²` with homogeneous Dirichlet boundary conditions.

	Parameters
	----------
	n_modes : integer
		Number :math:`N` of retained eigenfunctions and grid points.

	diffusivity : float
		The constant :math:`k>0` in front of the Laplacian.
	"""

	def __init__(self, n_modes, diffusivity):
		if int(n_modes) != n_modes or n_modes < 1:
			raise ValueError("The number of modes must be a positive integer, not %r." % (n_modes,))
		if not (diffusivity > 0 and np.isfinite(diffusivity)):
			raise ValueError("The diffusivity must be positive and finite, not %r." % (diffusivity,))

		self.n_modes = int(n_modes)
		self.diffusivity = float(diffusivity)
		self.spacing = 1.0/(self.n_modes+1)

		modes = np.arange(1, self.n_modes+1)
		self.grid = _read_only(modes*self.spacing)
		self.eigenvalues = _read_only(self.diffusivity*np.pi**2*modes**2.0)

	def __repr__(self):
		return "SineBasis(n_modes=%i, diffusivity=%r)" % (self.n_modes, self.diffusivity)

	def __eq__(self, other):
		return (
				isinstance(other, SineBasis)
				and self.n_modes == other.n_modes
				and self.diffusivity == other.diffusivity
			)

	def __hash__(self):
		return hash((self.n_modes, self.diffusivity))

	def eigenfunctions(self, x=None):
		"""
		Returns the matrix :math:`e_j(x_k)` with modes along the first and points along the second axis. If `x` is not given, the grid is used.
		"""
		x = self.grid if x is None else np.asarray(x, dtype=float)
		modes = np.arange(1, self.n_modes+1)
		return SQRT2*np.sin(np.pi*np.outer(modes, x))

def _read_only(array):
	array = np.array(array, dtype=float)
	array.flags.writeable = False
	return array

def _as_sequence(z):
	z = np.asarray(z, dtype=float)
	if z.ndim < 1 or z.shape[-1] == 0:
		raise ValueError("Sine transforms need a non-empty input.")
	return z

def dst(z):
	"""
	Discrete sine transform :math:`y(j) = \\sum_{k=1}^N z(k) \\sin(jπk/(N+1))` along the last axis.

	This is half of SciPy’s DST-I, which is evaluated with an :math:`O(N \\log N)` algorithm.
	"""
	z = _as_sequence(z)
	if z.shape[-1] == 1:
		return z.copy()
	return 0.5*_scipy_dst(z, type=1, axis=-1)

def idst(z):
	"""
	Inverse of `dst`: :math:`y(j) = \\frac{2}{N+1}\\sum_{k=1}^N z(k) \\sin(jπk/(N+1))`.
	"""
	z = _as_sequence(z)
	return dst(z)*(2.0/(z.shape[-1]+1))

def direct_dst(z):
	"""
	The :math:`O(N²)` textbook evaluation of `dst`. Only meant as a reference for testing.
	"""
	z = _as_sequence(z)
	n = z.shape[-1]
	indices = np.arange(1, n+1)
	sines = np.sin(np.pi*np.outer(indices, indices)/(n+1))
	return z @ sines

def _check_length(field, basis, what):
	field = np.asarray(field, dtype=float)
	if field.shape[-1:] != (basis.n_modes,):
		raise ValueError(
				"The %s has length %i, but the basis has %i modes."
				% (what, field.shape[-1] if field.ndim else 0, basis.n_modes)
			)
	return field

def to_physical(c, basis):
	"""
	Evaluates the coefficient field `c` at the grid: :math:`v(x_k) = \\sqrt{2}\\,\\mathrm{dst}(c)(k)`.
	"""
	c = _check_length(c, basis, "coefficient field")
	return SQRT2*dst(c)

def to_coefficients(v, basis):
	"""
	Projects grid values onto the basis using the composite trapezoidal rule, which for the sine basis is :math:`c = \\mathrm{idst}(v)/\\sqrt{2}`. Aliasing is not corrected for.
	"""
	v = _check_length(v, basis, "grid field")
	return idst(v)/SQRT2

def semigroup_multipliers(basis, h):
	"""
	Returns :math:`e^{-λ_j h}`, the action of :math:`S(h)=e^{Ah}` on each mode.
	"""
	_check_step(h)
	return np.exp(-basis.eigenvalues*h)

def resolvent_multipliers(basis, h):
	"""
	Returns :math:`1/(1+λ_j h)`, the action of :math:`(I-hA)^{-1}` on each mode.
	"""
	_check_step(h)
	return 1.0/(1.0+basis.eigenvalues*h)

def _check_step(h):
	if not h > 0:
		raise ValueError("The step size must be positive, not %r." % (h,))

def h_norm(c):
	"""
	The :math:`L²(0,1)` norm of a coefficient field, i.e., the Euclidean norm of its coefficients.
	"""
	return float(np.linalg.norm(np.asarray(c, dtype=float)))

def grid_norm(v):
	"""
	The trapezoidal approximation :math:`\\sqrt{\\frac{1}{N+1}\\sum_k v(x_k)²}` of the :math:`L²(0,1)` norm of grid values. For the discrete transform pair this equals `h_norm` of the coefficients exactly.
	"""
	v = np.asarray(v, dtype=float)
	return float(np.sqrt(np.sum(v**2)/(v.shape[-1]+1)))

def resample(c, source, target):
	"""
	Applies the projection :math:`P_N` between bases: coefficients are truncated if `target` has fewer modes and zero-padded if it has more.
	"""
	if source.diffusivity != target.diffusivity:
		raise ValueError(
				"Cannot resample between bases with different diffusivities (%r and %r)."
				% (source.diffusivity, target.diffusivity)
			)
	c = _check_length(c, source, "coefficient field")
	result = np.zeros(target.n_modes)
	n = min(source.n_modes, target.n_modes)
	result[:n] = c[:n]
	return result
