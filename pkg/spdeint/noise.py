#!/usr/bin/python3
# -*- coding: utf-8 -*-

"""
Simulation of the Q-Wiener process :math:`W_t = \\sum_j \\sqrt{μ_j} β^j_t η_j`.

Brownian increments are kept as a table (`BrownianLattice`) of :math:`Δβ^j_m` with steps along the first and modes along the second axis. Each row is drawn from its own counter-based stream keyed by the base seed, the path index and the step index, so any row can be regenerated in isolation. Coarser resolutions are obtained from a fine table by summing blocks of steps (`coarsen_time`) and keeping a prefix of the modes (`truncate_modes`), which places all resolutions on one underlying path.
"""

from warnings import warn

import numpy as np

from spdeint.spectral import SQRT2, dst

FAMILIES = ("sine", "cosine")

_UINT64 = 2**64

def power_law(decay):
	"""
	Returns the eigenvalue rule :math:`μ_j = j^{-\\text{decay}}`.
	"""
	def mu(j):
		return np.asarray(j, dtype=float)**(-float(decay))
	return mu

class NoiseSpectrum(object):
	"""
	Spectrum of the covariance operator :math:`Q`.

	Parameters
	----------
	family : string
		`"sine"` for :math:`η_j(x) = \\sqrt{2}\\sin(jπx)` (the eigenfunctions of the Dirichlet Laplacian) or `"cosine"` for :math:`η_0=1, η_j(x) = \\sqrt{2}\\cos(jπx)` with :math:`μ_0=0`.

	decay : float or `None`
		If given, :math:`μ_j = j^{-\\text{decay}}`. Only this form has a known trace and is used to predict convergence rates.

	mu : callable or `None`
		A vectorised rule mapping mode indices :math:`j≥1` to :math:`μ_j≥0`. Use this instead of `decay` for other spectra.
	"""

	def __init__(self, family, decay=None, mu=None):
		if family not in FAMILIES:
			raise ValueError("Unknown noise family %r; known are: %s." % (family, ", ".join(FAMILIES)))
		if (decay is None) == (mu is None):
			raise ValueError("Specify exactly one of decay and mu.")
		if decay is not None and not decay > 1:
			raise ValueError("A power law j^(-%r) is not trace class; the decay must exceed 1." % (decay,))

		self.family = family
		self.decay = None if decay is None else float(decay)
		self._mu = power_law(decay) if mu is None else mu
		# The constant mode of the cosine family never carries noise.
		self.mu_0 = 0.0

	def __repr__(self):
		if self.decay is None:
			return "NoiseSpectrum(%r, mu=%r)" % (self.family, self._mu)
		return "NoiseSpectrum(%r, decay=%r)" % (self.family, self.decay)

	def eigenvalues(self, K):
		"""
		Returns :math:`μ_1, …, μ_K`.
		"""
		mu = np.asarray(self._mu(np.arange(1, K+1)), dtype=float)
		if np.any(mu < 0) or not np.all(np.isfinite(mu)):
			raise ValueError("The eigenvalues of Q must be non-negative and finite.")
		return mu

	def eigenfunctions(self, K, x):
		"""
		Returns the matrix :math:`η_j(x_k)` for :math:`j=1,…,K` (first axis) and the points `x` (second axis).
		"""
		phase = np.pi*np.outer(np.arange(1, K+1), np.asarray(x, dtype=float))
		if self.family == "sine":
			return SQRT2*np.sin(phase)
		else:
			return SQRT2*np.cos(phase)

	def trace(self, K=None):
		"""
		Returns :math:`\\sum_{j≤K} μ_j`. Without `K`, this is the full trace, which is only available in closed form for power laws.
		"""
		if K is not None:
			return float(np.sum(self.eigenvalues(K)))
		if self.decay is None:
			raise ValueError("The full trace is only known for power-law spectra.")
		from scipy.special import zeta
		return float(zeta(self.decay))

class BrownianLattice(object):
	"""
	Table of Brownian increments :math:`Δβ^j_m` for `steps` time steps of size `h` and `modes` modes.

	Do not construct this directly but use `sample_lattice`, `coarsen_time` and `truncate_modes`.
	"""

	def __init__(self, increments, h, seed_info):
		increments = np.array(increments, dtype=float)
		if increments.ndim != 2 or 0 in increments.shape:
			raise ValueError("The increments must form a non-empty table of steps × modes.")
		increments.flags.writeable = False
		self.increments = increments
		self.steps, self.modes = increments.shape
		self.h = float(h)
		self.seed_info = dict(seed_info)

	def __repr__(self):
		return "BrownianLattice(steps=%i, modes=%i, h=%r, seed_info=%r)" % (
				self.steps, self.modes, self.h, self.seed_info
			)

	@property
	def draws(self):
		"""
		The number of normal random variables a simulation at this resolution consumes.
		"""
		return self.steps*self.modes

def _check_counter(value, what):
	if int(value) != value or value < 0:
		raise ValueError("The %s must be a non-negative integer, not %r." % (what, value))
	return int(value)

def _key(base_seed, path_id):
	return np.array([base_seed % _UINT64, path_id % _UINT64], dtype=np.uint64)

def _stream(base_seed, path_id, m):
	# The step index occupies the second counter word; each row advances the first.
	return np.random.Generator(np.random.Philox(key=_key(base_seed, path_id), counter=m << 64))

def _rewind(generator, key, m):
	"""
	Puts `generator` into the state `_stream` creates for step `m`, without allocating a new bit generator.
	"""
	generator.bit_generator.state = {
			"bit_generator": "Philox",
			"state": {"counter": np.array([0, m, 0, 0], dtype=np.uint64), "key": key},
			"buffer": np.zeros(4, dtype=np.uint64),
			"buffer_pos": 4,
			"has_uint32": 0,
			"uinteger": 0,
		}
	return generator

def sample_row(base_seed, path_id, m, K, h):
	"""
	Returns the increments :math:`Δβ^1_m, …, Δβ^K_m` of step `m` of path `path_id`. This is what `sample_lattice` uses for each row.
	"""
	base_seed = _check_counter(base_seed, "base seed")
	path_id = _check_counter(path_id, "path index")
	m = _check_counter(m, "step index")
	return np.sqrt(h)*_stream(base_seed, path_id, m).standard_normal(K)

def sample_lattice(M, K, h, base_seed, path_id):
	"""
	Draws the :math:`M×K` table of independent :math:`N(0,h)` increments of path `path_id`.

	Identical arguments yield bit-identical tables.
	"""
	M = _check_counter(M, "number of steps")
	K = _check_counter(K, "number of modes")
	if M < 1 or K < 1:
		raise ValueError("A lattice needs at least one step and one mode.")
	if not h > 0:
		raise ValueError("The step size must be positive, not %r." % (h,))

	base_seed = _check_counter(base_seed, "base seed")
	path_id = _check_counter(path_id, "path index")
	key = _key(base_seed, path_id)
	generator = _stream(base_seed, path_id, 0)
	increments = np.empty((M, K))
	for m in range(M):
		increments[m] = _rewind(generator, key, m).standard_normal(K)
	increments *= np.sqrt(h)

	return BrownianLattice(
			increments, h,
			{"base_seed": base_seed, "path_id": path_id, "time_factor": 1},
		)

def coarsen_time(lat, factor):
	"""
	Sums blocks of `factor` consecutive steps, yielding the increments of the same Brownian path on a grid with step size `factor·h`.
	"""
	if int(factor) != factor or factor < 1 or lat.steps % factor:
		raise ValueError(
				"The coarsening factor must be a positive divisor of the number of steps (%i), not %r."
				% (lat.steps, factor)
			)
	factor = int(factor)
	if factor == 1:
		return lat

	blocks = lat.increments.reshape(lat.steps//factor, factor, lat.modes)
	seed_info = dict(lat.seed_info)
	seed_info["time_factor"] = seed_info.get("time_factor", 1)*factor
	return BrownianLattice(blocks.sum(axis=1), lat.h*factor, seed_info)

def truncate_modes(lat, K):
	"""
	Keeps the first `K` modes of the lattice.
	"""
	if int(K) != K or not 1 <= K <= lat.modes:
		raise ValueError("Cannot keep %r of %i modes." % (K, lat.modes))
	K = int(K)
	if K == lat.modes:
		return lat
	return BrownianLattice(lat.increments[:, :K], lat.h, lat.seed_info)

def _synthesise(spectrum, increments, basis):
	K = increments.shape[-1]
	scaled = increments*np.sqrt(spectrum.eigenvalues(K))

	if spectrum.family == "sine" and K <= basis.n_modes:
		padding = [(0, 0)]*(scaled.ndim-1) + [(0, basis.n_modes-K)]
		return SQRT2*dst(np.pad(scaled, padding))

	if spectrum.family == "sine":
		warn("Sine noise with more modes (%i) than grid points (%i) is synthesised by direct summation." % (K, basis.n_modes))
	return scaled @ spectrum.eigenfunctions(K, basis.grid)

def increment_field(spectrum, lat, m, basis):
	"""
	Returns :math:`ΔW_m(x_k) = \\sum_{j≤K} \\sqrt{μ_j} Δβ^j_m η_j(x_k)` on the grid of `basis`, where `K` is the number of modes of the lattice.
	"""
	if int(m) != m or not 0 <= m < lat.steps:
		raise IndexError("Step index %r out of range for a lattice with %i steps." % (m, lat.steps))
	return _synthesise(spectrum, lat.increments[int(m)], basis)

def increment_fields(spectrum, lat, basis):
	"""
	Like `increment_field`, but for all steps at once (steps along the first axis).
	"""
	return _synthesise(spectrum, lat.increments, basis)

def direct_increment_field(spectrum, increments, basis):
	"""
	The plain :math:`O(NK)` summation of the increment field from one row of increments. Only meant as a reference for testing.
	"""
	increments = np.asarray(increments, dtype=float)
	K = len(increments)
	mu = spectrum.eigenvalues(K)
	eta = spectrum.eigenfunctions(K, basis.grid)
	result = np.zeros(basis.n_modes)
	for j in range(K):
		result += np.sqrt(mu[j])*increments[j]*eta[j]
	return result

def compensator_field(spectrum, K, h, basis):
	"""
	Returns :math:`h\\sum_{j≤K} μ_j η_j(x_k)²`, the expectation of the squared increment field. This is computed once per configuration.
	"""
	if int(K) != K or K < 1:
		raise ValueError("The number of noise modes must be a positive integer, not %r." % (K,))
	if not h > 0:
		raise ValueError("The step size must be positive, not %r." % (h,))
	K = int(K)
	return h*(spectrum.eigenvalues(K) @ spectrum.eigenfunctions(K, basis.grid)**2)
