#!/usr/bin/python3
# -*- coding: utf-8 -*-

"""
Monte-Carlo estimation of strong errors :math:`\\left(E\\|X_T-Y\\|_H^2\\right)^{1/2}`, convergence orders, scheme comparisons on common noise, brute-force checks of the conditions on the derivative-free operator and runtime measurements.

The unknown solution :math:`X_T` is replaced by the Runge–Kutta approximation at a fine reference resolution. For each path, one lattice of Brownian increments is drawn at the reference resolution; every coarser level integrates the same path after summing blocks of steps and dropping modes. Errors are measured in coefficient space after zero-padding to the reference number of modes.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from time import perf_counter
from warnings import warn

import numpy as np
from scipy.stats import linregress

from spdeint.integrator_tools import SCHEMES, UnsuccessfulIntegration, report, scheme_info, scheme_name, steps_for
from spdeint.noise import coarsen_time, sample_lattice
from spdeint.problems import predicted_rates, predicted_slope
from spdeint.schemes import RunConfig, gg_factor, integrate, milstein_factor
from spdeint.spectral import SineBasis, grid_norm, h_norm, resample, to_physical

REFERENCE_SCHEME = "runge-kutta"

@dataclass(frozen=True)
class LevelPlan(object):
	"""
	Resolutions of a convergence study.

	Parameters
	----------
	levels : sequence of triples of integers
		The :math:`(N,M,K)` to be studied, sorted by :math:`N`.

	reference : triple of integers
		The reference resolution :math:`(N_\\text{ref},M_\\text{ref},K_\\text{ref})`. :math:`M_\\text{ref}` must be divisible by each level’s :math:`M` and :math:`N_\\text{ref}` and :math:`K_\\text{ref}` must not be smaller than any level’s.

	paths : integer
		Number of Monte-Carlo samples.

	base_seed : integer
		Seed of the Brownian lattices; path `p` uses the stream keyed by `(base_seed, p)`.
	"""
	levels: tuple
	reference: tuple
	paths: int = 100
	base_seed: int = 42

	def __post_init__(self):
		levels = tuple(tuple(int(entry) for entry in level) for level in self.levels)
		reference = tuple(int(entry) for entry in self.reference)
		object.__setattr__(self, "levels", levels)
		object.__setattr__(self, "reference", reference)

		if len(reference) != 3 or min(reference) < 1:
			raise ValueError("The reference must be a triple of positive integers, not %r." % (reference,))
		n_ref, m_ref, k_ref = reference
		for level in levels:
			if len(level) != 3 or min(level) < 1:
				raise ValueError("Each level must be a triple of positive integers, not %r." % (level,))
			n, m, k = level
			if m_ref % m:
				raise ValueError("The reference steps (%i) are not divisible by the steps of level %r." % (m_ref, level))
			if n > n_ref or k > k_ref:
				raise ValueError("Level %r is finer than the reference %r." % (level, reference))
		if [level[0] for level in levels] != sorted(level[0] for level in levels):
			raise ValueError("The levels must be sorted by the number of modes.")
		if int(self.paths) != self.paths or self.paths < 1:
			raise ValueError("At least one path is needed.")
		if int(self.base_seed) != self.base_seed or self.base_seed < 0:
			raise ValueError("The seed must be a non-negative integer.")

	@classmethod
	def paired(cls, ns, pairing="m=n2", ref_n=None, paths=100, base_seed=42):
		"""
		Creates a plan with levels :math:`(N, M(N), N)` for each :math:`N` in `ns`, where :math:`M(N)` follows `pairing`. The reference has twice the largest :math:`N` unless `ref_n` is given, and is paired in the same way.
		"""
		ns = sorted(int(n) for n in ns)
		if ref_n is None:
			ref_n = 2*max(ns, default=1)
		levels = [(n, steps_for(n, pairing), n) for n in ns]
		return cls(levels, (ref_n, steps_for(ref_n, pairing), ref_n), paths, base_seed)

@dataclass(frozen=True)
class LevelError(object):
	n: int
	m: int
	k: int
	rms_error: float
	mc_standard_error: float
	seconds: float = float("nan")

	@property
	def draws(self):
		return self.m*self.k

@dataclass(frozen=True)
class ErrorReport(object):
	"""
	Result of `strong_error`. `fitted_slope` is the slope of :math:`\\log_2` error against :math:`\\log_2 N`, `effort_slope` that against the number of random variables :math:`MK` per path, `predicted_slope` the negative of the predicted exponent in :math:`N` and `predicted_order` the predicted order against :math:`MK` (both NaN if unknown). `theta` is copied from the regularity data of the problem.
	"""
	problem: str
	scheme: str
	paths: int
	base_seed: int
	levels: tuple
	fitted_slope: float
	slope_stderr: float
	predicted_slope: float
	effort_slope: float = float("nan")
	predicted_order: float = float("nan")
	theta: float = None

@dataclass(frozen=True)
class SchemeComparison(object):
	n: int
	m: int
	k: int
	err_rk: float
	err_mil: float
	err_euler: float
	rk_mil_distance: float

	@property
	def relative_gap(self):
		if self.err_rk == self.err_mil == 0:
			return 0.0
		return abs(self.err_rk-self.err_mil)/self.err_mil

@dataclass(frozen=True)
class GGCheck(object):
	"""
	Result of `check_gg_assumption`: per step size, the fitted constants of the Lipschitz and the remainder condition and whether each is stable within a factor of 2 across the step sizes.
	"""
	step_sizes: tuple
	lipschitz_constants: tuple
	remainder_constants: tuple
	lipschitz_ok: bool
	remainder_ok: bool

	@property
	def passed(self):
		return self.lipschitz_ok and self.remainder_ok

@dataclass(frozen=True)
class Timing(object):
	scheme: str
	n: int
	m: int
	k: int
	seconds: float

	@property
	def steps(self):
		return self.m

	@property
	def draws(self):
		return self.m*self.k

def fit_order(points):
	"""
	Least-squares fit of :math:`\\log_2` error against :math:`\\log_2` resolution.

	Parameters
	----------
	points : iterable of pairs
		Each pair consists of a resolution and a positive error.

	Returns
	-------
	slope, stderr : floats
		The fitted slope and its standard error (zero for two points).
	"""
	points = [(float(resolution), float(error)) for resolution, error in points]
	if len(points) < 2:
		raise ValueError("At least two points are needed to fit an order.")
	resolutions, errors = np.array(points).T
	if np.any(errors <= 0) or np.any(resolutions <= 0):
		raise ValueError("Resolutions and errors must be positive to fit an order.")
	if len(set(resolutions)) < 2:
		raise ValueError("At least two distinct resolutions are needed to fit an order.")
	result = linregress(np.log2(resolutions), np.log2(errors))
	return float(result.slope), float(result.stderr)

def _bases(spec, plan):
	ns = {level[0] for level in plan.levels} | {plan.reference[0]}
	return {n: SineBasis(n, spec.diffusivity) for n in ns}

def _simulate_path(spec, schemes, plan, bases, path_id):
	"""
	Returns the squared errors and the integration times (levels × schemes) and the squared distances between the first two schemes (levels) for one path.
	"""
	n_ref, m_ref, k_ref = plan.reference
	horizon = spec.horizon
	fine = sample_lattice(m_ref, k_ref, horizon/m_ref, plan.base_seed, path_id)

	try:
		reference = integrate(spec, RunConfig(n_ref, m_ref, k_ref, REFERENCE_SCHEME, horizon), fine, bases[n_ref])

		errors = np.empty((len(plan.levels), len(schemes)))
		seconds = np.empty_like(errors)
		distances = np.zeros(len(plan.levels))
		for i, (n, m, k) in enumerate(plan.levels):
			lattice = coarsen_time(fine, m_ref//m)
			terminals = []
			for s, scheme in enumerate(schemes):
				start = perf_counter()
				terminal = integrate(spec, RunConfig(n, m, k, scheme, horizon), lattice, bases[n])
				seconds[i,s] = perf_counter()-start
				padded = resample(terminal, bases[n], bases[n_ref])
				errors[i,s] = h_norm(padded-reference)**2
				terminals.append(terminal)
			if len(terminals) > 1:
				distances[i] = h_norm(terminals[0]-terminals[1])**2
	except UnsuccessfulIntegration as error:
		raise error.at_path(path_id) from error

	return errors, distances, seconds

def _run_paths(worker, paths, threads):
	"""
	Calls `worker` for each path index and returns the results ordered by path.
	"""
	if threads is None:
		threads = os.cpu_count() or 1
	if threads <= 1 or paths == 1:
		return [worker(path_id) for path_id in range(paths)]
	with ThreadPoolExecutor(max_workers=threads) as executor:
		return list(executor.map(worker, range(paths)))

def _monte_carlo(spec, schemes, plan, threads, verbose):
	if plan.paths == 1:
		warn("With a single path, the Monte-Carlo standard error is undefined.")
	bases = _bases(spec, plan)
	report("Simulating %i paths of %s with reference %r." % (plan.paths, spec.name, plan.reference), verbose)

	def worker(path_id):
		result = _simulate_path(spec, schemes, plan, bases, path_id)
		report("finished path %i" % path_id, verbose)
		return result

	results = _run_paths(worker, plan.paths, threads)

	# merged in path order so that results do not depend on scheduling
	errors = np.array([result[0] for result in results])
	distances = np.array([result[1] for result in results])
	seconds = np.zeros(errors.shape[1:])
	for result in results:
		seconds += result[2]
	return errors, distances, seconds/plan.paths

def _rms(squared):
	"""
	Root mean square and its Monte-Carlo standard error (delta method) from a sample of squared norms.
	"""
	mean = float(np.mean(squared))
	rms = np.sqrt(mean)
	if len(squared) < 2:
		return rms, float("nan")
	if rms == 0:
		return rms, 0.0
	stderr_of_mean = np.std(squared, ddof=1)/np.sqrt(len(squared))
	return rms, float(stderr_of_mean/(2*rms))

def _slope(resolutions, errors):
	points = [(resolution, error) for resolution, error in zip(resolutions, errors)]
	if len(points) < 2 or any(error <= 0 for _, error in points):
		return float("nan"), float("nan")
	return fit_order(points)

def _predictions(spec, scheme, plan):
	"""
	Returns the predicted slope against :math:`N` and the predicted order against the effort :math:`MK`, both NaN if unknown.
	"""
	if len(plan.levels) < 2:
		return float("nan"), float("nan")
	ns = [level[0] for level in plan.levels]
	m_power = _slope(ns, [level[1] for level in plan.levels])[0]
	k_power = _slope(ns, [level[2] for level in plan.levels])[0]
	slope = predicted_slope(spec, scheme, m_power, k_power)
	if np.isnan(slope):
		return slope, float("nan")
	order = predicted_rates(spec, scheme).overall_order(m_power, k_power, spec.noise.decay)
	return slope, order

def strong_error(spec, scheme, plan, threads=None, verbose=False):
	"""
	Estimates the strong error of `scheme` at each level of `plan` against the Runge–Kutta reference on common noise.

	Parameters
	----------
	spec : `ProblemSpec`

	scheme : string

	plan : `LevelPlan`

	threads : integer or `None`
		Maximal number of worker threads for the paths (default: number of processors).

	verbose : boolean
		Whether to report the progress.

	Returns
	-------
	report : `ErrorReport`

	Raises
	------
	UnsuccessfulIntegration
		if any path fails; its attribute `path` tells which.
	"""
	scheme = scheme_name(scheme)
	if scheme_info(scheme)["wants_derivative"] and not spec.has_derivative:
		raise ValueError("Problem %s provides no derivative of the diffusion, which the %s scheme needs." % (spec.name, scheme))

	levels = []
	if plan.levels:
		squared, _, seconds = _monte_carlo(spec, [scheme], plan, threads, verbose)
		for i, (n, m, k) in enumerate(plan.levels):
			rms, stderr = _rms(squared[:,i,0])
			levels.append(LevelError(n, m, k, rms, stderr, float(seconds[i,0])))

	rms_errors = [level.rms_error for level in levels]
	slope, slope_stderr = _slope([level.n for level in levels], rms_errors)
	effort_slope, _ = _slope([level.draws for level in levels], rms_errors)

	predicted, predicted_order = _predictions(spec, scheme, plan)
	return ErrorReport(
			problem = spec.name,
			scheme = scheme,
			paths = plan.paths,
			base_seed = plan.base_seed,
			levels = tuple(levels),
			fitted_slope = slope,
			slope_stderr = slope_stderr,
			predicted_slope = predicted,
			effort_slope = effort_slope,
			predicted_order = predicted_order,
			theta = spec.regularity.theta if spec.regularity is not None else None,
		)

def compare_schemes(spec, plan, threads=None, verbose=False):
	"""
	Runs all three schemes on identical lattices and returns, per level, a `SchemeComparison` with each scheme’s strong error against the common reference and the root-mean-square distance between the Runge–Kutta and Milstein terminal fields.
	"""
	if not spec.has_derivative:
		raise ValueError("Problem %s provides no derivative of the diffusion, which the Milstein scheme needs." % spec.name)

	schemes = ["runge-kutta", "milstein", "euler"]
	squared, distances, _ = _monte_carlo(spec, schemes, plan, threads, verbose)

	comparisons = []
	for i, (n, m, k) in enumerate(plan.levels):
		errs = [_rms(squared[:,i,s])[0] for s in range(len(schemes))]
		comparisons.append(SchemeComparison(
				n, m, k,
				err_rk = errs[0],
				err_mil = errs[1],
				err_euler = errs[2],
				rk_mil_distance = float(np.sqrt(np.mean(distances[:,i]))),
			))
	return comparisons

def hs_norm_squared(factor, spec, K, basis):
	"""
	Brute-force truncated Hilbert–Schmidt norm :math:`\\sum_{i,j≤K} μ_i μ_j \\|B(η_i,η_j)\\|_H²` of the pointwise bilinear operator :math:`B(u,ũ) = \\text{factor}·u·ũ`, with the norms evaluated on the grid.
	"""
	mu = spec.noise.eigenvalues(K)
	eta = spec.noise.eigenfunctions(K, basis.grid)
	products = factor[None,None,:]*eta[:,None,:]*eta[None,:,:]
	norms = np.sum(products**2, axis=-1)/(basis.n_modes+1)
	return float(np.sum(np.outer(mu, mu)*norms))

def pointwise_hs_norm_squared(factor, spec, K, basis):
	"""
	The same as `hs_norm_squared` in closed form: for a pointwise operator, the double sum collapses to :math:`\\|\\text{factor}·\\sum_{j≤K} μ_j η_j²\\|_H²`.
	"""
	mu = spec.noise.eigenvalues(K)
	weights = mu @ spec.noise.eigenfunctions(K, basis.grid)**2
	return grid_norm(factor*weights)**2

def _stable(constants, factor=2.0):
	constants = np.asarray(constants)
	if np.all(constants == 0):
		return True
	if np.any(constants == 0):
		return False
	return bool(constants.max() <= factor*constants.min())

def random_field(rng, basis, amplitude=0.5):
	"""
	A random smooth grid field with coefficients :math:`\\text{amplitude}·Z_j/j` for independent standard normal :math:`Z_j`.
	"""
	modes = np.arange(1, basis.n_modes+1)
	return to_physical(amplitude*rng.standard_normal(basis.n_modes)/modes, basis)

def check_gg_assumption(
			spec, K, basis, trials=50, seed=0,
			step_sizes=tuple(2.0**-i for i in range(2, 11)),
			zero_tolerance=1e-20,
			verbose=False,
		):
	"""
	Checks the conditions on the derivative-free operator :math:`GG(v,h)` by brute force: over `trials` random pairs of fields :math:`(v,w)` and each step size :math:`h`, it fits

	* the Lipschitz constant :math:`L_h = \\max \\|GG(v,h)-GG(w,h)\\|²_{HS} / \\|v-w\\|²` (which implies the bound with :math:`C/h` for :math:`h≤1`) and
	* the remainder constant :math:`C'_h = \\max \\|GG(v,h)-G'(v)G(v)\\|²_{HS} / (h(1+\\|v\\|_∞⁴))`, where the maximum norm stands in for the fractional norm.

	Each condition passes if its constants agree within a factor of 2 across the step sizes. Constants below `zero_tolerance` count as zero.
	"""
	if K > basis.n_modes:
		raise ValueError("Cannot check %i noise modes on a basis with %i modes." % (K, basis.n_modes))

	rng = np.random.Generator(np.random.Philox(seed))
	pairs = [(random_field(rng, basis), random_field(rng, basis)) for _ in range(trials)]
	exact = [milstein_factor(spec, v, basis) for v, _ in pairs]

	lipschitz = []
	remainder = []
	for h in step_sizes:
		lipschitz_h = 0.0
		remainder_h = 0.0
		for (v, w), product in zip(pairs, exact):
			factor_v = gg_factor(spec, v, h, basis)
			factor_w = gg_factor(spec, w, h, basis)
			difference = hs_norm_squared(factor_v-factor_w, spec, K, basis)
			lipschitz_h = max(lipschitz_h, difference/grid_norm(v-w)**2)
			residual = hs_norm_squared(factor_v-product, spec, K, basis)
			remainder_h = max(remainder_h, residual/(h*(1+np.max(np.abs(v))**4)))
		lipschitz.append(lipschitz_h if lipschitz_h > zero_tolerance else 0.0)
		remainder.append(remainder_h if remainder_h > zero_tolerance else 0.0)
		report("h=%g: Lipschitz constant %g, remainder constant %g" % (h, lipschitz[-1], remainder[-1]), verbose)

	return GGCheck(
			step_sizes = tuple(step_sizes),
			lipschitz_constants = tuple(lipschitz),
			remainder_constants = tuple(remainder),
			lipschitz_ok = _stable(lipschitz),
			remainder_ok = _stable(remainder),
		)

def runtime_table(spec, ns, repeats=3, schemes=SCHEMES, base_seed=0, verbose=False):
	"""
	Measures the median wall-clock time of simulating one path (sampling the increments included) for each scheme and :math:`N` in `ns`, with :math:`K=N` and :math:`M` paired with :math:`N` as the scheme’s default (:math:`N³` for Euler, :math:`N²` otherwise). Absolute times depend on the hardware.
	"""
	timings = []
	for scheme in schemes:
		info = scheme_info(scheme)
		if info["wants_derivative"] and not spec.has_derivative:
			warn("Skipping the %s scheme as problem %s provides no derivative of the diffusion." % (info["name"], spec.name))
			continue
		for n in ns:
			cfg = RunConfig.paired(n, info["name"], spec.horizon)
			basis = SineBasis(n, spec.diffusivity)
			seconds = []
			for repeat in range(repeats):
				start = perf_counter()
				lattice = sample_lattice(cfg.steps, cfg.noise_modes, cfg.h, base_seed, repeat)
				integrate(spec, cfg, lattice, basis)
				seconds.append(perf_counter()-start)
			timings.append(Timing(info["name"], n, cfg.steps, cfg.noise_modes, float(np.median(seconds))))
			report("%s, N=%i: %g s per path" % (info["name"], n, timings[-1].seconds), verbose)
	return timings
