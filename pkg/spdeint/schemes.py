#!/usr/bin/python3
# -*- coding: utf-8 -*-

"""
Time stepping of the spectral Galerkin approximation :math:`Y_m` with :math:`N` modes, :math:`M` steps of size :math:`h=T/M` and :math:`K` noise modes.

All schemes form the intermediate field

.. math::

	ζ_m = Y_m + h f(·,Y_m) + g(·,Y_m)\\, ΔW_m + ½\\, D(Y_m) \\left(ΔW_m² - h\\sum_{j≤K} μ_j η_j²\\right)

on the grid, project it onto the basis with one sine transform and apply a diagonal linear multiplier:

* linear implicit Euler (`"euler"`) – :math:`D=0`, multiplier :math:`(1+λ_j h)^{-1}`;
* Milstein (`"milstein"`) – :math:`D = (∂g/∂y)(·,Y_m)\\, g(·,Y_m)`, multiplier :math:`e^{-λ_j h}`;
* derivative-free Runge–Kutta (`"runge-kutta"`) – :math:`D = \\left[g(·,Y_m+\\sqrt{h} g(·,Y_m)) - g(·,Y_m)\\right]/\\sqrt{h}`, multiplier :math:`e^{-λ_j h}`.

Per step, the Runge–Kutta scheme evaluates :math:`f` once and :math:`g` twice; the Milstein scheme evaluates each of :math:`f`, :math:`g` and :math:`∂g/∂y` once.
"""

from dataclasses import dataclass

import numpy as np

from spdeint.integrator_tools import UnsuccessfulIntegration, scheme_info, scheme_name, steps_for
from spdeint.noise import compensator_field, increment_fields, sample_lattice, truncate_modes
from spdeint.problems import apply_pointwise, builtin
from spdeint.spectral import SineBasis, to_coefficients, to_physical

@dataclass(frozen=True)
class RunConfig(object):
	"""
	Resolution and scheme of one simulation.

	Parameters
	----------
	n_modes : integer
		Number :math:`N` of Galerkin modes.

	steps : integer
		Number :math:`M` of time steps. Zero is allowed and returns the projected initial value.

	noise_modes : integer
		Number :math:`K` of simulated noise modes.

	scheme : string
		One of `"euler"`, `"milstein"` and `"runge-kutta"`.

	horizon : float
		The final time :math:`T`.
	"""
	n_modes: int
	steps: int
	noise_modes: int
	scheme: str
	horizon: float = 1.0

	def __post_init__(self):
		object.__setattr__(self, "scheme", scheme_name(self.scheme))
		for name in ("n_modes", "steps", "noise_modes"):
			value = getattr(self, name)
			if int(value) != value:
				raise ValueError("%s must be an integer, not %r." % (name, value))
			object.__setattr__(self, name, int(value))
		if self.n_modes < 1 or self.noise_modes < 1:
			raise ValueError("At least one mode and one noise mode are needed.")
		if self.steps < 0:
			raise ValueError("The number of steps must not be negative.")
		if not self.horizon > 0:
			raise ValueError("The horizon must be positive, not %r." % (self.horizon,))

	@property
	def h(self):
		"""
		The step size :math:`T/M` (zero if there are no steps).
		"""
		return self.horizon/self.steps if self.steps else 0.0

	@property
	def draws(self):
		"""
		The number :math:`MK` of normal random variables one path needs.
		"""
		return self.steps*self.noise_modes

	@classmethod
	def paired(cls, n, scheme, horizon=1.0, pairing=None, k=None):
		"""
		Creates a configuration with :math:`N=n`, :math:`M` determined from :math:`N` by the pairing rule (by default that of the scheme) and :math:`K=N` unless `k` is given.
		"""
		info = scheme_info(scheme)
		steps = steps_for(n, pairing or info["pairing"])
		return cls(n, steps, n if k is None else k, info["name"], horizon)

def _difference_quotient(spec, v, g_v, h, basis):
	sqrt_h = np.sqrt(h)
	return (apply_pointwise(spec.diffusion, v+sqrt_h*g_v, basis)-g_v)/sqrt_h

def gg_factor(spec, v, h, basis):
	"""
	Returns the factor :math:`\\left[g(x_k, v_k+\\sqrt{h} g(x_k,v_k)) - g(x_k,v_k)\\right]/\\sqrt{h}` of the derivative-free approximation :math:`GG(v,h)(u,ũ) = \\text{factor}·u·ũ` of the bilinear operator :math:`G'(v)G(v)`.
	"""
	if not h > 0:
		raise ValueError("The step size must be positive, not %r." % (h,))
	g_v = apply_pointwise(spec.diffusion, v, basis)
	return _difference_quotient(spec, v, g_v, h, basis)

def _product_factor(spec, v, g_v, basis):
	if not spec.has_derivative:
		raise ValueError("Problem %s provides no derivative of the diffusion, which the Milstein scheme needs." % spec.name)
	return apply_pointwise(spec.diffusion_dy, v, basis)*g_v

def milstein_factor(spec, v, basis):
	"""
	Returns :math:`(∂g/∂y)(x_k,v_k)\\, g(x_k,v_k)`, the pointwise factor of :math:`G'(v)G(v)`.
	"""
	g_v = apply_pointwise(spec.diffusion, v, basis)
	return _product_factor(spec, v, g_v, basis)

def _advance(spec, h, correction, state, dW, compensator, multipliers, basis):
	y = to_physical(state, basis)
	g_y = apply_pointwise(spec.diffusion, y, basis)
	zeta = y + h*apply_pointwise(spec.drift, y, basis) + g_y*dW

	if correction == "derivative-free":
		factor = _difference_quotient(spec, y, g_y, h, basis)
	elif correction == "milstein":
		factor = _product_factor(spec, y, g_y, basis)
	else:
		factor = None

	if factor is not None:
		zeta += 0.5*factor*(dW**2-compensator)

	result = multipliers*to_coefficients(zeta, basis)
	if not np.all(np.isfinite(result)):
		raise FloatingPointError("The state left the finite numbers.")
	return result

def step(spec, cfg, state, dW, compensator, basis):
	"""
	Performs one step of the scheme `cfg.scheme`.

	Parameters
	----------
	state : one-dimensional array
		The coefficients :math:`Y_m`.

	dW : one-dimensional array
		The increment field :math:`ΔW_m` on the grid.

	compensator : one-dimensional array
		:math:`h\\sum_{j≤K} μ_j η_j²` on the grid (see `compensator_field`). Ignored by the Euler scheme.

	Returns
	-------
	state : one-dimensional array
		The coefficients :math:`Y_{m+1}`.

	Raises
	------
	FloatingPointError
		if a coefficient function or the new state is not finite.
	"""
	info = scheme_info(cfg.scheme)
	multipliers = info["multipliers"](basis, cfg.h)
	return _advance(spec, cfg.h, info["correction"], state, dW, compensator, multipliers, basis)

def initial_coefficients(spec, basis):
	"""
	Returns :math:`Y_0 = P_N ξ` (using the trapezoidal rule on the grid).
	"""
	values = np.broadcast_to(np.asarray(spec.initial(basis.grid), dtype=float), basis.grid.shape)
	return to_coefficients(values, basis)

def _check_basis(spec, cfg, basis):
	if basis.n_modes != cfg.n_modes:
		raise ValueError("The basis has %i modes, but the configuration asks for %i." % (basis.n_modes, cfg.n_modes))
	if basis.diffusivity != spec.diffusivity:
		raise ValueError("The basis has diffusivity %r, but the problem %r." % (basis.diffusivity, spec.diffusivity))

def integrate(spec, cfg, lattice, basis=None):
	"""
	Integrates one trajectory from :math:`Y_0 = P_N ξ` to the final time and returns the terminal coefficients :math:`Y_M`.

	Parameters
	----------
	spec : `ProblemSpec`

	cfg : `RunConfig`

	lattice : `BrownianLattice`
		The increments of this path with exactly `cfg.steps` steps and at least `cfg.noise_modes` modes; the first `cfg.noise_modes` are used. May be `None` if `cfg.steps` is zero.

	basis : `SineBasis`
		Created from `cfg` and `spec` if not given.

	Raises
	------
	UnsuccessfulIntegration
		if the state becomes non-finite. The attribute `step` tells in which step.
	"""
	if basis is None:
		basis = SineBasis(cfg.n_modes, spec.diffusivity)
	_check_basis(spec, cfg, basis)

	info = scheme_info(cfg.scheme)
	if info["wants_derivative"] and not spec.has_derivative:
		raise ValueError("Problem %s provides no derivative of the diffusion, which the %s scheme needs." % (spec.name, info["name"]))

	state = initial_coefficients(spec, basis)
	if cfg.steps == 0:
		return state

	if lattice.steps != cfg.steps:
		raise ValueError("The lattice has %i steps, but the configuration asks for %i." % (lattice.steps, cfg.steps))
	if lattice.modes < cfg.noise_modes:
		raise ValueError("The lattice has %i modes, but the configuration asks for %i." % (lattice.modes, cfg.noise_modes))
	if not np.isclose(lattice.h, cfg.h, rtol=1e-12, atol=0):
		raise ValueError("The lattice has step size %r, but the configuration asks for %r." % (lattice.h, cfg.h))

	h = cfg.h
	lattice = truncate_modes(lattice, cfg.noise_modes)
	dW = increment_fields(spec.noise, lattice, basis)
	compensator = compensator_field(spec.noise, cfg.noise_modes, h, basis) if info["correction"] else None
	multipliers = info["multipliers"](basis, h)
	correction = info["correction"]

	for m in range(cfg.steps):
		try:
			state = _advance(spec, h, correction, state, dW[m], compensator, multipliers, basis)
		except FloatingPointError as error:
			raise UnsuccessfulIntegration(str(error), step=m) from error

	return state

def simulate(spec, cfg, base_seed=0, path_id=0, basis=None):
	"""
	Samples the lattice of path `path_id` at the resolution of `cfg` and integrates it. Returns the terminal coefficients.
	"""
	lattice = None
	if cfg.steps:
		lattice = sample_lattice(cfg.steps, cfg.noise_modes, cfg.h, base_seed, path_id)
	return integrate(spec, cfg, lattice, basis)

def test(sympy=True):
	"""
		Runs a short simulation with every scheme to test whether:

		* SymEngine can translate and differentiate the coefficients,
		* SciPy’s sine transforms and NumPy’s Philox generator are available,
		* SymPy is available.

		The last test can be deactivated with the respective argument. This is not a full software test but rather a quick sanity check of your installation. If successful, this function just finishes without any message.
	"""
	if sympy:
		import sympy
	spec = builtin("heat-sine")
	for scheme in ("euler", "milstein", "runge-kutta"):
		cfg = RunConfig.paired(4, scheme, spec.horizon)
		simulate(spec, cfg, base_seed=0, path_id=0)
