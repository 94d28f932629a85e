#!/usr/bin/python3
# -*- coding: utf-8 -*-

"""
Registry of parabolic SPDEs

.. math::

	dX_t(x) = \\left[ k ∂_x² X_t(x) + f(x,X_t(x)) \\right] dt + g(x,X_t(x))\\, dW_t(x), \\qquad X_t(0)=X_t(1)=0, \\qquad X_0=ξ.

Coefficient functions are vectorised Python callables `fun(x,y)` acting on arrays of grid points and values. They can be written by hand or obtained from symbolic expressions in the symbols `x` and `y`, in which case :math:`∂g/∂y` is derived automatically.
"""

from dataclasses import dataclass, field
from warnings import warn

import numpy as np
import symengine

from spdeint.integrator_tools import scheme_name
from spdeint.noise import NoiseSpectrum

#: the symbol for the spatial coordinate when defining coefficients symbolically. You can import a SymPy variant from the submodule `sympy_symbols` instead.
x = symengine.Symbol("x", real=True)

#: the symbol for the state value when defining coefficients symbolically. You can import a SymPy variant from the submodule `sympy_symbols` instead.
y = symengine.Symbol("y", real=True)

def lambdify_coefficient(expression):
	"""
	Translates a symbolic expression in `x` and `y` (SymEngine or SymPy) to a vectorised function `fun(x,y)` using SymEngine’s `Lambdify`.
	"""
	expression = symengine.sympify(expression)
	for symbol in expression.free_symbols:
		if symbol not in (x, y):
			raise ValueError("Invalid symbol (%s) in coefficient %s." % (symbol, expression))

	core = symengine.Lambdify([x, y], [expression])

	def coefficient(xs, ys):
		xs, ys = np.broadcast_arrays(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float))
		values = core(np.stack([xs, ys], axis=-1))
		return np.reshape(np.asarray(values, dtype=float), ys.shape)

	coefficient.expression = expression
	return coefficient

@dataclass(frozen=True)
class Regularity(object):
	"""
	Regularity exponents of a problem. Open intervals such as :math:`γ∈(½,¾)` are stored by their supremum; rates derived from them hold up to an arbitrarily small loss (the “b−” convention, see `format_rate`).

	`theta` is only echoed in reports.
	"""
	beta: float
	gamma: float
	delta: float
	alpha: float
	theta: float = None

	def __post_init__(self):
		beta, gamma, delta, alpha = self.beta, self.gamma, self.delta, self.alpha
		# closures of the admissible intervals, as the endpoints are stored
		if not 0 < delta <= 0.5:
			raise ValueError("δ must lie in (0,½], not %r." % (delta,))
		if not beta <= delta+0.5:
			raise ValueError("β must not exceed δ+½.")
		if not max(delta, beta) <= gamma <= delta+0.5:
			raise ValueError("γ must lie in [max(δ,β), δ+½].")
		if not alpha > 0:
			raise ValueError("α must be positive, not %r." % (alpha,))

@dataclass(frozen=True)
class ProblemSpec(object):
	"""
	A fully specified SPDE.

	Parameters
	----------
	name : string
		Label used in reports.

	diffusivity : float
		The constant :math:`k>0`.

	horizon : float
		The final time :math:`T>0`.

	drift, diffusion : callables
		Vectorised :math:`f(x,y)` and :math:`g(x,y)`.

	diffusion_dy : callable or `None`
		Vectorised :math:`∂g/∂y(x,y)`. Only needed for the Milstein scheme.

	initial : callable
		Vectorised :math:`ξ(x)`.

	noise : `NoiseSpectrum`

	regularity : `Regularity` or `None`
		Only needed for predicting convergence rates.
	"""
	name: str
	diffusivity: float
	horizon: float
	drift: object
	diffusion: object
	diffusion_dy: object
	initial: object
	noise: NoiseSpectrum
	regularity: Regularity = None
	expressions: dict = field(default=None, compare=False, repr=False)

	def __post_init__(self):
		if not self.diffusivity > 0:
			raise ValueError("The diffusivity must be positive, not %r." % (self.diffusivity,))
		if not self.horizon > 0:
			raise ValueError("The horizon must be positive, not %r." % (self.horizon,))
		for name in ("drift", "diffusion", "initial"):
			if not callable(getattr(self, name)):
				raise ValueError("The %s must be callable." % name)

	@property
	def has_derivative(self):
		return self.diffusion_dy is not None

def zero_initial(xs):
	return np.zeros_like(np.asarray(xs, dtype=float))

def problem_from_expressions(
			name, diffusivity, horizon, drift, diffusion, noise,
			initial=zero_initial, regularity=None, diffusion_dy=None,
		):
	"""
	Creates a `ProblemSpec` from symbolic expressions for :math:`f` and :math:`g` in `x` and `y`. Unless `diffusion_dy` is given, :math:`∂g/∂y` is obtained by symbolic differentiation.

	`initial` is a vectorised callable or a symbolic expression in `x`.
	"""
	drift = symengine.sympify(drift)
	diffusion = symengine.sympify(diffusion)
	drift_function = lambdify_coefficient(drift)
	diffusion_function = lambdify_coefficient(diffusion)
	if diffusion_dy is None:
		diffusion_dy = symengine.diff(diffusion_function.expression, y)
	derivative_function = lambdify_coefficient(diffusion_dy)

	if hasattr(initial, "free_symbols") or not callable(initial):
		initial_expression = lambdify_coefficient(initial)
		initial = lambda xs: initial_expression(xs, 0.0)

	return ProblemSpec(
			name = name,
			diffusivity = diffusivity,
			horizon = horizon,
			drift = drift_function,
			diffusion = diffusion_function,
			diffusion_dy = derivative_function,
			initial = initial,
			noise = noise,
			regularity = regularity,
			expressions = {
				"drift": drift_function.expression,
				"diffusion": diffusion_function.expression,
				"diffusion_dy": derivative_function.expression,
			},
		)

def _heat_sine(name="heat-sine", diffusion=(y+symengine.sin(y)**3)/(1+y**2)**2):
	return problem_from_expressions(
			name = name,
			diffusivity = 1/200,
			horizon = 1.0,
			drift = 1-2*y,
			diffusion = diffusion,
			noise = NoiseSpectrum("sine", decay=2),
			regularity = Regularity(beta=0.2, gamma=0.75, delta=0.25, alpha=0.75),
		)

def _heat_cosine():
	return problem_from_expressions(
			name = "heat-cosine",
			diffusivity = 1/50,
			horizon = 1.0,
			drift = 1-y,
			diffusion = y/(1+y**2),
			noise = NoiseSpectrum("cosine", decay=3),
			regularity = Regularity(beta=0.2, gamma=1.0, delta=0.5, alpha=2/3),
		)

BUILTINS = {
		"heat-sine": _heat_sine,
		"heat-cosine": _heat_cosine,
		"linear-g": lambda: _heat_sine("linear-g", y),
		"zero-noise": lambda: _heat_sine("zero-noise", symengine.Integer(0)),
	}

def builtin(name):
	"""
	Returns one of the built-in problems:

	* `"heat-sine"` – :math:`k=1/200`, :math:`f=1-2y`, :math:`g=(y+\\sin³y)/(1+y²)²`, :math:`μ_j=j^{-2}` with sine eigenfunctions;
	* `"heat-cosine"` – :math:`k=1/50`, :math:`f=1-y`, :math:`g=y/(1+y²)`, :math:`μ_0=0, μ_j=j^{-3}` with cosine eigenfunctions;
	* `"linear-g"` – like `"heat-sine"` with :math:`g=y`;
	* `"zero-noise"` – like `"heat-sine"` with :math:`g=0`.

	All have :math:`T=1` and :math:`ξ=0`.
	"""
	name = name.replace("_", "-").lower()
	try:
		factory = BUILTINS[name]
	except KeyError:
		raise ValueError("Unknown problem %r; known are: %s." % (name, ", ".join(BUILTINS))) from None
	return factory()

def apply_pointwise(fun, v, basis):
	"""
	Evaluates :math:`w(x_k) = \\text{fun}(x_k, v(x_k))` at every grid point.

	Raises
	------
	FloatingPointError
		if any value is not finite.
	"""
	v = np.asarray(v, dtype=float)
	if v.shape != (basis.n_modes,):
		raise ValueError("The field has shape %s, but the basis has %i points." % (v.shape, basis.n_modes))
	result = np.asarray(fun(basis.grid, v), dtype=float)
	if result.shape != v.shape:
		result = np.broadcast_to(result, v.shape).copy()
	if not np.all(np.isfinite(result)):
		raise FloatingPointError("Coefficient function returned non-finite values.")
	return result

@dataclass(frozen=True)
class PredictedRates(object):
	"""
	Exponents of the strong error bound :math:`C(λ_N^{-γ} + (\\sup_{j>K} μ_j)^α + M^{-\\text{temporal}})`.

	`spatial` is the exponent in :math:`N` (:math:`2γ`), `noise` the exponent :math:`α` of the largest neglected noise eigenvalue and `temporal` the exponent in :math:`M`.
	"""
	spatial: float
	noise: float
	temporal: float

	def n_exponent(self, m_power, k_power, decay):
		"""
		The exponent in :math:`N` when :math:`M=N^\\text{m_power}`, :math:`K=N^\\text{k_power}` and :math:`μ_j=j^{-\\text{decay}}`.
		"""
		return min(self.spatial, self.noise*decay*k_power, self.temporal*m_power)

	def overall_order(self, m_power, k_power, decay):
		"""
		The exponent with respect to the computational effort, measured by the :math:`MK = N^{\\text{m_power}+\\text{k_power}}` normal random variables needed.
		"""
		return self.n_exponent(m_power, k_power, decay)/(m_power+k_power)

def predicted_rates(spec, scheme="runge-kutta"):
	"""
	Returns the `PredictedRates` of `spec`. For the Milstein and Runge–Kutta schemes, the temporal exponent is :math:`\\min(2(γ-β),γ)`; for the linear implicit Euler scheme it is :math:`\\min(γ,½)`.
	"""
	regularity = spec.regularity
	if regularity is None:
		raise ValueError("Problem %s has no regularity data." % spec.name)
	gamma, beta = regularity.gamma, regularity.beta

	if scheme_name(scheme) == "euler":
		temporal = min(gamma, 0.5)
	else:
		temporal = min(2*(gamma-beta), gamma)

	return PredictedRates(spatial=2*gamma, noise=regularity.alpha, temporal=temporal)

def predicted_slope(spec, scheme, m_power, k_power):
	"""
	The slope of log error against log N predicted for `spec` with the given pairing, or NaN with a warning if this cannot be predicted.
	"""
	if spec.regularity is None or spec.noise.decay is None:
		warn("No convergence rate can be predicted for problem %s." % spec.name)
		return float("nan")
	rates = predicted_rates(spec, scheme)
	return -rates.n_exponent(m_power, k_power, spec.noise.decay)

def format_rate(exponent):
	"""
	Renders a rate that holds up to an arbitrarily small loss, e.g., `1.5-`.
	"""
	return "%g-" % exponent
