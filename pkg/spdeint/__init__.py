from .problems import (
		x, y,
		ProblemSpec, Regularity, problem_from_expressions, builtin,
		predicted_rates, predicted_slope,
		)
from .noise import NoiseSpectrum, BrownianLattice, sample_lattice, coarsen_time, truncate_modes
from .spectral import SineBasis, dst, idst, to_physical, to_coefficients
from .schemes import RunConfig, integrate, simulate, step, test
from .experiments import LevelPlan, strong_error, compare_schemes, check_gg_assumption, runtime_table, fit_order
from .integrator_tools import UnsuccessfulIntegration

try:
	from .version import version as __version__
except ImportError:
	from warnings import warn
	warn('Failed to find (autogenerated) version.py. Do not worry about this unless you really need to know the version.')
