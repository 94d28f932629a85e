#!/usr/bin/python3
# -*- coding: utf-8 -*-

"""
Command-line front end. Every run is determined by the arguments and the seed, which is taken from `--seed`, else from the environment variable `SPDE_SEED`, else 42.

Exit codes: 0 success, 1 failure to write the output or to integrate, 2 usage error, 3 failed acceptance check (`check`).
"""

import argparse
import csv
import os
import sys
from dataclasses import dataclass

import numpy as np

from spdeint.experiments import LevelPlan, check_gg_assumption, compare_schemes, runtime_table, strong_error
from spdeint.integrator_tools import PAIRINGS, SCHEMES, UnsuccessfulIntegration, scheme_info, scheme_name, steps_for
from spdeint.problems import BUILTINS, builtin, format_rate
from spdeint.schemes import RunConfig, simulate
from spdeint.spectral import SineBasis, to_physical

DEFAULT_SEED = 42

REPORT_HEADER = ["problem", "scheme", "N", "M", "K", "paths", "seed", "rms_error", "mc_stderr", "rng_draws", "seconds"]

@dataclass(frozen=True)
class CliConfig(object):
	subcommand: str
	problem: str = "heat-sine"
	scheme: str = "runge-kutta"
	n: int = None
	m: int = None
	k: int = None
	pairing: str = None
	levels: tuple = ()
	ref_n: int = None
	paths: int = 100
	seed: int = DEFAULT_SEED
	path_id: int = 0
	out: str = "-"
	format: str = "csv"
	threads: int = None
	timing: bool = False
	trials: int = 50
	repeats: int = 3
	verbose: bool = False

	@property
	def delimiter(self):
		return "\t" if self.format == "tsv" else ","

	def plan(self):
		"""
		The `LevelPlan` of a `convergence` or `compare` run.
		"""
		return LevelPlan.paired(self.levels, self.pairing, self.ref_n, self.paths, self.seed)

def _levels(text):
	try:
		return tuple(int(entry) for entry in text.split(",") if entry.strip())
	except ValueError:
		raise argparse.ArgumentTypeError("levels must be a comma-separated list of integers, not %r" % text) from None

def _positive(text):
	try:
		value = int(text)
	except ValueError:
		raise argparse.ArgumentTypeError("expected a positive integer, not %r" % text) from None
	if value < 1:
		raise argparse.ArgumentTypeError("expected a positive integer, not %r" % text)
	return value

def _non_negative(text):
	try:
		value = int(text)
	except ValueError:
		raise argparse.ArgumentTypeError("expected a non-negative integer, not %r" % text) from None
	if value < 0:
		raise argparse.ArgumentTypeError("expected a non-negative integer, not %r" % text)
	return value

def _problem(text):
	name = text.replace("_", "-").lower()
	if name not in BUILTINS:
		raise argparse.ArgumentTypeError("unknown problem %r (choose from %s)" % (text, ", ".join(BUILTINS)))
	return name

def _scheme(text):
	try:
		return scheme_name(text)
	except ValueError:
		raise argparse.ArgumentTypeError("unknown scheme %r (choose from %s)" % (text, ", ".join(SCHEMES))) from None

def _pairing(text):
	rule = text.strip().lower().replace(" ", "")
	if rule not in PAIRINGS:
		raise argparse.ArgumentTypeError("unknown pairing %r (choose from %s)" % (text, ", ".join(PAIRINGS)))
	return rule

def build_parser():
	common = argparse.ArgumentParser(add_help=False)
	common.add_argument("--problem", type=_problem, default="heat-sine", help="built-in problem: %s" % " | ".join(BUILTINS))
	common.add_argument("--seed", type=_non_negative, default=None, help="base seed (default: $SPDE_SEED or %i)" % DEFAULT_SEED)
	common.add_argument("--out", default="-", help="output file; '-' for standard output")
	common.add_argument("--format", choices=("csv", "tsv"), default="csv")
	common.add_argument("--verbose", action="store_true", help="report progress")

	resolution = argparse.ArgumentParser(add_help=False)
	resolution.add_argument("--pairing", type=_pairing, default=None, help="rule for the number of steps: m=n2 | m=n3 | m=n4 (default: m=n3 for Euler, m=n2 otherwise)")

	monte_carlo = argparse.ArgumentParser(add_help=False)
	monte_carlo.add_argument("--levels", type=_levels, default=(4, 8, 16, 32), help="comma-separated numbers of modes")
	monte_carlo.add_argument("--ref-n", type=_positive, default=None, help="modes of the reference (default: twice the largest level)")
	monte_carlo.add_argument("--paths", type=_positive, default=100)
	monte_carlo.add_argument("--threads", type=_positive, default=None, help="maximal number of worker threads (default: number of processors)")

	parser = argparse.ArgumentParser(
			prog = "spdeint",
			description = "Spectral Galerkin simulation of parabolic SPDEs with multiplicative trace-class noise.",
		)
	subparsers = parser.add_subparsers(dest="subcommand", metavar="subcommand", required=True)

	run = subparsers.add_parser("run", parents=[common, resolution], help="simulate one path and write the terminal profile")
	run.add_argument("--scheme", type=_scheme, default="runge-kutta")
	run.add_argument("--n", type=_positive, default=32)
	run.add_argument("--m", type=_positive, default=None, help="number of steps (default: from the pairing)")
	run.add_argument("--k", type=_positive, default=None, help="number of noise modes (default: N)")
	run.add_argument("--path-id", type=_non_negative, default=0)

	convergence = subparsers.add_parser("convergence", parents=[common, resolution, monte_carlo], help="estimate strong errors and the convergence order")
	convergence.add_argument("--scheme", type=_scheme, default="runge-kutta")
	convergence.add_argument("--timing", action="store_true", help="fill the seconds column (breaks byte-identical reruns)")

	subparsers.add_parser("compare", parents=[common, resolution, monte_carlo], help="compare all schemes on common noise")

	check = subparsers.add_parser("check", parents=[common], help="check the conditions on the derivative-free operator")
	check.add_argument("--n", type=_positive, default=32)
	check.add_argument("--k", type=_positive, default=16)
	check.add_argument("--trials", type=_positive, default=50)

	bench = subparsers.add_parser("bench", parents=[common], help="measure the runtime of one path per scheme")
	bench.add_argument("--levels", type=_levels, default=(16, 32), help="comma-separated numbers of modes")
	bench.add_argument("--repeats", type=_positive, default=3)

	return parser

def _seed(parser, arguments, environ):
	if arguments.seed is not None:
		return arguments.seed
	if environ.get("SPDE_SEED"):
		try:
			return _non_negative(environ["SPDE_SEED"])
		except argparse.ArgumentTypeError as error:
			parser.error("SPDE_SEED: %s" % error)
	return DEFAULT_SEED

def parse_args(argv=None, environ=None):
	"""
	Parses the command line into a `CliConfig`. Malformed arguments print the usage and exit with code 2.
	"""
	parser = build_parser()
	arguments = parser.parse_args(argv)
	environ = os.environ if environ is None else environ

	values = {
			key: value
			for key, value in vars(arguments).items()
			if key in CliConfig.__dataclass_fields__
		}
	values["seed"] = _seed(parser, arguments, environ)
	if "scheme" in values:
		values["pairing"] = values.get("pairing") or scheme_info(values["scheme"])["pairing"]
	elif "pairing" in values:
		values["pairing"] = values["pairing"] or "m=n2"

	if arguments.subcommand == "run":
		if values["m"] is None:
			values["m"] = steps_for(values["n"], values["pairing"])
		if values["k"] is None:
			values["k"] = values["n"]

	config = CliConfig(**values)

	if config.subcommand in ("convergence", "compare"):
		try:
			config.plan()
		except ValueError as error:
			parser.error(str(error))

	if config.subcommand == "check" and config.k > config.n:
		parser.error("cannot check %i noise modes on a basis with %i modes" % (config.k, config.n))

	return config

def _format(value):
	if isinstance(value, (bool, np.bool_)):
		return str(bool(value)).lower()
	if isinstance(value, (int, np.integer)):
		return str(int(value))
	if isinstance(value, (float, np.floating)):
		return "%.17g" % value
	return str(value)

def _write_table(header, rows, footers, config):
	"""
	Writes a table with `header`, `rows` and comment lines `# key=value` for `footers`. Returns the exit code.
	"""
	try:
		if config.out == "-":
			_write_to(sys.stdout, header, rows, footers, config)
		else:
			with open(config.out, "w", newline="") as stream:
				_write_to(stream, header, rows, footers, config)
	except OSError as error:
		print("spdeint: cannot write %s: %s" % (config.out, error), file=sys.stderr)
		return 1
	return 0

def _write_to(stream, header, rows, footers, config):
	writer = csv.writer(stream, delimiter=config.delimiter, lineterminator="\n")
	writer.writerow(header)
	for row in rows:
		writer.writerow([_format(value) for value in row])
	for key, value in footers:
		stream.write("# %s=%s\n" % (key, _format(value)))

def emit_report(report, config):
	"""
	Writes an `ErrorReport` as one row per level plus comment lines with the fitted and predicted slopes, the predicted rates in the form `1.5-` (holding up to an arbitrarily small loss) and ϑ if the problem provides it. Returns the exit code.
	"""
	rows = [
			[
				report.problem, report.scheme, level.n, level.m, level.k,
				report.paths, report.base_seed, level.rms_error, level.mc_standard_error,
				level.draws, level.seconds if config.timing else "",
			]
			for level in report.levels
		]
	footers = []
	if report.levels:
		footers = [
				("fitted_slope", report.fitted_slope),
				("slope_stderr", report.slope_stderr),
				("predicted_slope", report.predicted_slope),
				("effort_slope", report.effort_slope),
			]
		if np.isfinite(report.predicted_slope):
			footers.append(("predicted_rate", format_rate(-report.predicted_slope)))
		if np.isfinite(report.predicted_order):
			footers.append(("predicted_overall_order", format_rate(report.predicted_order)))
	if report.theta is not None:
		footers.append(("theta", report.theta))
	return _write_table(REPORT_HEADER, rows, footers, config)

def _run(config):
	spec = builtin(config.problem)
	cfg = RunConfig(config.n, config.m, config.k, config.scheme, spec.horizon)
	basis = SineBasis(cfg.n_modes, spec.diffusivity)
	terminal = simulate(spec, cfg, config.seed, config.path_id, basis)
	grid = np.concatenate([[0.0], basis.grid, [1.0]])
	values = np.concatenate([[0.0], to_physical(terminal, basis), [0.0]])
	footers = [
			("problem", spec.name), ("scheme", cfg.scheme),
			("N", cfg.n_modes), ("M", cfg.steps), ("K", cfg.noise_modes),
			("seed", config.seed), ("path_id", config.path_id),
		]
	return _write_table(["x", "value"], zip(grid, values), footers, config)

def _convergence(config):
	spec = builtin(config.problem)
	report = strong_error(spec, config.scheme, config.plan(), config.threads, config.verbose)
	return emit_report(report, config)

def _compare(config):
	spec = builtin(config.problem)
	plan = config.plan()
	comparisons = compare_schemes(spec, plan, config.threads, config.verbose)
	header = ["problem", "N", "M", "K", "paths", "seed", "err_rk", "err_mil", "err_euler", "rk_mil_distance"]
	rows = [
			[
				spec.name, entry.n, entry.m, entry.k, plan.paths, plan.base_seed,
				entry.err_rk, entry.err_mil, entry.err_euler, entry.rk_mil_distance,
			]
			for entry in comparisons
		]
	return _write_table(header, rows, [], config)

def _check(config):
	spec = builtin(config.problem)
	basis = SineBasis(config.n, spec.diffusivity)
	result = check_gg_assumption(spec, config.k, basis, config.trials, config.seed, verbose=config.verbose)
	rows = zip(result.step_sizes, result.lipschitz_constants, result.remainder_constants)
	footers = [("lipschitz_ok", result.lipschitz_ok), ("remainder_ok", result.remainder_ok)]
	code = _write_table(["h", "lipschitz_constant", "remainder_constant"], rows, footers, config)
	if code == 0 and not result.passed:
		return 3
	return code

def _bench(config):
	spec = builtin(config.problem)
	timings = runtime_table(spec, config.levels, config.repeats, base_seed=config.seed, verbose=config.verbose)
	header = ["problem", "scheme", "N", "M", "K", "steps", "rng_draws", "seconds"]
	rows = [
			[spec.name, timing.scheme, timing.n, timing.m, timing.k, timing.steps, timing.draws, timing.seconds]
			for timing in timings
		]
	return _write_table(header, rows, [], config)

COMMANDS = {
		"run": _run,
		"convergence": _convergence,
		"compare": _compare,
		"check": _check,
		"bench": _bench,
	}

def main(argv=None):
	config = parse_args(argv)
	try:
		return COMMANDS[config.subcommand](config)
	except UnsuccessfulIntegration as error:
		print("spdeint: %s" % error, file=sys.stderr)
		return 1

if __name__ == "__main__":
	sys.exit(main())
