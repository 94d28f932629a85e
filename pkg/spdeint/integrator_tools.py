from spdeint.spectral import resolvent_multipliers, semigroup_multipliers

class UnsuccessfulIntegration(Exception):
	"""
		This exception is raised when a trajectory leaves the finite numbers, which for the globally Lipschitz coefficients considered here signals a bug in a coefficient function. The attributes `step` and `path` tell where this happened (`None` if unknown). If you want to know the state of your system before the integration fails, catch this exception.
	"""
	def __init__(self, message="", step=None, path=None):
		self.step = step
		self.path = path
		self.message = message
		super(UnsuccessfulIntegration, self).__init__(self._describe())

	def _describe(self):
		where = []
		if self.path is not None:
			where.append("path %i" % self.path)
		if self.step is not None:
			where.append("step %i" % self.step)
		prefix = "Integration failed in %s" % ", ".join(where) if where else "Integration failed"
		return "%s: %s" % (prefix, self.message) if self.message else prefix

	def at_path(self, path):
		return UnsuccessfulIntegration(self.message, step=self.step, path=path)

SCHEMES = ("euler", "milstein", "runge-kutta")

_ALIASES = {
		"euler": "euler",
		"implicit-euler": "euler",
		"linear-implicit-euler": "euler",
		"milstein": "milstein",
		"runge-kutta": "runge-kutta",
		"rk": "runge-kutta",
	}

PAIRINGS = {"m=n2": 2, "m=n3": 3, "m=n4": 4}

def scheme_name(name):
	"""
	Normalises the name of a scheme (e.g., `"Runge_Kutta"` or `"rk"` become `"runge-kutta"`).
	"""
	key = str(name).strip().lower().replace("_", "-")
	try:
		return _ALIASES[key]
	except KeyError:
		raise ValueError("There is no scheme named %r; known are: %s." % (name, ", ".join(SCHEMES))) from None

def scheme_info(name):
	"""
	Finds out the scheme from a given name and returns:

	* `"name"` – the normalised name;
	* `"multipliers"` – the function returning the per-mode linear multipliers (the resolvent for Euler, the semigroup otherwise);
	* `"correction"` – `None`, `"milstein"` or `"derivative-free"`, i.e., which second-order term is added;
	* `"wants_derivative"` – whether :math:`∂g/∂y` must be available;
	* `"pairing"` – the default rule linking the number of steps to the number of modes.
	"""
	name = scheme_name(name)
	if name == "euler":
		return {
				"name": name,
				"multipliers": resolvent_multipliers,
				"correction": None,
				"wants_derivative": False,
				"pairing": "m=n3",
			}
	else:
		return {
				"name": name,
				"multipliers": semigroup_multipliers,
				"correction": "milstein" if name=="milstein" else "derivative-free",
				"wants_derivative": name=="milstein",
				"pairing": "m=n2",
			}

def pairing_power(pairing):
	"""
	The power in a pairing rule such as `"m=n2"` (:math:`M=N²`).
	"""
	try:
		return PAIRINGS[str(pairing).strip().lower().replace(" ", "")]
	except KeyError:
		raise ValueError("Unknown pairing %r; known are: %s." % (pairing, ", ".join(PAIRINGS))) from None

def steps_for(n, pairing):
	"""
	Number of time steps :math:`M` paired with :math:`N` modes by a rule such as `"m=n2"` (:math:`M=N²`).
	"""
	return int(n)**pairing_power(pairing)

def report(message, verbose=True):
	"""
	Prints a progress report if `verbose`.
	"""
	if verbose:
		print(message, flush=True)
