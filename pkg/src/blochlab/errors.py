"""Exception types shared across the package."""


class BlochLabError(Exception):
    """Base class for all package-specific errors."""


class ConfigMismatchError(BlochLabError):
    """Two objects built on different lattice configurations were combined."""


class NonRealPotentialError(BlochLabError):
    """A real potential was required but a genuinely complex one was given."""


class OutsideOmegaError(BlochLabError):
    """A multiplier point lies outside the configured separation domain."""


class EigenvalueMatchingError(BlochLabError):
    """Eigenvalues could not be matched bijectively to their leading terms."""


class SolveBudgetError(BlochLabError):
    """The multistart inverse solver exhausted its attempt budget."""


class PotentialFileError(BlochLabError):
    """A potential file is missing, malformed, or inconsistent."""
