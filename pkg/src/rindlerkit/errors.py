"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: ConfigurationError -> 2, any
NumericalDomainError (incl. DegenerateModeError) -> 3, check failures -> 1.
"""


class RindlerkitError(Exception):
    """Base class for all library errors."""


class ConfigurationError(RindlerkitError):
    """Invalid parameters, grids, config files or CLI flags."""


class NumericalDomainError(RindlerkitError):
    """Inputs outside the numerical domain of an operation."""


class DegenerateModeError(NumericalDomainError):
    """Mode with (near-)zero Klein-Gordon norm, or essentially behind the horizon."""
