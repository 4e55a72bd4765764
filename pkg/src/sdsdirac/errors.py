"""Exception taxonomy shared across the package.

Every error raised on a documented failure path derives from
:class:`SdsDiracError`, so callers (in particular the CLI) can map the whole
family to a single validation exit code while still discriminating causes.
"""


class SdsDiracError(Exception):
    """Base class for all errors raised by sdsdirac."""


class ParameterError(SdsDiracError, ValueError):
    """A model parameter or quantum number is outside its allowed range."""


class RegimeBoundaryError(SdsDiracError):
    """The regime discriminant Q(m*omega) vanishes exactly.

    The boundary belongs to neither spectrum branch; the strict inequalities
    defining the two regimes exclude it.
    """


class BranchValidityError(SdsDiracError):
    """A spectrum branch was requested for parameters where it is invalid."""


class DomainConditionError(SdsDiracError):
    """A wavefunction violates a normalizability or domain condition."""


class GridMismatchError(SdsDiracError):
    """Two grid quantities that must share a grid (and alignment) do not."""


class DivergenceError(SdsDiracError):
    """A weighted integral diverges at the momentum-space wall."""


class NumericsError(SdsDiracError):
    """An underlying numerical routine failed (eigensolver, recurrence)."""
