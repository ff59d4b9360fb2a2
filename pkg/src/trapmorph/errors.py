"""Exception hierarchy for trapmorph.

Everything raised deliberately by this package derives from TrapMorphError,
so callers (notably the CLI) can separate physics/setup failures from bugs.
"""


class TrapMorphError(Exception):
    """Base class for all trapmorph errors."""


class RegimeError(TrapMorphError):
    """Potential parameters outside the regime required by an operation
    (e.g. asking for double-well geometry of an unbounded potential)."""


class GridError(TrapMorphError):
    """Spatial grid too small, too coarse, or mismatched between objects."""


class ConfinementError(GridError):
    """Eigenstate or propagated wavefunction leaks into the grid boundary."""


class DegeneracyError(TrapMorphError):
    """Energy gap below tolerance where a finite gap is required."""


class FlatDirectionError(TrapMorphError):
    """Adiabaticity integrand vanished somewhere; schedule design ill-posed."""


class ScheduleError(TrapMorphError):
    """Malformed or non-monotone schedule."""


class PropagationError(TrapMorphError):
    """Time stepping failed its stability or norm-conservation checks."""


class CacheError(TrapMorphError):
    """Corrupt or incompatible on-disk cache entry."""


class UsageError(TrapMorphError):
    """Bad user input at the CLI/config level (exit code 2)."""
