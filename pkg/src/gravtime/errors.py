"""Exception taxonomy shared by all gravtime modules.

Estimation-layer errors signal degenerate information geometry (a caller
asked for a profiling operation that does not exist at that point);
oracle-layer errors signal numerical trouble (unconverged steps,
under-resolved grids, truncation loss).  Plain ``ValueError`` is reserved
for malformed inputs that violate type invariants at construction time.
"""


class GravtimeError(Exception):
    """Base class for all library-specific errors."""


# -- information-geometry degeneracies ------------------------------------

class DegenerateTimingBlock(GravtimeError):
    """The timing block f_tt (plus any prior) is numerically zero; the bare
    Schur complement is undefined and regularized profiling is required."""


class DegenerateBlock(GravtimeError):
    """A diagonal information entry vanishes; correlation is undefined."""


class NonpositiveInformation(GravtimeError):
    """A variance bound was requested for nonpositive effective information."""


class DegenerateTimingSector(GravtimeError):
    """The quadratic timing coefficient c2 vanishes (no curvature in g)."""


class DegenerateAxis(GravtimeError):
    """The completed-square width g_* is numerically zero."""


class DegenerateBaseline(GravtimeError):
    """The baseline gravity information f_gg vanishes; normalized
    coefficients are undefined."""


class KernelOutOfRange(GravtimeError):
    """The retention kernel left [0,1] by more than the rounding band,
    which means the supplied coefficients are not consistent with any
    positive-semidefinite information matrix."""


class SingularWithoutPrior(GravtimeError):
    """Regularized profiling of an exactly rank-one geometry was requested
    with no timing prior."""


class Indeterminate(GravtimeError):
    """A retention ratio reduced to 0/0 (no motional channel and no
    gravitational phase)."""


class InvalidTarget(GravtimeError):
    """A retention target outside (0, 1) was supplied."""


# -- oracle numerics -------------------------------------------------------

class ConvergenceFailure(GravtimeError):
    """Halving the propagation step changed the final state beyond the
    fidelity budget."""


class StepTooLarge(GravtimeError):
    """Finite-difference step failed the Richardson consistency test."""


class StepTooSmall(GravtimeError):
    """Finite-difference entries are dominated by roundoff (no convergent
    plateau across the three-step sweep)."""


class QuadratureNotConverged(GravtimeError):
    """Doubling the generator quadrature changed the entries beyond
    tolerance."""


class GridUnderResolved(GravtimeError):
    """The position grid cannot hold the state (momentum support too close
    to Nyquist, or the trajectory leaves the safe interior of the box)."""


class TruncationTail(GravtimeError):
    """A truncated Fock computation left more than the allowed weight in
    the discarded tail."""
