"""Exception types shared across the laboratory.

Numerical breakdowns (kernel hits, resolution limits, embedded resonances)
are reported through dedicated exceptions so sweep drivers can flag and skip
the exceptional point instead of interpolating over it.
"""


class SsfLabError(Exception):
    """Base class for all laboratory errors."""


class NotHermitian(SsfLabError):
    pass


class NotUnitary(SsfLabError):
    pass


class NotProjection(SsfLabError):
    pass


class KernelAtZero(SsfLabError):
    """An eigenvalue sits inside the strictness guard around zero.

    Signals a jump point of the flow function / a non-Fredholm midpoint;
    the caller is expected to re-sample.
    """

    def __init__(self, eigenvalues):
        self.eigenvalues = list(eigenvalues)
        super().__init__(f"eigenvalue(s) within the zero guard: {self.eigenvalues}")


class IndexMismatch(SsfLabError):
    """Kernel-counting and trace computations of the index disagree."""


class DomainViolation(SsfLabError):
    pass


class SingularM(SsfLabError):
    pass


class RefinementLimitExceeded(SsfLabError):
    """No certified spectral gap was found at the maximum bisection depth."""


class EndpointDivergence(SsfLabError):
    """Spectrum classes of a path do not settle at an endpoint."""


class BoundaryUndefined(SsfLabError):
    """No boundary value of the sandwiched resolvent at this energy."""


class BranchAtThreshold(SsfLabError):
    pass


class ResolventIdentityViolation(SsfLabError):
    pass


class PoleHit(SsfLabError):
    pass


class NonInvertibleSymbol(SsfLabError):
    """The boundary symbol is singular (embedded resonance); skip the point."""


class AdmissibilityViolation(SsfLabError):
    pass


class UnwindFailure(SsfLabError):
    """Argument tracking could not be unwound at the refinement limit."""


class AnchorNotReached(SsfLabError):
    """The determinant does not settle near 1 at the top of the tracking path."""


class MethodDisagreement(SsfLabError):
    """Two independent constructions of the same quantity disagree."""


class EigenvalueAtLambda(SsfLabError):
    pass
