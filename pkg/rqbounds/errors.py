"""
Exceptions raised by rqbounds.

All exceptions derive from `CertificationError`, itself a `ValueError`, so callers
that only care about "bad input for this computation" can catch one type. Messages
are rendered from the templates below so every error names the operation, the
offending quantity and the tolerance that was applied.
"""

from string import Template


TOLERANCE_TEMPLATE = Template(
    "${operation}: ${quantity} = ${value} violates tolerance ${tolerance}"
)
HYPOTHESIS_TEMPLATE = Template(
"""${operation}: hypothesis not satisfied
Required: ${required}
Observed: ${observed}"""
)
CONVERGENCE_TEMPLATE = Template(
    "${operation}: no convergence after ${sweeps} sweeps "
    "(off-diagonal norm ${achieved} > target ${target})"
)


def tolerance_message(
    operation: str,
    quantity: str,
    value: float,
    tolerance: float,
) -> str:
    """Render TOLERANCE_TEMPLATE with numbers formatted in scientific notation."""
    return TOLERANCE_TEMPLATE.substitute(
        operation = operation,
        quantity = quantity,
        value = f"{value:.3e}",
        tolerance = f"{tolerance:.1e}",
    )


class CertificationError(ValueError):
    """Base class for all rqbounds errors"""
    pass


class DimensionMismatchError(CertificationError):
    pass


class ZeroVectorError(CertificationError):
    pass


class NotHermitianError(CertificationError):
    pass


class DegenerateSubspaceError(CertificationError):
    """span{x, y} is one-dimensional"""
    pass


class NotInSubspaceError(CertificationError):
    pass


class NotAnEigenvectorError(CertificationError):
    pass


class SpectrumCoincidenceError(CertificationError):
    """The Rayleigh quotient sits on the spectrum, gap-based bounds are undefined"""
    pass


class HypothesisError(CertificationError):
    """A theorem hypothesis other than the ones above is violated"""

    def __init__(self, operation: str, required: str, observed: str):
        self.operation = operation
        self.required = required
        self.observed = observed
        super().__init__(HYPOTHESIS_TEMPLATE.substitute(
            operation = operation,
            required = required,
            observed = observed,
        ))


class ConvergenceError(CertificationError):
    def __init__(self, operation: str, sweeps: int, achieved: float, target: float):
        self.sweeps = sweeps
        self.achieved = achieved
        super().__init__(CONVERGENCE_TEMPLATE.substitute(
            operation = operation,
            sweeps = sweeps,
            achieved = f"{achieved:.3e}",
            target = f"{target:.3e}",
        ))


class InputError(CertificationError):
    """Malformed input file"""
    pass
