__version__ = "0.1.0"

from rqbounds.core_linalg import (
    HermitianOperator,
    TwoDimRestriction,
    acute_angle,
    rayleigh_quotient,
    residual,
    restrict_2d,
)
from rqbounds.spectral import SpectralDecomposition, eigendecompose, spectrum_context
from rqbounds.bounds import BoundReport, bound_catalogue
from rqbounds.experiments import ExperimentResult
