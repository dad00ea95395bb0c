"""Cavity transmission with intracavity EIT in the dark/bright polariton picture."""

from .lineshape import LineshapeReport, analyze, find_peaks, fwhm_of_central_peak, lorentzian_fit
from .params import AtomCavityParams, DetuningGrid, ParameterError, PortAmplitudes, validate_params
from .polariton import (
    ModeAmplitudes,
    PolaritonAmplitudes,
    PolaritonBasis,
    coupling_regime,
    from_polariton,
    make_basis,
    to_polariton,
)
from .quantum import (
    ComputationError,
    SingularSystemError,
    analytic_linewidth,
    dark_output_amplitude,
    dark_transmission,
    full_response,
)
from .semiclassical import (
    SemiClassicalIntermediates,
    SemiClassicalParams,
    absorption_coefficient,
    eit_susceptibility,
    linewidth_ratio,
    semiclassical_linewidth,
)
from .spectrum import ANALYTIC_DARK, FULL_LINEAR, MODELS, SEMICLASSICAL, Spectrum, sweep

__version__ = "0.1.0"
