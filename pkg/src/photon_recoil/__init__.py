"""Photon recoil of a source atom embedded in a dilute dielectric."""

from .errors import (
    ConvergenceError,
    InvalidParameterError,
    MediumResonanceError,
    PhotonRecoilError,
    QuadratureError,
    RegimeViolationError,
)
from .medium import (
    MediumResponse,
    inverse_detuning,
    line_center_response,
    params_from_n_alpha,
    polarizability,
    refractive_index,
    self_consistent_pole,
    self_energy,
    self_energy_coupling_form,
)
from .model import ModelParams, ValidationReport, mu_sq_from_gamma0, validate
from .observables import (
    EnergyLedger,
    RecoilStats,
    emission_line,
    energy_ledger,
    mean_photon_frequency,
    mean_recoil_energy,
    recoil_stats,
    total_photon_probability,
)
from .quadrature import OracleReport, QuadratureSpec, integrate_line, ww_pole_value
from .spectral import (
    ExcitationRatios,
    SpectralDensity,
    excitation_ratios,
    medium_excitation_probability,
    photon_density,
)

__version__ = "0.1.0"
