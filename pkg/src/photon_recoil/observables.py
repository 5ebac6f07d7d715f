"""Physical outputs: photon normalization, spectral moments, recoil, energy ledger.

Each quantity comes in two flavours.  The closed form is the
Wigner-Weisskopf pole value; the quadrature value integrates the full
spectrum on the symmetric window of :mod:`photon_recoil.quadrature`.  The
two are reported side by side in an :class:`OracleReport`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .medium import MediumResponse, line_center_response
from .model import ModelParams
from .quadrature import OracleReport, QuadratureSpec, integrate_line, ww_pole_value
from .spectral import SpectralDensity, excitation_ratios, medium_excitation_probability, photon_density


def photon_moment(density: SpectralDensity, power: int, quad: QuadratureSpec | None = None) -> OracleReport:
    """``integral rho(omega) omega**power`` in closed and brute-force form."""
    if power == 0:
        f = density
    else:
        def f(omega):
            return density(omega) * omega**power
    result = integrate_line(f, density.center, density.width, quad)
    return OracleReport.compare(ww_pole_value(power, density.center, density.width), result)


def total_photon_probability(density: SpectralDensity, quad: QuadratureSpec | None = None) -> OracleReport:
    return photon_moment(density, 0, quad)


def mean_photon_frequency(density: SpectralDensity, quad: QuadratureSpec | None = None) -> OracleReport:
    return photon_moment(density, 1, quad)


def mean_recoil_energy(
    density: SpectralDensity, params: ModelParams, quad: QuadratureSpec | None = None
) -> OracleReport:
    """Mean source-atom kinetic energy ``w_r <omega^2>`` (``k = omega``)."""
    second = photon_moment(density, 2, quad)
    r = params.recoil_scale
    return OracleReport(
        closed_form=r * second.closed_form,
        quadrature=r * second.quadrature,
        abs_error=r * second.abs_error,
        subdivisions_used=second.subdivisions_used,
        quad_error=r * second.quad_error,
    )


@dataclass(frozen=True)
class RecoilStats:
    """Source-atom recoil after the decay.

    ``recoil_ratio`` is the mean recoil energy in units of the vacuum recoil
    ``w_r``, i.e. ``<k^2>``; it is defined even when ``w_r = 0``.  The mean
    momentum vector vanishes by isotropy, so only ``sqrt(<k^2>)`` is given.
    """

    mean_recoil_energy: float
    mean_momentum_magnitude: float
    recoil_ratio: float
    n: float
    n_alpha: float
    oracle: OracleReport

    def as_dict(self, params: ModelParams) -> dict:
        return {
            "recoil_ratio": self.recoil_ratio,
            "n": self.n,
            "n_squared": self.n * self.n,
            "gamma0": params.gamma0,
            "n_alpha": self.n_alpha,
            "mean_recoil_energy": self.mean_recoil_energy,
            "mean_momentum_magnitude": self.mean_momentum_magnitude,
            "oracle": self.oracle.as_dict(),
        }


def recoil_stats(
    params: ModelParams,
    response: MediumResponse,
    density: SpectralDensity,
    quad: QuadratureSpec | None = None,
) -> RecoilStats:
    second = photon_moment(density, 2, quad)
    k_sq = second.quadrature
    return RecoilStats(
        mean_recoil_energy=params.recoil_scale * k_sq,
        mean_momentum_magnitude=math.sqrt(k_sq),
        recoil_ratio=k_sq,
        n=density.n,
        n_alpha=response.n_alpha,
        oracle=second,
    )


@dataclass(frozen=True)
class LedgerTerm:
    closed_form: float
    quadrature: float

    @property
    def abs_error(self) -> float:
        return abs(self.closed_form - self.quadrature)

    def as_dict(self) -> dict:
        return {
            "closed_form": self.closed_form,
            "quadrature": self.quadrature,
            "abs_error": self.abs_error,
        }


@dataclass(frozen=True)
class EnergyLedger:
    """Field, medium-excitation and interaction energies in units of the source frequency."""

    field: LedgerTerm
    medium: LedgerTerm
    interaction: LedgerTerm

    @property
    def total(self) -> LedgerTerm:
        return LedgerTerm(
            self.field.closed_form + self.medium.closed_form + self.interaction.closed_form,
            self.field.quadrature + self.medium.quadrature + self.interaction.quadrature,
        )

    def as_dict(self) -> dict:
        return {
            "field": self.field.as_dict(),
            "medium": self.medium.as_dict(),
            "interaction": self.interaction.as_dict(),
            "total": self.total.as_dict(),
        }


def medium_energy(
    params: ModelParams,
    response: MediumResponse,
    density: SpectralDensity,
    quad: QuadratureSpec | None = None,
) -> float:
    """Energy stored in excited medium atoms.

    A rotating excitation costs ``omega_m``; an anti-rotating one leaves two
    photons behind as well and costs ``omega_m + 2 omega``.
    """
    def f(omega):
        ratios = excitation_ratios(omega, params, response)
        return density(omega) * (ratios.rot * params.omega_m + ratios.anti * (params.omega_m + 2.0 * omega))

    return integrate_line(f, density.center, density.width, quad).value


def energy_ledger(
    params: ModelParams,
    response: MediumResponse,
    density: SpectralDensity,
    quad: QuadratureSpec | None = None,
) -> EnergyLedger:
    """Three-term energy balance of the decayed state.

    The photon's upward frequency shift ``N alpha / 2`` is paid for by the
    medium excitation (``+N alpha / 2``) and the field-medium interaction
    (``-N alpha``).  The interaction term is taken at the line center.
    """
    n_alpha = response.n_alpha
    field = mean_photon_frequency(density, quad).quadrature
    return EnergyLedger(
        field=LedgerTerm(1.0 + 0.5 * n_alpha, field),
        medium=LedgerTerm(0.5 * n_alpha, medium_energy(params, response, density, quad)),
        interaction=LedgerTerm(-n_alpha, -n_alpha * density.center),
    )


def total_probability(
    params: ModelParams,
    response: MediumResponse,
    density: SpectralDensity,
    quad: QuadratureSpec | None = None,
) -> float:
    """Photon plus medium-excitation probability, which is one to order ``N alpha``."""
    photons = total_photon_probability(density, quad).quadrature
    p_rot, p_anti = medium_excitation_probability(params, response, density, quad)
    return photons + p_rot + p_anti


def emission_line(
    params: ModelParams, frozen_gamma: bool = True, frozen_n: bool = True
) -> tuple[MediumResponse, SpectralDensity]:
    """Line-center medium response and the photon spectrum built on it."""
    response = line_center_response(params)
    return response, photon_density(params, response, frozen_gamma=frozen_gamma, frozen_n=frozen_n)
