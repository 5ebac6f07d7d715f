"""Dressed-photon spectrum and medium-excitation densities.

The emitted-photon distribution over frequency is

    rho(omega) = C omega^3 / ([omega/n - (1 - n^2 w_r)]^2 + n^2 gamma_c^2)

with ``w_r`` the recoil scale.  In frequency space its center is
``n (1 - n^2 w_r)`` and its half width at half maximum is ``n^2 gamma_c``.
The decay rate ``gamma_c`` is taken at the line-center photon frequency, and
``C`` is fixed so the Wigner-Weisskopf (single pole, omega^3 frozen at the
center) integral is exactly one.  The polarization sum ``(8 pi / 3) mu^2``
is common to the photon and medium channels and lives inside ``C``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MediumResonanceError
from .medium import RESONANCE_GUARD, MediumResponse, mode_index
from .model import ModelParams, decay_rate
from .quadrature import QuadratureSpec, integrate_line


@dataclass(frozen=True)
class SpectralDensity:
    """Normalised photon spectrum; call it on an array of frequencies."""

    center: float
    width: float
    prefactor: float
    n: float
    gamma_c: float
    params: ModelParams
    frozen_gamma: bool = True
    frozen_n: bool = True

    @property
    def line(self) -> float:
        """Recoil-shifted emission frequency ``1 - n^2 w_r`` inside the Lorentzian."""
        return 1.0 - self.n * self.n * self.params.recoil_scale

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        if self.frozen_n:
            n = self.n
            line = self.line
        else:
            n = mode_index(omega, self.params)
            line = 1.0 - n * n * self.params.recoil_scale
        if self.frozen_gamma:
            gamma = self.gamma_c
        else:
            gamma = decay_rate(omega, self.params.mu_sq)
        detuning = omega / n - line
        return self.prefactor * omega**3 / (detuning * detuning + (n * gamma) ** 2)


@dataclass(frozen=True)
class ExcitationRatios:
    """Medium-excitation densities relative to the photon density at ``omega``."""

    rot: np.ndarray | float
    anti: np.ndarray | float


def photon_density(
    params: ModelParams,
    response: MediumResponse,
    frozen_gamma: bool = True,
    frozen_n: bool = True,
) -> SpectralDensity:
    """Photon spectrum for the line-center ``response``.

    ``frozen_gamma=False`` evaluates the decay rate at each photon frequency
    and ``frozen_n=False`` re-solves the index per mode; either one breaks
    the exact unit normalization and is meant for sensitivity studies.
    """
    n = response.n
    line = 1.0 - n * n * params.recoil_scale
    center = n * line
    gamma_c = float(decay_rate(center, params.mu_sq))
    return SpectralDensity(
        center=center,
        width=n * n * gamma_c,
        prefactor=gamma_c / (math.pi * center**3),
        n=n,
        gamma_c=gamma_c,
        params=params,
        frozen_gamma=frozen_gamma,
        frozen_n=frozen_n,
    )


def excitation_ratios(omega, params: ModelParams, response: MediumResponse) -> ExcitationRatios:
    """Rotating and anti-rotating medium excitation per unit photon density.

    Both carry ``2 pi N mu^2 omega`` from the squared coupling, divided by the
    squared dressed detuning of the respective channel.
    """
    omega = np.asarray(omega, dtype=float)
    dressed = (1.0 - 0.5 * response.n_alpha) * omega
    rot_det = dressed - params.omega_m
    anti_det = rot_det - 2.0 * omega
    if np.any(np.abs(rot_det) < RESONANCE_GUARD) or np.any(np.abs(anti_det) < RESONANCE_GUARD):
        raise MediumResonanceError("photon frequency sits on a dressed medium resonance")
    strength = 2.0 * math.pi * params.density * params.mu_sq * omega
    rot = strength / rot_det**2
    anti = strength / anti_det**2
    if rot.ndim == 0:
        return ExcitationRatios(float(rot), float(anti))
    return ExcitationRatios(rot, anti)


def medium_excitation_probability(
    params: ModelParams,
    response: MediumResponse,
    density: SpectralDensity,
    quad: QuadratureSpec | None = None,
) -> tuple[float, float]:
    """Total rotating and anti-rotating excitation probabilities ``(P_rot, P_anti)``."""
    quad = quad or QuadratureSpec()

    def rot(omega):
        return density(omega) * excitation_ratios(omega, params, response).rot

    def anti(omega):
        return density(omega) * excitation_ratios(omega, params, response).anti

    p_rot = integrate_line(rot, density.center, density.width, quad).value
    p_anti = integrate_line(anti, density.center, density.width, quad).value
    return p_rot, p_anti
