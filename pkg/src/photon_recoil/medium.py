"""Frequency response of the dielectric: detuning, polarizability, index, self-energy.

The photon self-energy from independent (ladder) scattering shifts the bare
photon pole ``omega_r + omega_k`` to ``omega_r + (1 - N alpha(E)/2) omega_k``
where ``alpha(E)`` itself depends on the pole energy.  That implicit equation
is solved by fixed-point iteration, which contracts by a factor of order
``N alpha omega_k / omega_m`` per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InvalidParameterError, MediumResonanceError, RegimeViolationError
from .model import ModelParams, mode_coupling

RESONANCE_GUARD = 1e-12
POLE_RTOL = 1e-12
POLE_MAX_ITER = 20
MAX_N_ALPHA = 0.5


@dataclass(frozen=True)
class MediumResponse:
    """Medium response at the dressed-propagator pole of one photon mode."""

    omega_k: float
    alpha: float
    n_alpha: float
    n: float
    pole_energy: float
    iterations: int


def inverse_detuning(E, omega_k, omega_r, params: ModelParams):
    """Rotating plus anti-rotating inverse detuning ``1/Delta(E)``.

    Works elementwise on arrays.  Raises :class:`MediumResonanceError` when
    either denominator is within ``RESONANCE_GUARD`` of zero.
    """
    rot = np.subtract(np.subtract(E, omega_r), params.omega_m)
    anti = rot - 2.0 * np.asarray(omega_k)
    if np.any(np.abs(rot) < RESONANCE_GUARD) or np.any(np.abs(anti) < RESONANCE_GUARD):
        raise MediumResonanceError(
            f"medium resonance at E={E!r}, omega_k={omega_k!r} (omega_m={params.omega_m})"
        )
    out = 1.0 / rot + 1.0 / anti
    return float(out) if np.ndim(out) == 0 else out


def polarizability(E, omega_k, params: ModelParams):
    """``alpha(E) = -4 pi mu^2 / Delta(E)``, positive below resonance."""
    inv = inverse_detuning(E, omega_k, params.recoil_frequency(omega_k), params)
    return -4.0 * math.pi * params.mu_sq * inv


def refractive_index(params: ModelParams, alpha):
    """Dilute-limit index ``1 + N alpha / 2``; refuses ``N alpha >= 0.5``."""
    n_alpha = params.density * alpha
    if np.any(np.asarray(n_alpha) >= MAX_N_ALPHA):
        raise RegimeViolationError(
            f"N*alpha = {n_alpha!r} is outside the small-N*alpha regime (< {MAX_N_ALPHA})"
        )
    return 1.0 + 0.5 * n_alpha


def self_energy(E, omega_k, params: ModelParams):
    """Photon self-energy written through the polarizability: ``-N alpha(E) omega_k / 2``."""
    return -0.5 * params.density * polarizability(E, omega_k, params) * omega_k


def self_energy_coupling_form(E, omega_k, params: ModelParams):
    """Same self-energy written through the mode coupling:
    ``hbar^2 N V |g_k|^2 mu^2 / Delta(E)``.

    Kept separate from :func:`self_energy` so the two can be checked against
    each other.
    """
    inv = inverse_detuning(E, omega_k, params.recoil_frequency(omega_k), params)
    return params.density * mode_coupling(omega_k) * params.mu_sq * inv


def _pole_map(E, omega_k, params):
    return params.recoil_frequency(omega_k) + (1.0 - 0.5 * params.density * polarizability(E, omega_k, params)) * omega_k


def self_consistent_pole(omega_k: float, params: ModelParams) -> MediumResponse:
    """Solve ``E = omega_r + (1 - N alpha(E)/2) omega_k`` for the photon pole.

    Iteration starts from the undressed pole ``omega_r + omega_k``.  The stop
    test uses the a-posteriori contraction bound ``q/(1-q) |dE|`` once two
    steps are available, so the returned pole is within ``POLE_RTOL`` of the
    true fixed point.
    """
    omega_k = float(omega_k)
    E = params.recoil_frequency(omega_k) + omega_k
    prev_step = None
    for it in range(1, POLE_MAX_ITER + 1):
        E_new = float(_pole_map(E, omega_k, params))
        step = abs(E_new - E)
        if prev_step is not None and 0.0 < prev_step and step < prev_step:
            q = step / prev_step
            err = step * q / (1.0 - q)
        else:
            err = step
        E = E_new
        if err <= POLE_RTOL * abs(E):
            alpha = float(polarizability(E, omega_k, params))
            n = float(refractive_index(params, alpha))
            return MediumResponse(
                omega_k=omega_k,
                alpha=alpha,
                n_alpha=params.density * alpha,
                n=n,
                pole_energy=E,
                iterations=it,
            )
        prev_step = step
    raise ConvergenceError(
        f"pole iteration for omega_k={omega_k!r} did not converge in {POLE_MAX_ITER} steps"
    )


def mode_index(omega, params: ModelParams):
    """Refractive index at the self-consistent pole of every mode in ``omega``.

    Vectorised counterpart of :func:`self_consistent_pole`, used when the
    index is not frozen at the line center.
    """
    omega = np.asarray(omega, dtype=float)
    E = params.recoil_frequency(omega) + omega
    prev_step = None
    for _ in range(POLE_MAX_ITER):
        E_new = _pole_map(E, omega, params)
        step = np.abs(E_new - E)
        err = step
        if prev_step is not None:
            with np.errstate(divide="ignore", invalid="ignore"):
                q = np.where((prev_step > 0) & (step < prev_step), step / prev_step, np.nan)
                err = np.where(np.isnan(q), step, step * q / (1.0 - q))
        E = E_new
        if np.all(err <= POLE_RTOL * np.abs(E)):
            return refractive_index(params, polarizability(E, omega, params))
        prev_step = step
    raise ConvergenceError(f"vectorised pole iteration did not converge in {POLE_MAX_ITER} steps")


def line_center_response(params: ModelParams) -> MediumResponse:
    """Response at the mode sitting on the emission line center.

    The center ``n (1 - n^2 omega0_r)`` depends on the index of the very mode
    it selects, so the two are iterated together until the center is stable.
    """
    center = 1.0
    for _ in range(POLE_MAX_ITER):
        response = self_consistent_pole(center, params)
        n = response.n
        new_center = n * (1.0 - n * n * params.recoil_scale)
        if abs(new_center - center) <= 1e-15 * abs(new_center):
            return self_consistent_pole(new_center, params)
        center = new_center
    raise ConvergenceError("line-center iteration did not converge")


def params_from_n_alpha(
    n_alpha: float,
    omega_m: float = 100.0,
    gamma0: float = 1e-6,
    recoil_scale: float = 0.0,
    strict: bool = False,
) -> ModelParams:
    """Build :class:`ModelParams` whose line-center ``N alpha`` equals ``n_alpha``.

    With ``N alpha`` fixed, the index, the line center and the pole energy are
    known in closed form, so the implied density follows from one evaluation
    of the polarizability.
    """
    n_alpha = float(n_alpha)
    if not math.isfinite(n_alpha) or n_alpha < 0.0:
        raise InvalidParameterError(f"n_alpha must be finite and >= 0, got {n_alpha!r}")
    if n_alpha >= MAX_N_ALPHA:
        raise RegimeViolationError(f"n_alpha = {n_alpha!r} must be < {MAX_N_ALPHA}")
    base = ModelParams(omega_m=omega_m, gamma0=gamma0, recoil_scale=recoil_scale, density=0.0, strict=strict)
    if n_alpha == 0.0:
        return base
    n = 1.0 + 0.5 * n_alpha
    center = n * (1.0 - n * n * recoil_scale)
    pole = base.recoil_frequency(center) + (1.0 - 0.5 * n_alpha) * center
    alpha = polarizability(pole, center, base)
    if alpha <= 0.0:
        raise InvalidParameterError("medium must be below resonance to realise a positive n_alpha")
    return ModelParams(
        omega_m=omega_m,
        gamma0=gamma0,
        recoil_scale=recoil_scale,
        density=n_alpha / alpha,
        strict=strict,
    )
