"""Physical parameters, unit convention and regime validation.

Everything is expressed in natural units with hbar = c = 1 and the source-atom
transition frequency set to 1.  Couplings follow the Gaussian convention
(eps0 = 1/(4 pi)), under which the mode coupling reduces to
``hbar * V * |g_k|**2 == 2 * pi * omega_k`` and the closed forms for the
polarizability, the photon self-energy and the decay rate share one set of
constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidParameterError

# Advisory regime thresholds; strict mode turns failures into errors.
FAR_DETUNED_MIN = 10.0
NARROW_LINE_MAX = 1e-3
SMALL_RECOIL_MAX = 1e-3
WAVELENGTH = 2.0 * math.pi  # vacuum wavelength of the source line


def mu_sq_from_gamma0(gamma0: float) -> float:
    """Squared reduced dipole element giving vacuum decay rate ``gamma0``.

    Inverts ``gamma = 2 mu^2 omega^3 / 3`` at ``omega = 1``.
    """
    if not math.isfinite(gamma0) or gamma0 <= 0.0:
        raise InvalidParameterError(f"gamma0 must be positive and finite, got {gamma0!r}")
    return 1.5 * gamma0


def decay_rate(omega, mu_sq: float):
    """Spontaneous decay rate at photon frequency ``omega``: 2 mu^2 omega^3 / 3."""
    return 2.0 * mu_sq * omega**3 / 3.0


def mode_coupling(omega_k):
    """``hbar * V * |g_k|**2`` for a mode of frequency ``omega_k``."""
    return 2.0 * math.pi * omega_k


def _check_finite(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Immutable record of the physical inputs.

    Attributes:
        omega_m: medium transition frequency.
        gamma0: vacuum decay rate of the source atom.
        recoil_scale: single-photon recoil frequency, ``hbar omega0 / (2 M c^2)``.
        density: medium number density in units of ``(omega0/c)**3``.
        strict: turn regime warnings into failures.
    """

    omega_m: float = 100.0
    gamma0: float = 1e-6
    recoil_scale: float = 0.0
    density: float = 0.0
    strict: bool = False
    mu_sq: float = field(init=False, repr=False)

    def __post_init__(self):
        omega_m = _check_finite("omega_m", self.omega_m)
        gamma0 = _check_finite("gamma0", self.gamma0)
        recoil = _check_finite("recoil_scale", self.recoil_scale)
        density = _check_finite("density", self.density)
        if omega_m <= 1.0:
            raise InvalidParameterError(f"omega_m must exceed 1, got {omega_m!r}")
        if not 0.0 < gamma0 < 1.0:
            raise InvalidParameterError(f"gamma0 must lie in (0, 1), got {gamma0!r}")
        if recoil < 0.0:
            raise InvalidParameterError(f"recoil_scale must be >= 0, got {recoil!r}")
        if density < 0.0:
            raise InvalidParameterError(f"density must be >= 0, got {density!r}")
        object.__setattr__(self, "omega_m", omega_m)
        object.__setattr__(self, "gamma0", gamma0)
        object.__setattr__(self, "recoil_scale", recoil)
        object.__setattr__(self, "density", density)
        object.__setattr__(self, "strict", bool(self.strict))
        object.__setattr__(self, "mu_sq", mu_sq_from_gamma0(gamma0))

    def recoil_frequency(self, omega_k):
        """Recoil frequency ``hbar k^2 / 2M`` of a photon with ``k = omega_k``."""
        return self.recoil_scale * omega_k**2


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    threshold: float

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "value": self.value,
            "threshold": self.threshold,
        }


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]
    overall: str
    density: float

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "overall": self.overall,
            "density": self.density,
            "checks": [c.as_dict() for c in self.checks],
        }


def validate(params: ModelParams) -> ValidationReport:
    """Compare ``params`` against the dilute, far-detuned, narrow-line regime.

    ``overall`` is ``"fail"`` only in strict mode; otherwise any failed check
    degrades it to ``"warn"``.
    """
    dilute = params.density * WAVELENGTH**3
    checks = (
        Check("dilute", dilute < 1.0, dilute, 1.0),
        Check("far_detuned", params.omega_m >= FAR_DETUNED_MIN, params.omega_m, FAR_DETUNED_MIN),
        Check("narrow_line", params.gamma0 <= NARROW_LINE_MAX, params.gamma0, NARROW_LINE_MAX),
        Check(
            "small_recoil",
            params.recoil_scale <= SMALL_RECOIL_MAX,
            params.recoil_scale,
            SMALL_RECOIL_MAX,
        ),
    )
    if all(c.passed for c in checks):
        overall = "pass"
    elif params.strict:
        overall = "fail"
    else:
        overall = "warn"
    return ValidationReport(checks=checks, overall=overall, density=params.density)
