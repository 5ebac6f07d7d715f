"""Exception hierarchy shared by every module of the package."""


class PhotonRecoilError(Exception):
    """Base class for all errors raised by photon_recoil."""


class InvalidParameterError(PhotonRecoilError, ValueError):
    """A physical parameter is missing, non-finite or outside its domain."""


class MediumResonanceError(PhotonRecoilError, ArithmeticError):
    """A detuning denominator vanished: the query sits on a medium resonance."""


class RegimeViolationError(PhotonRecoilError):
    """The inputs leave the regime in which the dilute-medium formulas hold."""


class ConvergenceError(PhotonRecoilError, ArithmeticError):
    """The self-consistent pole iteration did not settle."""


class QuadratureError(PhotonRecoilError, ArithmeticError):
    """Adaptive quadrature failed; ``partial`` holds whatever was accumulated."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
