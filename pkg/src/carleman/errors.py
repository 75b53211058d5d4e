"""Exception hierarchy shared by the symbolic and numeric layers."""


class CarlemanError(Exception):
    """Base class for every error raised by this package."""


class AlphabetMismatch(CarlemanError):
    pass


class ClosureExceeded(CarlemanError):
    """A generator had to be differentiated past its closure order."""


class ParseError(CarlemanError):
    pass


class NotSymmetric(CarlemanError):
    pass


class NonPositiveSplitter(CarlemanError):
    pass


class NoDominationFound(CarlemanError):
    def __init__(self, message, orphan=None):
        super().__init__(message)
        self.orphan = orphan


class SupportTouchesBoundary(CarlemanError):
    pass


class SupportViolation(CarlemanError):
    pass


class UnsupportedOrder(CarlemanError):
    pass


class SolverDiverged(CarlemanError):
    pass


class EdgeDecayViolated(CarlemanError):
    pass


class StepRejected(CarlemanError):
    pass


class WeightOverflow(CarlemanError):
    pass


class ZeroDenominator(CarlemanError):
    pass


class AnnulusOutsideBox(CarlemanError):
    pass


class FitFailed(CarlemanError):
    pass


class NonHermitian(CarlemanError):
    pass


class HypothesisUnmet(CarlemanError):
    pass
