class QHEError(Exception):
    EXIT_CODE = 1

    def __init__(self, message: str, witness: dict = None):
        super().__init__(message)
        self.witness = witness or {}


class InputError(QHEError):
    EXIT_CODE = 2


class PreconditionError(QHEError):
    EXIT_CODE = 3


class CertificationError(QHEError):
    EXIT_CODE = 1


class PresentationError(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class DimensionNotStabilized(InputError):
    pass


class NonHomogeneousRelations(InputError):
    pass


class NonAdmissibleRelations(InputError):
    pass


class NonSplitSimple(InputError):
    pass


class FiltrationError(InputError):
    def __init__(self, message: str, index: int = None, side: str = None):
        super().__init__(message, {"index": index, "side": side})
        self.index = index
        self.side = side


class NotAnIdeal(FiltrationError):
    pass


class NotMultiplicative(FiltrationError):
    pass


class LayerNotSemisimple(FiltrationError):
    pass


class WindowTooSmall(PreconditionError):
    pass


class BoundaryTruncated(PreconditionError):
    pass


class NotGraded(PreconditionError):
    pass


class FiltrationMismatch(PreconditionError):
    pass


class PairingFailed(PreconditionError):
    pass


class Degenerate(CertificationError):
    pass


class NotSymmetric(CertificationError):
    pass


class FormDegenerate(CertificationError):
    pass


class NoIsomorphism(CertificationError):
    pass


class ComparisonFailed(CertificationError):
    pass


class SplittingNotClosed(CertificationError):
    pass
