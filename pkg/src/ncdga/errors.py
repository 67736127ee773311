"""Exception hierarchy. Every library error derives from NcdgaError."""


class NcdgaError(Exception):
    pass


class AlgebraMismatchError(NcdgaError):
    """Operands belong to different coefficient algebras."""


class NotHermitianError(NcdgaError):
    """Operation needs a star involution / trace pairing the algebra lacks."""


class ArityMismatchError(NcdgaError):
    """Tensor arities of the operands are incompatible."""


class ZeroArityTargetError(NcdgaError):
    """Adjoint formula rejects morphisms into the zero-length part."""


class BoundTooSmallError(NcdgaError):
    """Brute-force adjoint was given a word pool that cannot be complete."""


class DegreeUnknownError(NcdgaError):
    """An expression mentions a generator the DGA does not declare."""


class DegreeMismatchError(NcdgaError):
    """A differential value is not homogeneous of degree one less."""

    def __init__(self, message, line=None, generator=None):
        super().__init__(message)
        self.line = line
        self.generator = generator


class ActionViolationError(NcdgaError):
    """A differential value does not strictly decrease the action."""

    def __init__(self, message, line=None, generator=None):
        super().__init__(message)
        self.line = line
        self.generator = generator


class MorphismIllDefinedError(NcdgaError):
    """Generator images do not respect the source algebra's relations."""


class NotInvertibleError(NcdgaError):
    """Substitution is not invertible by word-length iteration."""


class NoActionsError(NcdgaError):
    """Action filtration requested but no actions were assigned."""


class InvalidLinkGradingError(NcdgaError):
    """Component labels violate the composability conditions."""


class InvalidAugmentationError(NcdgaError):
    """The map is not a valid augmentation of the DGA."""


class TargetMismatchError(NcdgaError):
    """Augmentation target differs from the algebra the operation needs."""


class TupleLengthMismatchError(NcdgaError):
    """An augmentation tuple has the wrong length for the requested arity."""


class InfiniteDimensionalCoefficientsError(NcdgaError):
    """Chain groups would be infinite dimensional over the base field."""


class NotAComplexError(NcdgaError):
    """The square of the supplied differential does not vanish."""


class NotMatrixTargetError(NcdgaError):
    """Mirror comparison needs a matrix (or one-dimensional) target."""


class InvalidDGAError(NcdgaError):
    """Construction produced a differential that fails its contract."""


class ParseError(NcdgaError):
    """Syntax error in a DGA / augmentation / morphism description."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self):
        loc = ""
        if self.line is not None:
            loc = f" (line {self.line}"
            loc += f", column {self.column})" if self.column is not None else ")"
        return super().__str__() + loc


class UnknownGeneratorError(ParseError):
    """Expression references an undeclared generator or symbol."""
