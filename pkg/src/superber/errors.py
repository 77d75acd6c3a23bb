"""Exception hierarchy shared by all modules."""


class SuperberError(Exception):
    """Base class for domain errors raised by this package."""


class GeneratorMismatch(SuperberError):
    """Operands live in Grassmann algebras with different generator counts."""


class InhomogeneousError(SuperberError):
    """An element mixes even and odd monomials where a parity is required."""


class NonInvertible(SuperberError):
    """The body of a determinant or scalar vanishes."""


class FormulaMismatch(SuperberError):
    """The two block formulas for the Berezinian disagree."""


class ShapeMismatch(SuperberError):
    """Dimensions, lengths or signatures of operands do not match."""


class ParityViolation(SuperberError):
    """An entry or parameter has the wrong Z2 degree."""


class IndexOutOfRange(SuperberError):
    """A matrix-unit index lies outside the range allowed for its class."""


class NotProportional(SuperberError):
    """The square of a symmetrizer is not a multiple of the symmetrizer."""


class UnsupportedShape(SuperberError):
    """No closed form is available for the requested diagram."""


class SpanViolation(SuperberError):
    """A tensor has a component outside the span of the given basis."""


class DependentBasis(SuperberError):
    """The supplied basis tensors are linearly dependent over the rationals."""


class ZeroPairing(SuperberError):
    """A dual tensor pairs to zero with its partner."""


class ParseError(SuperberError):
    """Malformed text or structured input."""
