"""Exception types raised across the package.

Every failure mode that callers are expected to handle has a named
class here; generic misuse (wrong types, absurd arguments) raises the
usual builtins instead.
"""


class MrgridError(Exception):
    """Base class for all package-specific errors."""


# ---- field construction and arithmetic ----

class NonPrimeCharacteristic(MrgridError):
    """Field characteristic must be a prime number."""


class ReducibleModulus(MrgridError):
    """The supplied modulus polynomial is not irreducible."""


class FieldTooLarge(MrgridError):
    """Field order exceeds the supported range (2**64)."""


class DivisionByZero(MrgridError):
    """Division by the zero element."""


class FieldMismatch(MrgridError):
    """Operands belong to different fields; no implicit coercion."""


class NoDesignatedSubfield(MrgridError):
    """Operation needs a designated subfield but none is set."""


class IncompatibleSubfield(MrgridError):
    """Source field does not match the target's designated subfield."""


# ---- matrices ----

class IndexOutOfRange(MrgridError):
    """Column or row index outside the matrix shape."""


class ShapeMismatch(MrgridError):
    """Matrix shapes do not line up for the requested operation."""


# ---- codes ----

class DuplicateEvaluationPoints(MrgridError):
    """Reed-Solomon evaluation points must be pairwise distinct."""


class FieldTooSmall(MrgridError):
    """Field has too few elements for the requested code length."""


class DependentLocators(MrgridError):
    """Gabidulin locators are linearly dependent over the subfield."""


class LengthExceedsExtensionDegree(MrgridError):
    """Gabidulin code length exceeds the extension degree."""


class WrongSize(MrgridError):
    """Index set has the wrong cardinality."""


class TooLargeToEnumerate(MrgridError):
    """Subset enumeration would exceed the configured cap."""


class AmbiguousErasure(MrgridError):
    """Erasure pattern is not correctable by this code.

    Carries a witness pair of distinct codewords that agree on every
    non-erased position.
    """

    def __init__(self, first, second):
        super().__init__("erasure pattern is ambiguous for this code")
        self.witnesses = (first, second)


class InconsistentWord(MrgridError):
    """Received word does not agree with any codeword."""


class NotMDS(MrgridError):
    """Construction requires an MDS code."""


class ZeroGamma(MrgridError):
    """Normalisation constant must be nonzero."""


# ---- topology / classification ----

class EnumerationTooLarge(MrgridError):
    """Pattern enumeration would exceed the configured cap."""


class FieldTooSmallForMDS(MrgridError):
    """Field cannot supply distinct evaluation points for the MDS pair."""


class DimensionMismatch(MrgridError):
    """Outer code dimension does not match the construction."""


class PaddingBreaksRegularity(UserWarning):
    """Padding a lifted pattern to maximal size would break regularity.

    Issued as a warning; the unpadded pattern is returned instead.
    """
