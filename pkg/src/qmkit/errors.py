"""Exception hierarchy shared by all qmkit modules.

The CLI maps these onto process exit codes, so every error raised by the
library should derive from :class:`QmkitError`.
"""


class QmkitError(Exception):
    """Base class for all qmkit errors."""


class InvalidObject(QmkitError):
    """Input cannot be interpreted as a quantum object (empty, wrong rank)."""


class DimensionMismatch(QmkitError):
    """Operands live in incompatible spaces."""


class NotHermitian(QmkitError):
    """Operation requires a Hermitian matrix."""


class NotPositive(QmkitError):
    """Operation requires a positive semidefinite matrix."""


class ZeroNorm(QmkitError):
    """Cannot normalize an object with vanishing norm (or trace)."""


class NotQubitSystem(QmkitError):
    """Operation only defined on 2^n-dimensional (qubit) systems."""


class IndexOutOfRange(QmkitError):
    """Subsystem / basis index outside the valid range."""


class NotDiagonalizable(QmkitError):
    """Matrix is defective: no complete eigenbasis."""


class InvalidQuantumNumber(QmkitError):
    """Angular momentum labels violate their constraints."""


class InvalidParameter(QmkitError):
    """Scalar parameter outside its admissible range."""


class UnsupportedDimension(QmkitError):
    """Requested construction is not available at this dimension."""


class OutcomeImpossible(QmkitError):
    """Conditional post-measurement state requested for a zero-probability outcome."""


class InvalidDistribution(QmkitError):
    """Probability vector is not a distribution."""


class RankDeficientSet(QmkitError):
    """Measurement set does not determine the state (linear inversion impossible)."""
