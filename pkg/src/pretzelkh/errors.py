"""Exception types shared across the package."""


class PretzelKhError(Exception):
    """Base class for all errors raised by this package."""


class NegativeEntry(PretzelKhError):
    """A sequence or dimension entry that must be nonnegative is negative."""


class ExceptionalExceedsRank(PretzelKhError):
    """An exceptional-pair count exceeds the sequence entry at its index."""


class NotWellStructured(PretzelKhError):
    """A bigraded space does not decompose into knight and exceptional pairs."""


class UnsplittableSpace(PretzelKhError):
    """A three-diagonal space admits no consistent lower/upper split."""


class InvalidOrientation(PretzelKhError):
    """A requested orientation pattern contradicts the component structure."""


class InvalidCrossing(PretzelKhError):
    """A crossing index is out of range for the diagram at hand."""


class SameComponent(PretzelKhError):
    """A pairwise linking number was requested for a single component."""


class NonIntegralShift(PretzelKhError):
    """A reorientation shift evaluates to a non-integer grading offset."""


class TooManyComponents(PretzelKhError):
    """A per-component prediction only covers links of up to 3 components."""


class TooLarge(PretzelKhError):
    """A brute-force computation was refused because it would not fit."""
