"""Exception types shared across the package."""


class CertifiedNumericsError(Exception):
    """Base class for failures of the certified-arithmetic layer."""


class NotGreaterThanOne(CertifiedNumericsError):
    """The growth base must certifiably exceed 1."""


class FloorUndecidable(CertifiedNumericsError):
    """An enclosure straddles an integer at the maximum allowed precision."""


class DivergentTail(CertifiedNumericsError):
    """A geometric tail was requested for a ratio not certifiably below 1."""


class PrecisionExhausted(CertifiedNumericsError):
    """A required separation could not be certified at the precision ceiling."""


class NoDeletableLoop(Exception):
    """No loop of length >= 2 is available for deletion."""


class EmptyLoopSet(Exception):
    """The graph truncation contains no loop through the root."""


class RootNotBracketed(Exception):
    """Certified root finding could not bracket the target value."""


class InsufficientData(Exception):
    """Not enough nonzero counts to form the requested estimate."""


class TailUnavailable(Exception):
    """No certified tail bound exists for this spectrum/evaluation point."""


class NoGrowthModel(Exception):
    """A certified radius was requested for a spectrum without analytic metadata."""


class SpectrumFileError(Exception):
    """Malformed or unsupported spectrum file."""
