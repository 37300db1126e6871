"""Exception types shared across the package."""


class EmphadetError(Exception):
    """Base class for every error this package raises on purpose."""


# --- audio I/O ---------------------------------------------------------

class MissingFile(EmphadetError):
    pass


class UnsupportedFormat(EmphadetError):
    """WAV encoding we do not handle (compressed codecs, odd bit depths)."""


class CorruptHeader(EmphadetError):
    pass


class IoFailure(EmphadetError):
    pass


class EmptyAfterTrim(EmphadetError):
    """Input was silence end to end; nothing survives edge trimming."""


# --- segmentation ------------------------------------------------------

class BufferTooShort(EmphadetError):
    pass


class NoSpeech(EmphadetError):
    pass


class AlignmentFailed(EmphadetError):
    """Detected word count and transcript token count disagree too much."""


# --- spectra -----------------------------------------------------------

class EmptySegment(EmphadetError):
    pass


class ZeroEnergy(EmphadetError):
    pass


class BandOutOfRange(EmphadetError):
    pass


class GridMismatch(EmphadetError):
    pass


# --- perturbation ------------------------------------------------------

class SegmentOutOfBounds(EmphadetError):
    pass


# --- providers ---------------------------------------------------------

class ProviderUnreachable(EmphadetError):
    pass


class ProviderTimeout(ProviderUnreachable):
    pass


class ProviderError(EmphadetError):
    """Provider responded, but with a failure status or a bad payload."""


class MissingFixture(EmphadetError):
    pass


# --- datasets ----------------------------------------------------------

class ParseError(EmphadetError):
    pass


class InvalidIndex(EmphadetError):
    pass


class DatasetUnusable(EmphadetError):
    """More than half of the dataset entries could not be analyzed."""
