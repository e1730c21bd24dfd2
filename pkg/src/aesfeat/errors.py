"""Exception types raised across the toolkit."""


class AesfeatError(Exception):
    """Base class for all toolkit errors."""


# imaging
class UnsupportedFormat(AesfeatError):
    """Encoded image is not a PNG or JPEG stream."""


class CorruptStream(AesfeatError):
    """Encoded image claims a supported format but cannot be decoded."""


# perception / composition / fusion shapes
class MissingEntry(AesfeatError):
    """Detection sidecar has no entry for the requested image id."""


class MalformedSidecar(AesfeatError):
    """Detection sidecar fails schema validation."""


class DimensionMismatch(AesfeatError):
    """Array or map dimensions do not agree with the expected shape."""


# metrics
class EmptyInput(AesfeatError):
    """Metric requested on an empty prediction set."""


class DegenerateInput(AesfeatError):
    """Rank correlation undefined (a rank vector has zero variance)."""


# attention / losses
class KernelTooLarge(AesfeatError):
    """Channel-attention kernel longer than the channel axis."""


class LengthMismatch(AesfeatError):
    """Paired vectors have different lengths."""


# fusion
class EmptySelection(AesfeatError):
    """No feature segments selected for fusion."""


class EmptyDataset(AesfeatError):
    """Training requested on an empty dataset."""


class NonFiniteLoss(AesfeatError):
    """Training loss became NaN or infinite."""


# dataset
class ParseError(AesfeatError):
    """Manifest line is not valid JSON or violates the record schema."""


class DuplicateId(AesfeatError):
    """Manifest contains the same image id twice."""


class ScoreOutOfRange(AesfeatError):
    """Score outside the unit interval."""


class NoSuchLabel(AesfeatError):
    """No record carries the requested label."""


# evaluation plumbing
class MissingTruth(AesfeatError):
    """A prediction id has no ground-truth label in the manifest."""


class EmptyIntersection(AesfeatError):
    """Predictions and manifest share no ids."""
