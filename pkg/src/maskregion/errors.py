"""Exception hierarchy shared across the toolkit."""


class MaskRegionError(Exception):
    """Base class for all toolkit errors."""


class MalformedRleError(MaskRegionError):
    """Run-length counts do not describe a height*width mask."""


class MalformedStringError(MaskRegionError):
    """Compact RLE string is truncated or contains invalid characters."""


class DegeneratePolygonError(MaskRegionError):
    """Polygon has fewer than 3 vertices."""


class EmptyMaskError(MaskRegionError):
    """Operation requires at least one foreground pixel."""


class StrideMismatchError(MaskRegionError):
    """Mask dimensions are not an integer multiple of the target grid."""


class NoNegativeAvailableError(MaskRegionError):
    """No candidate region with a different category exists."""


class InvalidDimsError(MaskRegionError):
    """Requested tensor dimensions are inconsistent or non-positive."""


class BindingMismatchError(MaskRegionError):
    """Number of <region> markers does not match the number of bindings."""


class MalformedConversationError(MaskRegionError):
    """Conversation turns violate the human/assistant alternation."""


class MissingCaptionError(MaskRegionError):
    """A region lacks the caption required to build a prompt job."""


class UnknownAttributeError(MaskRegionError):
    """Attribute not in the part-level attribute taxonomy."""


class ParseRejectionError(MaskRegionError):
    """LLM response text could not be parsed into records."""

    def __init__(self, message, job_id=None):
        super().__init__(message)
        self.job_id = job_id


class DanglingRegionError(MaskRegionError):
    """Response references a region index that was never declared."""


class UnknownLabelError(MaskRegionError):
    """Label missing from the embedding table."""


class InsufficientCandidatesError(UnknownLabelError):
    """Embedding table too small to mine a top-8 negative."""


class InvalidReferenceError(MaskRegionError):
    """Ground-truth reference text is empty."""


class InvalidCorpusError(MaskRegionError):
    """Caption corpus too small for IDF statistics."""


class DisjointnessError(MaskRegionError):
    """Masks within one image overlap."""


class JudgeFailureError(MaskRegionError):
    """Every judge reply was unparseable."""


class ConfigError(MaskRegionError):
    """Run configuration is missing or inconsistent."""
