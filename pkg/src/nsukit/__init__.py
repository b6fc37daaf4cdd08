"""nsukit: classification and context-based resolution of non-sentential utterances."""

__version__ = "0.1.0"
