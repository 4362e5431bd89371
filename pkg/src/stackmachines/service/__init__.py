"""HTTP service wrapping the library; the CLI is a thin client of this layer."""

from .ops import ServiceError

__all__ = ["ServiceError"]
