"""Explicit arithmetic of the Legendre curve over towers of rational function fields."""

from .errors import ConsistencyError, DomainError, LeglabError, ResourceError

__version__ = "0.1.0"

__all__ = ["ConsistencyError", "DomainError", "LeglabError", "ResourceError", "__version__"]
