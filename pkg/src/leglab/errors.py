"""Exception hierarchy shared by all leglab modules."""


class LeglabError(Exception):
    """Base class for errors raised by leglab."""


class DomainError(LeglabError, ValueError):
    """Input outside the mathematical domain of an operation."""


class ResourceError(LeglabError):
    """A configured size or work bound would be exceeded."""


class ConsistencyError(LeglabError, AssertionError):
    """Two routes that must agree disagree; this signals a bug."""
