"""Work bounds used across the package.

The loop bound can be raised with the ``LEGLAB_MAX_OPS`` environment variable
or the ``--max-ops`` CLI flag.
"""

import os

DEFAULT_MAX_OPS = 10**7
DEFAULT_MAX_FIELD = 2**20
MAX_SUBGROUP_ENUMERATION = 5000


def max_ops() -> int:
    raw = os.environ.get("LEGLAB_MAX_OPS")
    if raw is None:
        return DEFAULT_MAX_OPS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"LEGLAB_MAX_OPS must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("LEGLAB_MAX_OPS must be positive")
    return value


def max_field() -> int:
    return DEFAULT_MAX_FIELD
