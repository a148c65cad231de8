"""Package-wide tunables."""

import os

# Exhaustive enumeration over {0,1}^n is refused above this arity.
# 22 bits = ~4M evaluations, still desk-scale.
DEFAULT_ENUM_CAP = 22

ENUM_CAP_ENV = "OBDDKIT_ENUM_CAP"

# Float-backend threshold for "probability is zero".
FLOAT_EPS = 1e-9


def enumeration_cap() -> int:
    """Current enumeration cap (env var ``OBDDKIT_ENUM_CAP`` overrides)."""
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"{ENUM_CAP_ENV} must be positive, got {cap}")
    return cap


def check_enumerable(n: int, what: str = "enumeration") -> None:
    cap = enumeration_cap()
    if n > cap:
        raise EnumerationCapExceeded(
            f"{what} over {n} variables exceeds the cap of {cap} "
            f"(set {ENUM_CAP_ENV} to raise it)"
        )


class EnumerationCapExceeded(ValueError):
    """Raised when an exhaustive operation would be too large."""
