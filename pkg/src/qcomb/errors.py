"""Exception types shared across the package.

Validation failures (bad arguments, malformed shapes) and resource-cap
overruns are distinct conditions: callers may want to retry the latter
with a larger cap, but never the former.
"""


class ValidationError(ValueError):
    """An argument violates a documented precondition."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured cap."""


DEFAULT_CAP = 10**6


def check_cap(required: int, cap: int, what: str) -> None:
    """Raise ResourceLimitError if an enumeration of `required` items exceeds `cap`."""
    if required > cap:
        raise ResourceLimitError(
            f"{what} requires enumerating {required} items, above the cap of {cap}"
        )
