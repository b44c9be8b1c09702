"""Skew pairs over F_p and nilpotent Chernikov p-groups with elementary top.

Requests and results use the same dictionaries as the command line tool.
"""


class ValidationError(ValueError):
    pass


class UnsupportedCharacteristic(ValueError):
    pass


class ResourceGuardError(RuntimeError):
    pass


class VerificationError(RuntimeError):
    pass


from ._core import (  # noqa: E402
    canon,
    classes,
    cocycle,
    count_classes,
    invariants,
    is_isomorphic,
    iso,
    present,
    verify,
)

__all__ = [
    "ValidationError",
    "UnsupportedCharacteristic",
    "ResourceGuardError",
    "VerificationError",
    "canon",
    "classes",
    "cocycle",
    "count_classes",
    "invariants",
    "is_isomorphic",
    "iso",
    "present",
    "verify",
]
