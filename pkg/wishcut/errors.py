# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Exception hierarchy shared by all wishcut modules.

File name:wishcut/errors.py

Author: wishcut developers
Created: 2026-10-19
"""


class InvalidParameters(ValueError):
    """Parameters or configuration outside the accepted domain (exit code 2)."""


class WishcutError(RuntimeError):
    """Numerical failure inside a library routine (exit code 1)."""


class CriticalParameters(InvalidParameters, WishcutError):
    pass


class OneCutRequired(InvalidParameters, WishcutError):
    pass


class BranchCollision(WishcutError):
    pass


class ExtrapolationDiverged(WishcutError):
    pass


class PathThroughBranchPoint(WishcutError):
    pass


class ComponentCountMismatch(WishcutError):
    pass


class MultipleSignChanges(WishcutError):
    pass


class SectorViolation(WishcutError):
    pass


class NonConvergent(WishcutError):
    pass


class RangeError(WishcutError):
    pass


class SingularMomentMatrix(WishcutError):
    pass


class PrecisionExhausted(WishcutError):
    pass


class NoConvergence(WishcutError):
    pass


__all__ = [
    "InvalidParameters",
    "WishcutError",
    "CriticalParameters",
    "OneCutRequired",
    "BranchCollision",
    "ExtrapolationDiverged",
    "PathThroughBranchPoint",
    "ComponentCountMismatch",
    "MultipleSignChanges",
    "SectorViolation",
    "NonConvergent",
    "RangeError",
    "SingularMomentMatrix",
    "PrecisionExhausted",
    "NoConvergence",
]
