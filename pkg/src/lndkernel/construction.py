"""The concrete ring, subring and derivation studied by this package.

``a = T^2`` and ``b = T^3`` embed ``Q[a, b]/(a^3 - b^2)`` into ``Q[T]``; then
``a^2 (aX + bY)^2 + 1 = T^8 (X + TY)^2 + 1`` and ``b d/dX - a d/dY`` becomes
``T^3 d/dX - T^2 d/dY``.
"""
from __future__ import annotations

from .derivations import Derivation
from .poly import Poly, T, X, Y
from .rings import ExtElem, ExtRingSpec, SubringSpec

P_EXPANDED = X + T * Y
A = T**2
B = T**3


def standard_relation() -> Poly:
    return A**2 * (A * X + B * Y) ** 2 + 1


def standard_ring() -> ExtRingSpec:
    return ExtRingSpec(standard_relation())


def standard_subring() -> SubringSpec:
    return SubringSpec("T", (2, 3))


def standard_derivation(ring: ExtRingSpec | None = None) -> Derivation:
    ring = ring or standard_ring()
    return Derivation.from_images(ring, {"T": 0, "X": B, "Y": -A, "z": 0})


def subring_generators(ring: ExtRingSpec) -> list[ExtElem]:
    """``a, b, X, Y, z``: generators of the subring as an algebra."""
    return [ring.elem(A), ring.elem(B), ring.elem(X), ring.elem(Y), ring.z]
