"""The quadratic extension ``B = Q[T,X,Y][z]/(z^2 - q)`` and subrings of it.

Elements of ``B`` are kept in the normal form ``f0 + f1*z``; since ``(1, z)``
is a free basis over the base ring, componentwise equality is equality in
``B``.  A subring is described by which exponents of one variable are
allowed, e.g. the numerical semigroup generated by 2 and 3 for
``Q[T^2, T^3] ⊂ Q[T]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterator, Union

from .poly import Monomial, Poly, Scalar

BASE_VARIABLES = ("T", "X", "Y")


@dataclass(frozen=True)
class ExtRingSpec:
    """``base[z]/(z^2 - q)`` with ``q`` a polynomial in the base variables."""

    q: Poly
    base_vars: tuple[str, ...] = BASE_VARIABLES

    def __post_init__(self) -> None:
        stray = self.q.variables() - set(self.base_vars)
        if stray:
            raise ValueError(f"q involves non-base variables: {sorted(stray)}")

    def elem(self, f0: Poly | Scalar = 0, f1: Poly | Scalar = 0) -> ExtElem:
        return ExtElem(Poly.coerce(f0), Poly.coerce(f1), self)

    @property
    def zero(self) -> ExtElem:
        return self.elem(0, 0)

    @property
    def one(self) -> ExtElem:
        return self.elem(1, 0)

    @property
    def z(self) -> ExtElem:
        return self.elem(0, 1)

    def var(self, name: str) -> ExtElem:
        if name == "z":
            return self.z
        if name not in self.base_vars:
            raise ValueError(f"{name!r} is not a variable of this ring")
        return self.elem(Poly.var(name))

    def coerce(self, x: ExtElem | Poly | Scalar) -> ExtElem:
        if isinstance(x, ExtElem):
            if x.ring is not self and x.ring != self:
                raise ValueError("elements belong to different rings")
            return x
        return self.elem(x)


ElemLike = Union["ExtElem", Poly, int, Fraction]


@dataclass(frozen=True, eq=False)
class ExtElem:
    f0: Poly
    f1: Poly
    ring: ExtRingSpec = field(repr=False)

    def __post_init__(self) -> None:
        allowed = set(self.ring.base_vars)
        for f in (self.f0, self.f1):
            if not f.variables() <= allowed:
                raise ValueError(f"component {f} uses non-base variables")

    @classmethod
    def _new(cls, f0: Poly, f1: Poly, ring: ExtRingSpec) -> ExtElem:
        # arithmetic on valid elements stays valid; skip the variable scan
        x = object.__new__(cls)
        object.__setattr__(x, "f0", f0)
        object.__setattr__(x, "f1", f1)
        object.__setattr__(x, "ring", ring)
        return x

    def is_zero(self) -> bool:
        return self.f0.is_zero() and self.f1.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def terms(self) -> Iterator[tuple[Monomial, int, Fraction]]:
        """Yield ``(monomial, z_exponent, coefficient)`` over both components."""
        for e, f in ((0, self.f0), (1, self.f1)):
            for m, c in f.items():
                yield m, e, c

    def valuation(self, name: str = "T") -> int | float:
        return min(self.f0.valuation(name), self.f1.valuation(name))

    def weighted_degree(self, weights) -> int | float:
        return max(self.f0.weighted_degree(weights), self.f1.weighted_degree(weights))

    def truncate(self, name: str, n: int) -> ExtElem:
        return ExtElem._new(self.f0.truncate(name, n), self.f1.truncate(name, n), self.ring)

    def _coerce(self, other) -> ExtElem | None:
        if isinstance(other, (ExtElem, Poly, int, Fraction)):
            return self.ring.coerce(other)
        return None

    def __add__(self, other: ElemLike) -> ExtElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem._new(self.f0 + o.f0, self.f1 + o.f1, self.ring)

    __radd__ = __add__

    def __neg__(self) -> ExtElem:
        return ExtElem._new(-self.f0, -self.f1, self.ring)

    def __sub__(self, other: ElemLike) -> ExtElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem._new(self.f0 - o.f0, self.f1 - o.f1, self.ring)

    def __rsub__(self, other: ElemLike) -> ExtElem:
        return self.ring.coerce(other) - self

    def __mul__(self, other: ElemLike) -> ExtElem:
        if isinstance(other, (int, Fraction)):
            return ExtElem._new(self.f0 * other, self.f1 * other, self.ring)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ext_mul(self, o, self.ring)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ExtElem:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Poly, int, Fraction)):
            other = self.ring.coerce(other)
        if not isinstance(other, ExtElem):
            return NotImplemented
        return self.f0 == other.f0 and self.f1 == other.f1 and self.ring == other.ring

    def __hash__(self) -> int:
        return hash((self.f0, self.f1))

    def __str__(self) -> str:
        from .parser import print_expr

        return print_expr(self)


def ext_mul(x: ExtElem, y: ExtElem, spec: ExtRingSpec) -> ExtElem:
    """Product in normal form, reducing ``z^2`` to ``q``."""
    f0 = x.f0 * y.f0
    if x.f1 and y.f1:
        f0 = f0 + x.f1 * y.f1 * spec.q
    return ExtElem._new(f0, x.f0 * y.f1 + x.f1 * y.f0, spec)


class NotInSubringError(ValueError):
    pass


@dataclass(frozen=True)
class SubringSpec:
    """Elements whose ``gap_var`` exponents all lie in a numerical semigroup."""

    gap_var: str = "T"
    generators: tuple[int, ...] = (2, 3)

    def __post_init__(self) -> None:
        if not self.generators or any(g <= 0 for g in self.generators):
            raise ValueError("semigroup generators must be positive integers")
        g = 0
        for s in self.generators:
            g = gcd(g, s)
        if g != 1:
            raise ValueError("generators must be coprime, otherwise the gap set is infinite")

    @cached_property
    def _members_and_conductor(self) -> tuple[frozenset[int], int]:
        # conductor reached once min(generators) consecutive members appear
        run_needed = min(self.generators)
        members = {0}
        run = 0
        n = 0
        while run < run_needed:
            n += 1
            if any(n - g in members for g in self.generators if n >= g):
                members.add(n)
                run += 1
            else:
                run = 0
        conductor = n - run_needed + 1
        return frozenset(m for m in members if m < conductor), conductor

    @property
    def gaps(self) -> frozenset[int]:
        small, conductor = self._members_and_conductor
        return frozenset(range(conductor)) - small

    def allows(self, exponent: int) -> bool:
        small, conductor = self._members_and_conductor
        return exponent >= conductor or exponent in small

    def contains(self, x: ExtElem | Poly) -> bool:
        polys = (x.f0, x.f1) if isinstance(x, ExtElem) else (x,)
        return all(self.allows(m.exponent(self.gap_var)) for f in polys for m in f)

    def valuation_refine(self, x: ExtElem) -> int:
        """Valuation in ``gap_var`` of a nonzero subring element.

        Membership forces the result out of the gap set; for ``<2, 3>`` it is
        never 1, so divisibility by ``T`` upgrades to divisibility by ``T^2``.
        """
        if x.is_zero():
            raise ValueError("the zero element has no valuation")
        if not self.contains(x):
            raise NotInSubringError(f"{x} is not in the subring")
        v = int(x.valuation(self.gap_var))
        if not self.allows(v):
            raise AssertionError(f"valuation {v} lies in the gap set")
        return v


def subring_contains(x: ExtElem, sub: SubringSpec) -> bool:
    return sub.contains(x)


def valuation_refine(x: ExtElem, sub: SubringSpec) -> int:
    return sub.valuation_refine(x)
