"""Derivations of ``B`` given by the images of ``T, X, Y`` and ``z``."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .poly import Poly
from .rings import ExtElem, ExtRingSpec, NotInSubringError, SubringSpec


class NotLocallyNilpotentError(ArithmeticError):
    """An iteration budget ran out before reaching zero."""


@dataclass(frozen=True, eq=False)
class Derivation:
    ring: ExtRingSpec
    images: Mapping[str, ExtElem]
    z_image: ExtElem

    @classmethod
    def from_images(cls, ring: ExtRingSpec, images: Mapping[str, object]) -> Derivation:
        """Build from ``{"T": ..., "X": ..., "Y": ..., "z": ...}``; missing keys map to 0."""
        unknown = set(images) - set(ring.base_vars) - {"z"}
        if unknown:
            raise ValueError(f"no such generators: {sorted(unknown)}")
        base = {v: ring.coerce(images.get(v, 0)) for v in ring.base_vars}
        return cls(ring, base, ring.coerce(images.get("z", 0)))

    def image(self, name: str) -> ExtElem:
        return self.z_image if name == "z" else self.images[name]

    def apply(self, x: ExtElem | Poly | int | Fraction) -> ExtElem:
        x = self.ring.coerce(x)
        acc = self.ring.zero
        for v in self.ring.base_vars:
            img = self.images[v]
            if img.is_zero():
                continue
            d0, d1 = x.f0.partial(v), x.f1.partial(v)
            if d0 or d1:
                acc = acc + img * ExtElem._new(d0, d1, self.ring)
        if x.f1 and self.z_image:
            acc = acc + self.z_image * x.f1
        return acc

    __call__ = apply

    def scaled(self, f: ExtElem | Poly | int | Fraction) -> Derivation:
        """The derivation ``f * D``."""
        f = self.ring.coerce(f)
        return Derivation(
            self.ring, {v: f * img for v, img in self.images.items()}, f * self.z_image
        )

    def __neg__(self) -> Derivation:
        return self.scaled(-1)

    def __rmul__(self, f) -> Derivation:
        return self.scaled(f)

    def check_well_defined(self) -> bool:
        """``2*z*D(z) == D(q)``, i.e. the relation ideal is preserved."""
        r = self.ring
        return 2 * r.z * self.z_image == self.apply(r.elem(r.q))

    def check_preserves_subring(self, sub: SubringSpec, gens: Iterable[ExtElem]) -> bool:
        gens = list(gens)
        for g in gens:
            if not sub.contains(g):
                raise NotInSubringError(f"generator {g} is not in the subring")
        return all(sub.contains(self.apply(g)) for g in gens)

    def nilpotency_index(self, x, max_iter: int) -> NilpotencyReport:
        if max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        x = self.ring.coerce(x)
        chain = [x]
        if x.is_zero():
            return NilpotencyReport(x, 0, tuple(chain))
        cur = x
        for n in range(1, max_iter + 1):
            cur = self.apply(cur)
            chain.append(cur)
            if cur.is_zero():
                return NilpotencyReport(x, n, tuple(chain))
        return NilpotencyReport(x, None, tuple(chain))

    def is_lnd(self, gens: Iterable[ExtElem], max_iter: int) -> LndCheck:
        reports = tuple(self.nilpotency_index(g, max_iter) for g in gens)
        return LndCheck(all(not r.exceeded for r in reports), reports)

    def in_kernel(self, x) -> bool:
        return self.apply(x).is_zero()

    def exp(self, x, max_iter: int = 64) -> ExtElem:
        """``sum D^n(x) / n!``; raises if ``x`` is not annihilated within budget."""
        report = self.nilpotency_index(x, max_iter)
        if report.exceeded:
            raise NotLocallyNilpotentError(
                f"{report.element} not annihilated within {max_iter} applications"
            )
        acc = self.ring.zero
        for n, term in enumerate(report.iterates):
            acc = acc + term * Fraction(1, factorial(n))
        return acc


@dataclass(frozen=True, eq=False)
class NilpotencyReport:
    element: ExtElem
    index: int | None  # None: budget exceeded
    iterates: tuple[ExtElem, ...] = field(repr=False)

    @property
    def exceeded(self) -> bool:
        return self.index is None

    def to_dict(self) -> dict:
        return {
            "element": str(self.element),
            "index": "exceeded" if self.index is None else self.index,
            "chain": [str(x) for x in self.iterates],
        }


@dataclass(frozen=True)
class LndCheck:
    ok: bool
    reports: tuple[NilpotencyReport, ...]

    def __bool__(self) -> bool:
        return self.ok

    @property
    def indices(self) -> list[int | None]:
        return [r.index for r in self.reports]

    @property
    def exceeded(self) -> list[ExtElem]:
        return [r.element for r in self.reports if r.exceeded]
