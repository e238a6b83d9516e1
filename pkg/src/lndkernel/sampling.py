"""Seeded random elements for property sampling.

Random polynomials are rational combinations (numerators and denominators
bounded by 10) of up to 6 random monomials with per-variable exponents at
most 4.  All generators take a :class:`random.Random` so runs reproduce.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .construction import P_EXPANDED
from .poly import Monomial, Poly, T
from .rings import ExtElem, ExtRingSpec, SubringSpec

MAX_COEFF = 10
MAX_TERMS = 6
MAX_EXP = 4


def random_rat(rng: random.Random) -> Fraction:
    num = rng.choice([n for n in range(-MAX_COEFF, MAX_COEFF + 1) if n])
    return Fraction(num, rng.randint(1, MAX_COEFF))


def random_poly(
    rng: random.Random,
    variables: Sequence[str] = ("T", "X", "Y"),
    t_exponents: Sequence[int] | None = None,
    max_terms: int = MAX_TERMS,
) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = {}
        for v in variables:
            if v == "T" and t_exponents is not None:
                exps[v] = rng.choice(t_exponents)
            else:
                exps[v] = rng.randint(0, MAX_EXP)
        m = Monomial(exps)
        terms[m] = terms.get(m, 0) + random_rat(rng)
    return Poly(terms)


def random_element(rng: random.Random, ring: ExtRingSpec) -> ExtElem:
    return ring.elem(random_poly(rng), random_poly(rng))


def random_nonzero_element(rng: random.Random, ring: ExtRingSpec) -> ExtElem:
    while True:
        x = random_element(rng, ring)
        if x:
            return x


def random_subring_element(rng: random.Random, ring: ExtRingSpec, sub: SubringSpec) -> ExtElem:
    allowed = [e for e in range(MAX_EXP + 1) if sub.allows(e)]
    while True:
        x = ring.elem(random_poly(rng, t_exponents=allowed), random_poly(rng, t_exponents=allowed))
        if x:
            return x


def random_kernel_element(rng: random.Random, ring: ExtRingSpec) -> ExtElem:
    """Random nonzero element of ``Q[T, z, X + T*Y]``."""
    while True:
        g0 = random_poly(rng, ("T", "P"), max_terms=4).substitute("P", P_EXPANDED)
        g1 = random_poly(rng, ("T", "P"), max_terms=4).substitute("P", P_EXPANDED)
        x = ring.elem(g0, g1)
        if x:
            return x


def random_subring_kernel_element(
    rng: random.Random, ring: ExtRingSpec, basis: Sequence[ExtElem], max_terms: int = MAX_TERMS
) -> ExtElem:
    """Random nonzero rational combination of the given kernel basis elements."""
    while True:
        acc = ring.zero
        for x in rng.sample(list(basis), min(len(basis), rng.randint(1, max_terms))):
            acc = acc + x * random_rat(rng)
        if acc:
            return acc


def random_equivalence_sample(rng: random.Random, ring: ExtRingSpec) -> ExtElem:
    """Mix of generic elements, kernel elements and kernel elements nudged off
    the kernel, so both answers of a kernel test get exercised."""
    kind = rng.randrange(3)
    if kind == 0:
        return random_element(rng, ring)
    x = random_kernel_element(rng, ring)
    if kind == 1:
        return x
    m = Monomial({"T": rng.randint(0, MAX_EXP), "X": rng.randint(0, 2), "Y": rng.randint(1, 2)})
    return x + ring.elem(Poly({m: random_rat(rng)})) * (ring.z if rng.random() < 0.5 else ring.one)


def kernel_unit(ring: ExtRingSpec, sign: int = -1) -> ExtElem:
    """``z - T^4 P`` (sign -1) or ``z + T^4 P`` (sign +1)."""
    return ring.z + ring.elem(T**4 * P_EXPANDED) * sign
