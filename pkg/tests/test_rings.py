import random

import pytest
from hypothesis import given

from lndkernel.construction import P_EXPANDED, standard_relation
from lndkernel.poly import T, X, Y
from lndkernel.rings import (
    ExtRingSpec,
    NotInSubringError,
    SubringSpec,
    ext_mul,
    subring_contains,
    valuation_refine,
)
from lndkernel.sampling import random_subring_element

from strategies import RING, elements


def test_unit_identity(ring):
    u = ring.z - ring.elem(T**4 * P_EXPANDED)
    v = ring.z + ring.elem(T**4 * X + T**5 * Y)
    prod = ext_mul(u, v, ring)
    assert prod == ring.one
    assert prod.f0 == 1 and prod.f1.is_zero()


def test_z_squared_is_q(ring):
    assert ext_mul(ring.z, ring.z, ring) == ring.elem(T**8 * (X + T * Y) ** 2 + 1)
    assert standard_relation() == T**8 * P_EXPANDED**2 + 1


def test_one_times_y(ring, el):
    y = el("T*X - 3/4*z + Y*z")
    assert ext_mul(ring.one, y, ring) == y


def test_relation_rejects_z_and_foreign_variables():
    from lndkernel.poly import P

    with pytest.raises(ValueError):
        ExtRingSpec(P + 1)


def test_ring_mismatch_rejected():
    small = ExtRingSpec(T + 0 + 1)
    with pytest.raises(ValueError):
        RING.z + small.z


def test_degenerate_q_one():
    r = ExtRingSpec(T**0)
    assert r.z * r.z == r.one
    assert (r.z - 1) * (r.z + 1) == r.zero


@given(elements(), elements(), elements())
def test_ext_mul_laws(x, y, w):
    assert x * y == y * x
    assert (x * y) * w == x * (y * w)
    assert x * (y + w) == x * y + x * w


def test_subring_examples(ring, sub, el):
    assert subring_contains(ring.elem(T**2), sub)
    assert not subring_contains(ring.elem(T * X), sub)
    assert subring_contains(el("T^2*X + T^3*Y + z"), sub)
    assert subring_contains(ring.z * ring.elem(T**5), sub)
    assert not subring_contains(ring.z * ring.elem(T), sub)


def test_semigroup_data():
    s = SubringSpec()
    assert s.gaps == frozenset({1})
    assert [e for e in range(8) if s.allows(e)] == [0, 2, 3, 4, 5, 6, 7]
    s35 = SubringSpec(generators=(3, 5))
    assert s35.gaps == frozenset({1, 2, 4, 7})


def test_non_coprime_generators_rejected():
    with pytest.raises(ValueError):
        SubringSpec(generators=(2, 4))


def test_subring_closure(ring, sub):
    rng = random.Random("closure")
    for _ in range(200):
        x = random_subring_element(rng, ring, sub)
        y = random_subring_element(rng, ring, sub)
        assert sub.contains(x * y)
        assert sub.contains(x + y)


def test_valuation_refine_examples(ring, sub, el):
    assert valuation_refine(el("T^2*X + T^3"), sub) == 2
    assert valuation_refine(ring.z, sub) == 0
    f = el("X + T^2*Y + 5")
    assert valuation_refine(ring.elem(T**3) * f, sub) == 3


def test_valuation_refine_errors(ring, sub):
    with pytest.raises(ValueError):
        valuation_refine(ring.zero, sub)
    with pytest.raises(NotInSubringError):
        valuation_refine(ring.elem(T * X), sub)


def test_gap_invariant_500(ring, sub):
    rng = random.Random("gap")
    seen = set()
    for _ in range(500):
        v = valuation_refine(random_subring_element(rng, ring, sub), sub)
        assert v != 1
        seen.add(v)
    assert seen >= {0, 2, 3}
