"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from lndkernel.construction import standard_ring
from lndkernel.poly import Monomial, Poly

RING = standard_ring()

rats = st.builds(
    Fraction,
    st.integers(-10, 10),
    st.integers(1, 10),
)

nonzero_rats = rats.filter(bool)


def monomials(variables=("T", "X", "Y"), max_exp=4):
    return st.builds(
        lambda es: Monomial(dict(zip(variables, es))),
        st.tuples(*[st.integers(0, max_exp) for _ in variables]),
    )


def polys(variables=("T", "X", "Y"), max_terms=5, max_exp=4):
    return st.dictionaries(
        monomials(variables, max_exp), rats, max_size=max_terms
    ).map(Poly)


def nonzero_polys(**kw):
    return polys(**kw).filter(lambda p: not p.is_zero())


def elements(max_terms=4, max_exp=3):
    p = polys(max_terms=max_terms, max_exp=max_exp)
    return st.builds(RING.elem, p, p)


def nonzero_elements(**kw):
    return elements(**kw).filter(lambda x: not x.is_zero())
