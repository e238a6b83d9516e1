"""Kernel of ``T^3 d/dX - T^2 d/dY`` and the non-finite-generation obstruction.

After the change of variables ``P = X + T*Y`` the derivation only moves ``Y``,
so its kernel on ``B`` is ``Q[T, z, P]``.  Intersecting with the subring
``S`` keeps ``T^m P^k z^e`` exactly when the expansion of ``T^m P^k`` avoids
the gap exponents of ``T``.

The obstruction certificate asks whether ``T^2 P^(d+1)`` is a combination,
modulo ``T^N``, of ``1`` and kernel monomials of ``P``-degree at most ``d``
with coefficients in ``span{1, T^2, T^3, z, T^2 z, T^3 z}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import linalg
from .construction import P_EXPANDED, standard_derivation, standard_subring
from .derivations import Derivation
from .poly import Monomial, Poly, T, Y
from .rings import ExtElem, ExtRingSpec, SubringSpec


class InvariantError(AssertionError):
    """An internal consistency check failed."""


class ClaimPreconditionError(ValueError):
    pass


# -- P-coordinates -----------------------------------------------------------

@dataclass(frozen=True)
class PCoordElem:
    """``g0 + g1*z`` with ``g0, g1`` in ``T, P, Y`` (``X`` eliminated)."""

    g0: Poly
    g1: Poly

    def is_y_free(self) -> bool:
        return "Y" not in self.g0.variables() and "Y" not in self.g1.variables()

    def p_degree(self) -> int | float:
        return max(self.g0.degree("P"), self.g1.degree("P"))


_X_IN_P = Poly.var("P") - T * Y


def to_p_coordinates(x: ExtElem) -> PCoordElem:
    return PCoordElem(x.f0.substitute("X", _X_IN_P), x.f1.substitute("X", _X_IN_P))


def from_p_coordinates(pc: PCoordElem, ring: ExtRingSpec) -> ExtElem:
    return ring.elem(pc.g0.substitute("P", P_EXPANDED), pc.g1.substitute("P", P_EXPANDED))


def kernel_membership_via_coordinates(x: ExtElem) -> bool:
    """Membership in ``Q[T, z, X + T*Y]``."""
    return to_p_coordinates(x).is_y_free()


# -- kernel monomials ----------------------------------------------------------

class KernelMonomial(NamedTuple):
    """``T^m * P^k * z^e``."""

    m: int
    k: int
    e: int

    def expand(self, ring: ExtRingSpec) -> ExtElem:
        f = T**self.m * P_EXPANDED**self.k
        return ring.elem(0, f) if self.e else ring.elem(f)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.k, self.m, self.e)

    def __str__(self) -> str:
        parts = []
        for name, n in (("T", self.m), ("P", self.k)):
            if n == 1:
                parts.append(name)
            elif n > 1:
                parts.append(f"{name}^{n}")
        if self.e:
            parts.append("z")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class KernelBasis:
    monomials: tuple[KernelMonomial, ...]
    bounds: tuple[int, int]  # (d_xy, d_t)

    def elements(self, ring: ExtRingSpec) -> list[ExtElem]:
        return [mono.expand(ring) for mono in self.monomials]


def kernel_basis(
    sub: SubringSpec | None = None,
    d_xy: int = 0,
    d_t: int = 0,
    D: Derivation | None = None,
) -> KernelBasis:
    """Monomials ``T^m P^k z^e`` (``k <= d_xy``, ``m <= d_t``) lying in the subring."""
    if d_xy < 0 or d_t < 0:
        raise ValueError("degree bounds must be non-negative")
    sub = sub or standard_subring()
    D = D or standard_derivation()
    kept = []
    for k in range(d_xy + 1):
        for m in range(d_t + 1):
            for e in (0, 1):
                mono = KernelMonomial(m, k, e)
                x = mono.expand(D.ring)
                if not sub.contains(x):
                    continue
                if not D.in_kernel(x):
                    raise InvariantError(f"{mono} is not annihilated by the derivation")
                kept.append(mono)
    kept.sort(key=KernelMonomial.sort_key)
    return KernelBasis(tuple(kept), (d_xy, d_t))


def kernel_span_oracle(
    D: Derivation, sub: SubringSpec, alpha_max: int, xy_max: int
) -> list[ExtElem]:
    """Basis of ``ker D`` on the span of subring monomials in a box.

    Brute force: every ``T^a X^b Y^c z^e`` with ``a <= alpha_max`` and
    ``b + c <= xy_max`` whose ``T``-exponent is allowed; the kernel is read
    off as the nullspace of the matrix of ``D`` on that span.  Nothing here
    uses the ``P`` coordinate.
    """
    ring = D.ring
    cols = []
    for a in range(alpha_max + 1):
        if not sub.allows(a):
            continue
        for b in range(xy_max + 1):
            for c in range(xy_max + 1 - b):
                for e in (0, 1):
                    f = Poly({Monomial({"T": a, "X": b, "Y": c}): 1})
                    cols.append(ring.elem(0, f) if e else ring.elem(f))
    images = [D.apply(x) for x in cols]
    row_index: dict[tuple[Monomial, int], int] = {}
    for img in images:
        for m, e, _ in img.terms():
            row_index.setdefault((m, e), len(row_index))
    A = [[Fraction(0)] * len(cols) for _ in row_index]
    for j, img in enumerate(images):
        for m, e, c in img.terms():
            A[row_index[(m, e)]][j] = c
    out = []
    for v in linalg.nullspace(A, ncols=len(cols)):
        acc = ring.zero
        for coeff, x in zip(v, cols):
            if coeff:
                acc = acc + x * coeff
        out.append(acc)
    return out


def span_rank(elems: Sequence[ExtElem]) -> int:
    index: dict[tuple[Monomial, int], int] = {}
    for x in elems:
        for m, e, _ in x.terms():
            index.setdefault((m, e), len(index))
    rows = []
    for x in elems:
        row = [Fraction(0)] * len(index)
        for m, e, c in x.terms():
            row[index[(m, e)]] = c
        rows.append(row)
    return linalg.rank(rows) if rows else 0


def same_span(a: Sequence[ExtElem], b: Sequence[ExtElem]) -> bool:
    ra, rb = span_rank(a), span_rank(b)
    return ra == rb == span_rank(list(a) + list(b))


def truncate_mod_t(x: ExtElem, N: int) -> ExtElem:
    if N < 1:
        raise ValueError("modulus power must be at least 1")
    return x.truncate("T", N)


# -- the claim -------------------------------------------------------------------

def claim_check(x: ExtElem, D: Derivation | None = None, sub: SubringSpec | None = None) -> bool:
    """A subring kernel element is in ``Q[T, z]`` or has every
    ``X``/``Y``-bearing term divisible by ``T^2``."""
    D = D or standard_derivation(x.ring)
    sub = sub or standard_subring()
    if not sub.contains(x):
        raise ClaimPreconditionError(f"{x} is not in the subring")
    if not D.in_kernel(x):
        raise ClaimPreconditionError(f"{x} is not in the kernel")
    pc = to_p_coordinates(x)
    if pc.is_y_free() and pc.p_degree() <= 0:
        return True
    for m, _, _ in x.terms():
        if (m.exponent("X") or m.exponent("Y")) and m.exponent("T") < 2:
            return False
    return True


# -- obstruction certificate -------------------------------------------------------

COEFFICIENT_BASIS = (
    KernelMonomial(0, 0, 0),
    KernelMonomial(2, 0, 0),
    KernelMonomial(3, 0, 0),
    KernelMonomial(0, 0, 1),
    KernelMonomial(2, 0, 1),
    KernelMonomial(3, 0, 1),
)

CERTIFICATE_DESCRIPTION = (
    "Generators are 1 and the kernel monomials T^m*P^k*z^e of the subring with "
    "1 <= k <= d and m < modulus; each has T-valuation at least 2, so products of two "
    "of them vanish modulo T^4 and a polynomial expression in them reduces to a linear "
    "combination with coefficients in span{1, T^2, T^3, z, T^2*z, T^3*z}. Every such "
    "combination has X,Y-degree at most d, while the target has X,Y-degree d+1; the "
    "witness row combination turns this into an exact contradiction 0 = nonzero. This "
    "covers generating sets normalised to kernel monomials modulo T^4; it is a finite "
    "certificate for the given d, not a proof for all d."
)


@dataclass(frozen=True)
class ObstructionCertificate:
    d: int
    modulus: int
    target: ExtElem
    generators: tuple[KernelMonomial, ...]
    coefficient_basis: tuple[KernelMonomial, ...]
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    rhs: tuple[Fraction, ...] = field(repr=False)
    result: linalg.LinearSolution = field(repr=False)
    description: str = CERTIFICATE_DESCRIPTION

    @property
    def verdict(self) -> str:
        return "feasible" if self.result.feasible else "infeasible"

    @property
    def witness(self) -> tuple[Fraction, ...] | None:
        return self.result.witness

    @property
    def solution(self) -> tuple[Fraction, ...] | None:
        return self.result.solution

    def validate(self) -> bool:
        """Recheck the verdict from the stored matrix alone."""
        if self.result.feasible:
            return linalg.check_solution(self.matrix, self.rhs, self.result.solution)
        return linalg.check_witness(self.matrix, self.rhs, self.result.witness)

    def to_dict(self) -> dict:
        entries = [
            [i, j, str(v)]
            for i, row in enumerate(self.matrix)
            for j, v in enumerate(row)
            if v
        ]
        return {
            "d": self.d,
            "modulus": self.modulus,
            "target": str(self.target),
            "generators": [str(g) for g in self.generators],
            "coefficient_basis": [str(c) for c in self.coefficient_basis],
            "matrix": {
                "rows": list(self.row_labels),
                "cols": list(self.col_labels),
                "entries": entries,
            },
            "rhs": [str(v) for v in self.rhs],
            "rank": self.result.rank,
            "verdict": self.verdict,
            "witness": None if self.witness is None else [str(v) for v in self.witness],
            "solution": None if self.solution is None else [str(v) for v in self.solution],
            "validated": self.validate(),
            "description": self.description,
        }


def _row_key(key: tuple[Monomial, int]):
    m, e = key
    return tuple(-v for v in m.sort_key()) + (e,)


def _label(m: Monomial, e: int) -> str:
    s = str(m)
    if e:
        s = "z" if s == "1" else s + "*z"
    return s


def obstruction_certificate(
    d: int,
    modulus: int = 4,
    *,
    target: ExtElem | None = None,
    D: Derivation | None = None,
    sub: SubringSpec | None = None,
) -> ObstructionCertificate:
    """Linear system for ``target == f0 + sum f_i F_i (mod T^modulus)``.

    ``target`` defaults to ``T^2 P^(d+1)``.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    if modulus < 1:
        raise ValueError("modulus must be at least 1")
    D = D or standard_derivation()
    sub = sub or standard_subring()
    ring = D.ring
    if target is None:
        target = ring.elem(T**2 * P_EXPANDED ** (d + 1))
    basis = kernel_basis(sub, d, modulus - 1, D)
    gens = [KernelMonomial(0, 0, 0)] + [g for g in basis.monomials if g.k >= 1]
    gens.sort(key=KernelMonomial.sort_key)

    columns = []
    col_labels = []
    for g in gens:
        g_elem = g.expand(ring)
        for c in COEFFICIENT_BASIS:
            columns.append(truncate_mod_t(c.expand(ring) * g_elem, modulus))
            col_labels.append(f"({c})*({g})")
    b_elem = truncate_mod_t(target, modulus)

    keys = set()
    for x in columns + [b_elem]:
        keys.update((m, e) for m, e, _ in x.terms())
    rows = sorted(keys, key=_row_key)
    row_index = {k: i for i, k in enumerate(rows)}

    A = [[Fraction(0)] * len(columns) for _ in rows]
    for j, x in enumerate(columns):
        for m, e, c in x.terms():
            A[row_index[(m, e)]][j] = c
    b = [Fraction(0)] * len(rows)
    for m, e, c in b_elem.terms():
        b[row_index[(m, e)]] = c

    result = linalg.solve_linear(A, b)
    cert = ObstructionCertificate(
        d=d,
        modulus=modulus,
        target=target,
        generators=tuple(gens),
        coefficient_basis=COEFFICIENT_BASIS,
        row_labels=tuple(_label(m, e) for m, e in rows),
        col_labels=tuple(col_labels),
        matrix=tuple(tuple(r) for r in A),
        rhs=tuple(b),
        result=result,
    )
    if not cert.validate():
        raise InvariantError("solver output failed independent validation")
    return cert
