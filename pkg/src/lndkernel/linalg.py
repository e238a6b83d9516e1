"""Exact Gauss-Jordan elimination over the rationals.

Row operations are tracked so that an inconsistent system comes back with a
certificate ``y`` satisfying ``y^T A = 0`` and ``y^T b != 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class LinearSolution:
    feasible: bool
    solution: tuple[Fraction, ...] | None
    witness: tuple[Fraction, ...] | None
    rank: int
    pivots: tuple[int, ...]


def _shape(A: Matrix) -> tuple[int, int]:
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise DimensionError("rows of A have different lengths")
    return m, n


def _rref(A: Matrix, b: Sequence[Fraction] | None, track: bool):
    m, n = _shape(A)
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b] if b is not None else [Fraction(0)] * m
    ops = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)] if track else None
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            rhs[r], rhs[p] = rhs[p], rhs[r]
            if track:
                ops[r], ops[p] = ops[p], ops[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        rhs[r] *= inv
        if track:
            ops[r] = [v * inv for v in ops[r]]
        for i in range(m):
            f = rows[i][c]
            if i == r or not f:
                continue
            rows[i] = [a - f * b_ for a, b_ in zip(rows[i], rows[r])]
            rhs[i] -= f * rhs[r]
            if track:
                ops[i] = [a - f * b_ for a, b_ in zip(ops[i], ops[r])]
        pivots.append(c)
        r += 1
    return rows, rhs, ops, pivots


def solve_linear(A: Matrix, b: Sequence[Fraction]) -> LinearSolution:
    """Solve ``A x = b`` exactly, or certify that no solution exists.

    Free variables are set to zero, so when ``b`` equals a pivot column the
    returned solution is the corresponding unit vector.
    """
    m, n = _shape(A)
    if len(b) != m:
        raise DimensionError(f"A has {m} rows but b has {len(b)} entries")
    rows, rhs, ops, pivots = _rref(A, b, track=True)
    rank = len(pivots)
    for i in range(rank, m):
        if rhs[i]:
            return LinearSolution(False, None, tuple(ops[i]), rank, tuple(pivots))
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rhs[i]
    return LinearSolution(True, tuple(x), None, rank, tuple(pivots))


def rank(A: Matrix) -> int:
    return len(_rref(A, None, track=False)[3])


def nullspace(A: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """A basis of ``{x : A x = 0}``, one vector per free column."""
    m, n = _shape(A)
    if m == 0:
        n = ncols or 0
    rows, _, _, pivots = _rref(A, None, track=False)
    basis = []
    pivot_set = set(pivots)
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][free]
        basis.append(v)
    return basis


def mat_vec(A: Matrix, x: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * v for a, v in zip(row, x)), Fraction(0)) for row in A]


def vec_mat(y: Sequence[Fraction], A: Matrix) -> list[Fraction]:
    _, n = _shape(A)
    out = [Fraction(0)] * n
    for yi, row in zip(y, A):
        if yi:
            for j, a in enumerate(row):
                if a:
                    out[j] += yi * a
    return out


def check_solution(A: Matrix, b: Sequence[Fraction], x: Sequence[Fraction]) -> bool:
    return mat_vec(A, x) == [Fraction(v) for v in b]


def check_witness(A: Matrix, b: Sequence[Fraction], y: Sequence[Fraction]) -> bool:
    if len(y) != len(A):
        return False
    lhs_zero = all(v == 0 for v in vec_mat(y, A))
    return lhs_zero and sum((yi * bi for yi, bi in zip(y, b)), Fraction(0)) != 0
