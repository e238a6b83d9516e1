"""Sparse multivariate polynomials over the rationals.

Polynomials live in the fixed alphabet ``T, X, Y, P`` and map each
:class:`Monomial` to a nonzero rational coefficient.  All arithmetic is
exact.

Terms are ordered by their degree in the non-``T`` variables first, then
lexicographically with ``X > Y > P > T``.  ``T`` carries weight zero in the
grading, so ``T^2*X`` sorts above ``T^3*Y`` and ``T^8*X^2`` above ``1``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Mapping, Union

# Internal storage order of exponents; also the lex priority for sorting.
VARIABLES = ("X", "Y", "P", "T")
# Order in which factors are printed inside one monomial.
PRINT_ORDER = ("T", "X", "Y", "P")

_INDEX = {v: i for i, v in enumerate(VARIABLES)}
_GRADED = tuple(v != "T" for v in VARIABLES)

XY_WEIGHTS = {"X": 1, "Y": 1}

NEG_INF = -math.inf
POS_INF = math.inf

Scalar = Union[int, Fraction]


class UnknownVariableError(ValueError):
    """Raised for a variable name outside the polynomial alphabet."""

    def __init__(self, name: str) -> None:
        super().__init__(f"unknown variable {name!r}; expected one of {', '.join(VARIABLES)}")
        self.name = name


def _index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise UnknownVariableError(name) from None


class Monomial:
    """A power product of the alphabet variables."""

    __slots__ = ("_exps", "_hash")

    def __init__(self, exponents: Mapping[str, int] | None = None) -> None:
        exps = [0] * len(VARIABLES)
        for name, e in (exponents or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e} for {name}")
            exps[_index(name)] = int(e)
        self._exps = tuple(exps)
        self._hash = hash(self._exps)

    @classmethod
    def _raw(cls, exps: tuple[int, ...]) -> Monomial:
        m = cls.__new__(cls)
        m._exps = exps
        m._hash = hash(exps)
        return m

    @property
    def exponents(self) -> dict[str, int]:
        return {v: e for v, e in zip(VARIABLES, self._exps) if e}

    def exponent(self, name: str) -> int:
        return self._exps[_index(name)]

    def degree(self) -> int:
        return sum(self._exps)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial._raw(tuple(a + b for a, b in zip(self._exps, other._exps)))

    def sort_key(self) -> tuple[int, ...]:
        grade = sum(e for e, g in zip(self._exps, _GRADED) if g)
        return (grade,) + self._exps

    def __lt__(self, other: Monomial) -> bool:
        return self.sort_key() < other.sort_key()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        parts = []
        for v in PRINT_ORDER:
            e = self._exps[_INDEX[v]]
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"Monomial({self.exponents!r})"


ONE_MONOMIAL = Monomial()


class Poly:
    """Immutable sparse polynomial with rational coefficients.

    Stored as integer numerators over one positive common denominator with
    the content normalised away (``gcd(den, *nums) == 1``), so two equal
    polynomials have identical storage.  Coefficients are handed out as
    :class:`~fractions.Fraction`.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None) -> None:
        fracs = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                fracs[m._exps] = fracs.get(m._exps, 0) + c
        fracs = {e: c for e, c in fracs.items() if c}
        den = math.lcm(*(c.denominator for c in fracs.values())) if fracs else 1
        self._num = {e: c.numerator * (den // c.denominator) for e, c in fracs.items()}
        self._den = den
        self._hash = None

    @classmethod
    def _make(cls, num: dict[tuple[int, ...], int], den: int) -> Poly:
        # num must hold no zeros; den may be any positive integer
        p = cls.__new__(cls)
        if den != 1 and num:
            g = math.gcd(den, *num.values())
            if g != 1:
                num = {e: c // g for e, c in num.items()}
                den //= g
        elif not num:
            den = 1
        p._num = num
        p._den = den
        p._hash = None
        return p

    @classmethod
    def var(cls, name: str) -> Poly:
        return cls._make({Monomial({name: 1})._exps: 1}, 1)

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        c = Fraction(c)
        if not c:
            return cls._make({}, 1)
        return cls._make({ONE_MONOMIAL._exps: c.numerator}, c.denominator)

    @classmethod
    def monomial(cls, c: Scalar = 1, **exponents: int) -> Poly:
        return cls({Monomial(exponents): c})

    @classmethod
    def coerce(cls, x: Poly | Scalar) -> Poly:
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Poly")

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self.items())

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        den = self._den
        for e, c in self._num.items():
            yield Monomial._raw(e), Fraction(c, den)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending monomial order."""
        return sorted(self.items(), key=lambda t: t[0].sort_key(), reverse=True)

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self) -> bool:
        return bool(self._num)

    def __len__(self) -> int:
        return len(self._num)

    def __iter__(self) -> Iterator[Monomial]:
        return (Monomial._raw(e) for e in self._num)

    def variables(self) -> set[str]:
        used = [False] * len(VARIABLES)
        for exps in self._num:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return {v for v, u in zip(VARIABLES, used) if u}

    def is_constant(self) -> bool:
        return all(e == ONE_MONOMIAL._exps for e in self._num)

    def coefficient(self, m: Monomial) -> Fraction:
        return Fraction(self._num.get(m._exps, 0), self._den)

    def degree(self, name: str) -> int | float:
        """Degree in one variable; ``-inf`` for zero."""
        i = _index(name)
        return max((e[i] for e in self._num), default=NEG_INF)

    def weighted_degree(self, weights: Mapping[str, int]) -> int | float:
        w = [0] * len(VARIABLES)
        for name, k in weights.items():
            w[_index(name)] = k
        return max(
            (sum(a * b for a, b in zip(e, w)) for e in self._num),
            default=NEG_INF,
        )

    def valuation(self, name: str = "T") -> int | float:
        """Smallest exponent of ``name`` over all terms; ``+inf`` for zero."""
        i = _index(name)
        return min((e[i] for e in self._num), default=POS_INF)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Poly | Scalar) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        other = Poly.coerce(other)
        if not other._num:
            return self
        if not self._num:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            out = dict(self._num)
            for e, c in other._num.items():
                s = out.get(e, 0) + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            return Poly._make(out, d1)
        den = math.lcm(d1, d2)
        k1, k2 = den // d1, den // d2
        out = {e: c * k1 for e, c in self._num.items()}
        for e, c in other._num.items():
            s = out.get(e, 0) + c * k2
            if s:
                out[e] = s
            else:
                del out[e]
        return Poly._make(out, den)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        p = Poly.__new__(Poly)
        p._num = {e: -c for e, c in self._num.items()}
        p._den = self._den
        p._hash = None
        return p

    def __sub__(self, other: Poly | Scalar) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-Poly.coerce(other))

    def __rsub__(self, other: Scalar) -> Poly:
        return Poly.coerce(other) - self

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other or not self._num:
                return Poly._make({}, 1)
            a, b = other.numerator, other.denominator
            return Poly._make({e: c * a for e, c in self._num.items()}, self._den * b)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._num or not other._num:
            return Poly._make({}, 1)
        acc: dict[tuple[int, ...], int] = {}
        right = list(other._num.items())
        for e1, c1 in self._num.items():
            for e2, c2 in right:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Poly._make({e: c for e, c in acc.items() if c}, self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._num.items()), self._den))
        return self._hash

    # -- calculus and substitution ----------------------------------------

    def partial(self, name: str) -> Poly:
        i = _index(name)
        out = {}
        for exps, c in self._num.items():
            e = exps[i]
            if e:
                out[exps[:i] + (e - 1,) + exps[i + 1:]] = c * e
        return Poly._make(out, self._den)

    def substitute(self, name: str, value: Poly | Scalar) -> Poly:
        """Image under ``name -> value`` with every other variable fixed."""
        i = _index(name)
        value = Poly.coerce(value)
        by_power: dict[int, dict[tuple[int, ...], int]] = {}
        for exps, c in self._num.items():
            rest = exps[:i] + (0,) + exps[i + 1:]
            by_power.setdefault(exps[i], {})[rest] = c
        out = Poly()
        for e in sorted(by_power):
            out = out + Poly._make(by_power[e], self._den) * value**e
        return out

    def truncate(self, name: str, n: int) -> Poly:
        """Drop every term whose exponent of ``name`` is at least ``n``."""
        i = _index(name)
        return Poly._make({e: c for e, c in self._num.items() if e[i] < n}, self._den)

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        if not self._num:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            term = _format_term(m, c)
            if k == 0:
                out.append(term)
            elif term.startswith("-"):
                out.append(" - " + term[1:])
            else:
                out.append(" + " + term)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _format_term(m: Monomial, c: Fraction) -> str:
    if m == ONE_MONOMIAL:
        return str(c)
    if c == 1:
        return str(m)
    if c == -1:
        return "-" + str(m)
    return f"{c}*{m}"


T = Poly.var("T")
X = Poly.var("X")
Y = Poly.var("Y")
P = Poly.var("P")


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: Poly, v: str) -> Poly:
    return p.partial(v)


def weighted_degree(p: Poly, weights: Mapping[str, int]) -> int | float:
    return p.weighted_degree(weights)


def t_valuation(p: Poly) -> int | float:
    return p.valuation("T")


def substitute(p: Poly, v: str, r: Poly | Scalar) -> Poly:
    return p.substitute(v, r)
