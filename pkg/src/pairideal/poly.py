"""Module for exact multivariate polynomials in the entries x[i,j] of a variable matrix."""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import override

from .errors import PolynomialFormatError, PreconditionError

Coefficient = Fraction | int


class TermOrder(Enum):
    """Lexicographic orders on monomials.

    Both scan x[1,1] > x[1,2] > ... > x[1,n] > x[2,1] > ... > x[m,n]. They only
    differ in where auxiliary variables go: last for ROW_MAJOR_LEX, strictly
    above every matrix entry for ELIMINATE_AUX_THEN_ROW_MAJOR_LEX.
    """

    ROW_MAJOR_LEX = "row-major-lex"
    ELIMINATE_AUX_THEN_ROW_MAJOR_LEX = "eliminate-aux-then-row-major-lex"


_SHIFT = 20


@dataclass(frozen=True)
class VarIndex:
    """The variable x[row,col], or the auxiliary variable t[col] when `aux` is set."""

    row: int
    col: int
    aux: bool = False

    def __post_init__(self):  # noqa: D105
        if self.aux:
            if self.col < 0:
                raise PreconditionError("Auxiliary variable index must not be negative.")
        elif self.row < 1 or self.col < 1:
            raise PreconditionError(f"x[{self.row},{self.col}] is not a matrix entry.")

    @classmethod
    def t(cls, k: int = 0) -> VarIndex:  # noqa: D102
        return cls(0, k, True)

    def code(self, order: TermOrder) -> int:
        """Rank of the variable under `order`, smaller means more significant."""
        if not self.aux:
            return (self.row << _SHIFT) | self.col
        if order is TermOrder.ELIMINATE_AUX_THEN_ROW_MAJOR_LEX:
            return -(self.col + 1)
        return (1 << (3 * _SHIFT)) + self.col

    @property
    def cell(self) -> tuple[int, int]:  # noqa: D102
        return (self.row, self.col)

    @override
    def __str__(self) -> str:
        return f"t[{self.col}]" if self.aux else f"x[{self.row},{self.col}]"


def x(i: int, j: int) -> VarIndex:  # noqa: D103
    return VarIndex(i, j)


_CANONICAL = TermOrder.ELIMINATE_AUX_THEN_ROW_MAJOR_LEX


class Monomial:
    """A power product, stored sparsely as sorted (variable, exponent) pairs."""

    __slots__ = ("_hash", "_keys", "_map", "exps")

    def __init__(self, exps: Mapping[VarIndex, int] | Iterable[tuple[VarIndex, int]] = ()):
        """Store the exponents, dropping zeros.

        Args:
        exps(Mapping[VarIndex, int] | Iterable[tuple[VarIndex, int]]): the exponents.

        Raises:
        PreconditionError: for negative exponents.

        """
        pairs = exps.items() if isinstance(exps, Mapping) else exps
        merged: dict[VarIndex, int] = {}
        for var, e in pairs:
            if e < 0:
                raise PreconditionError(f"Negative exponent for {var}.")
            if e:
                merged[var] = merged.get(var, 0) + e
        self.exps: tuple[tuple[VarIndex, int], ...] = tuple(
            sorted(merged.items(), key=lambda p: p[0].code(_CANONICAL))
        )
        self._hash: int = hash(self.exps)
        self._map: dict[VarIndex, int] = dict(self.exps)
        self._keys: dict[TermOrder, tuple[tuple[int, int], ...]] = {}

    @classmethod
    def var(cls, v: VarIndex, e: int = 1) -> Monomial:  # noqa: D102
        return cls(((v, e),))

    def key(self, order: TermOrder) -> tuple[tuple[int, int], ...]:
        """Return a tuple that compares like the monomial does under `order`.

        Returns:
        tuple[tuple[int, int], ...]

        """
        k = self._keys.get(order)
        if k is None:
            ranked = sorted((v.code(order), e) for v, e in self.exps)
            k = tuple((-c, e) for c, e in ranked)
            self._keys[order] = k
        return k

    @property
    def degree(self) -> int:  # noqa: D102
        return sum(e for _, e in self.exps)

    def variables(self) -> set[VarIndex]:  # noqa: D102
        return set(self._map)

    def __mul__(self, other: Monomial) -> Monomial:  # noqa: D105
        return Monomial(self.exps + other.exps)

    def divides(self, other: Monomial) -> bool:  # noqa: D102
        theirs = other._map
        return all(theirs.get(v, 0) >= e for v, e in self.exps)

    def __truediv__(self, other: Monomial) -> Monomial:
        """Divide exactly.

        Raises:
        PreconditionError: if `other` does not divide `self`.

        """
        if not other.divides(self):
            raise PreconditionError("Monomial division is not exact.")
        mine = dict(self.exps)
        for v, e in other.exps:
            mine[v] -= e
        return Monomial(mine)

    def lcm(self, other: Monomial) -> Monomial:  # noqa: D102
        merged = dict(self.exps)
        for v, e in other.exps:
            merged[v] = max(merged.get(v, 0), e)
        return Monomial(merged)

    def is_coprime(self, other: Monomial) -> bool:  # noqa: D102
        return self._map.keys().isdisjoint(other._map)

    @override
    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.exps == other.exps

    @override
    def __hash__(self) -> int:
        return self._hash

    def render(self, order: TermOrder = TermOrder.ROW_MAJOR_LEX) -> str:  # noqa: D102
        ranked = sorted(self.exps, key=lambda p: p[0].code(order))
        return "*".join(f"{v}^{e}" if e > 1 else str(v) for v, e in ranked)

    @override
    def __repr__(self) -> str:
        return f"Monomial({self.render() or '1'})"


ONE = Monomial()


def compare_monomials(a: Monomial, b: Monomial, order: TermOrder) -> int:
    """Compare two monomials.

    Returns:
    int: 1 if a > b, 0 if equal, -1 if a < b.

    """
    ka, kb = a.key(order), b.key(order)
    return (ka > kb) - (ka < kb)


class Polynomial:
    """A polynomial with exact rational coefficients.

    Instances are treated as values: operations return new polynomials and
    never modify their operands.
    """

    __slots__ = ("_lead", "terms")

    def __init__(self, terms: Mapping[Monomial, Coefficient] | None = None):
        """Store the terms, dropping zero coefficients.

        Args:
        terms(Mapping[Monomial, Coefficient] | None): monomial to coefficient.

        """
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c != 0:
                    self.terms[m] = Fraction(c)
        self._lead: dict[TermOrder, Monomial] = {}

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> Polynomial:
        p = cls()
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c: Coefficient) -> Polynomial:  # noqa: D102
        return cls({ONE: c})

    @classmethod
    def var(cls, v: VarIndex) -> Polynomial:  # noqa: D102
        return cls({Monomial.var(v): 1})

    @classmethod
    def monomial(cls, m: Monomial, c: Coefficient = 1) -> Polynomial:  # noqa: D102
        return cls({m: c})

    def is_zero(self) -> bool:  # noqa: D102
        return not self.terms

    def __bool__(self) -> bool:  # noqa: D105
        return bool(self.terms)

    def __len__(self) -> int:  # noqa: D105
        return len(self.terms)

    def __add__(self, other: Polynomial) -> Polynomial:  # noqa: D105
        res = self.terms.copy()
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Polynomial._raw(res)

    def __neg__(self) -> Polynomial:  # noqa: D105
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:  # noqa: D105
        res = self.terms.copy()
        for m, c in other.terms.items():
            s = res.get(m, 0) - c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return Polynomial._raw(res)

    def mul_term(self, m: Monomial, c: Coefficient = 1) -> Polynomial:
        """Multiply by the single term c*m."""
        if c == 0:
            return Polynomial()
        return Polynomial._raw({t * m: a * c for t, a in self.terms.items()})

    def __mul__(self, other: Polynomial | Coefficient) -> Polynomial:  # noqa: D105
        if not isinstance(other, Polynomial):
            return self.mul_term(ONE, other)
        res: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                else:
                    res.pop(m, None)
        return Polynomial._raw(res)

    def __rmul__(self, other: Coefficient) -> Polynomial:  # noqa: D105
        return self.mul_term(ONE, other)

    def __pow__(self, k: int) -> Polynomial:  # noqa: D105
        return power(self, k)

    @override
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            other = Polynomial.constant(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    @override
    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def leading_monomial(self, order: TermOrder) -> Monomial:
        """Return the greatest monomial under `order`.

        Raises:
        PreconditionError: for the zero polynomial.

        """
        lead = self._lead.get(order)
        if lead is None:
            if not self.terms:
                raise PreconditionError("The zero polynomial has no leading term.")
            lead = max(self.terms, key=lambda m: m.key(order))
            self._lead[order] = lead
        return lead

    def leading_coefficient(self, order: TermOrder) -> Fraction:  # noqa: D102
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder) -> Polynomial:
        """Scale so that the leading coefficient is 1."""
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return Polynomial._raw({m: c / lc for m, c in self.terms.items()})

    def degree(self) -> int:
        """Total degree, -1 for the zero polynomial."""
        return max((m.degree for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:  # noqa: D102
        return len({m.degree for m in self.terms}) <= 1

    def variables(self) -> set[VarIndex]:  # noqa: D102
        found: set[VarIndex] = set()
        for m in self.terms:
            found |= m.variables()
        return found

    def ordered_terms(self, order: TermOrder) -> list[tuple[Monomial, Fraction]]:
        """Return the terms in decreasing order."""
        return sorted(self.terms.items(), key=lambda t: t[0].key(order), reverse=True)

    def substitute_zero(self, variables: set[VarIndex]) -> Polynomial:
        """Set every variable in `variables` to 0."""
        return Polynomial._raw(
            {m: c for m, c in self.terms.items() if not (m.variables() & variables)}
        )

    def render(self, order: TermOrder = TermOrder.ROW_MAJOR_LEX) -> str:
        """Write the polynomial as "c*x[i,j]^e*..." with terms in decreasing order."""
        if not self.terms:
            return "0"
        out = ""
        for m, c in self.ordered_terms(order):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = m.render(order)
            if not body:
                text = str(a)
            elif a == 1:
                text = body
            else:
                text = f"{a}*{body}"
            if not out:
                out = text if sign == "+" else "-" + text
            else:
                out += f" {sign} {text}"
        return out

    @override
    def __str__(self) -> str:
        return self.render()

    @override
    def __repr__(self) -> str:
        return f"Polynomial({self.render()})"


def add(f: Polynomial, g: Polynomial) -> Polynomial:  # noqa: D103
    return f + g


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:  # noqa: D103
    return f * g


def power(f: Polynomial, k: int) -> Polynomial:
    """Raise `f` to the k-th power by repeated squaring.

    Raises:
    PreconditionError: for negative exponents.

    """
    if k < 0:
        raise PreconditionError("Negative powers are not polynomials.")
    result = Polynomial.constant(1)
    base = f
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def leading_term(f: Polynomial, order: TermOrder) -> tuple[Monomial, Fraction]:
    """Return the leading monomial and its coefficient.

    Raises:
    PreconditionError: for the zero polynomial.

    """
    m = f.leading_monomial(order)
    return m, f.terms[m]


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    """Return S(f,g) = (L/lt(f))*f - (L/lt(g))*g with L the lcm of the leading monomials.

    Raises:
    PreconditionError: if f or g is zero.

    """
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    lcm = mf.lcm(mg)
    return f.mul_term(lcm / mf, 1 / cf) - g.mul_term(lcm / mg, 1 / cg)


_TERM = re.compile(
    r"\s*([+-])?\s*([^+-]+)"
    #
    # first capturing group
    # an optional sign, missing only for the first term
    #
    # second capturing group
    # everything up to the next sign: the product of factors of this term
)

_FACTOR = re.compile(
    r"(?:x\[\s*(\d+)\s*,\s*(\d+)\s*\]|t\[\s*(\d+)\s*\])(?:\^(\d+))?"
    #
    # groups 1 and 2: row and column of a matrix variable x[i,j]
    # group 3: index of an auxiliary variable t[k]
    # group 4: optional exponent after "^"
)

_NUMBER = re.compile(r"\d+(?:/\d+)?")


def parse_polynomial(text: str) -> Polynomial:
    """Read the format written by `Polynomial.render`.

    Args:
    text(str): e.g. "x[1,1]*x[2,2] - x[1,2]*x[2,1]" or "3/2*x[1,1]^2 + 1".

    Returns:
    Polynomial

    Raises:
    PolynomialFormatError: if the text is not a polynomial in that format.

    """
    stripped = text.strip()
    if not stripped:
        raise PolynomialFormatError("Empty polynomial text.")
    if stripped == "0":
        return Polynomial()

    terms: dict[Monomial, Fraction] = {}
    position = 0
    while position < len(stripped):
        u = _TERM.match(stripped, position)
        if u is None:
            raise PolynomialFormatError(f"Cannot read a term at '{stripped[position:]}'.")
        if u.group(1) is None and position != 0:
            raise PolynomialFormatError("Terms must be separated by '+' or '-'.")
        position = u.end()

        coefficient = Fraction(-1 if u.group(1) == "-" else 1)
        exps: list[tuple[VarIndex, int]] = []
        for factor in u.group(2).strip().split("*"):
            factor = factor.strip()
            if _NUMBER.fullmatch(factor):
                try:
                    coefficient *= Fraction(factor)
                except ZeroDivisionError as err:
                    raise PolynomialFormatError(f"Coefficient '{factor}' divides by zero.") from err
                continue
            v = _FACTOR.fullmatch(factor)
            if v is None:
                raise PolynomialFormatError(f"'{factor}' is not a number nor a variable.")
            try:
                if v.group(3) is not None:
                    var = VarIndex.t(int(v.group(3)))
                else:
                    var = VarIndex(int(v.group(1)), int(v.group(2)))
            except PreconditionError as err:
                raise PolynomialFormatError(str(err)) from err
            exps.append((var, int(v.group(4)) if v.group(4) else 1))

        m = Monomial(exps)
        terms[m] = terms.get(m, Fraction(0)) + coefficient

    return Polynomial(terms)
