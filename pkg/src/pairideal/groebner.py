"""Module for the Buchberger engine used as an exact oracle at desk scale."""

from __future__ import annotations

import heapq
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError
from .poly import Monomial, Polynomial, TermOrder, VarIndex, s_polynomial

logger = logging.getLogger(__name__)

ROW_MAJOR = TermOrder.ROW_MAJOR_LEX
ELIMINATE = TermOrder.ELIMINATE_AUX_THEN_ROW_MAJOR_LEX


class Tri(Enum):
    """Answer of a question the engine may be unable to settle within its caps."""

    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"

    @classmethod
    def of(cls, value: bool) -> Tri:  # noqa: D102
        return cls.YES if value else cls.NO


class Status(Enum):  # noqa: D101
    COMPLETE = "complete"
    TRUNCATED_AT_CAPS = "truncated-at-caps"


@dataclass(frozen=True)
class EngineCaps:
    """Budget of a Buchberger run; crossing any of them truncates the run."""

    max_basis_size: int = 5000
    max_poly_degree: int = 40
    max_pair_reductions: int = 2_000_000

    def __post_init__(self):  # noqa: D105
        for name in ("max_basis_size", "max_poly_degree", "max_pair_reductions"):
            if getattr(self, name) < 1:
                raise PreconditionError(f"Cap '{name}' must be positive.")


DEFAULT_CAPS = EngineCaps()


@dataclass
class GroebnerBasis:
    """Result of `buchberger`.

    When `status` is COMPLETE the generators form the reduced Groebner basis,
    monic and sorted by decreasing leading monomial. Otherwise they are
    whatever had been found when a cap fired.
    """

    generators: list[Polynomial]
    order: TermOrder
    status: Status
    reductions: int = 0
    leads: list[Monomial] = field(default_factory=list)

    @property
    def complete(self) -> bool:  # noqa: D102
        return self.status is Status.COMPLETE

    def max_degree(self) -> int:  # noqa: D102
        return max((g.degree() for g in self.generators), default=-1)

    def is_quadratic(self) -> bool:  # noqa: D102
        return all(g.degree() == 2 for g in self.generators)


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Return the remainder of `f` on division by `basis`.

    The greatest reducible term is always reduced first, by the first element
    of `basis` whose leading monomial divides it.

    Args:
    f(Polynomial): the dividend.
    basis(Sequence[Polynomial]): nonzero divisors.
    order(TermOrder): the term order.

    Returns:
    Polynomial

    """
    leads = [(g.leading_monomial(order), g.leading_coefficient(order), g) for g in basis]
    p: dict[Monomial, Fraction] = dict(f.terms)
    remainder: dict[Monomial, Fraction] = {}

    while p:
        m = max(p, key=lambda t: t.key(order))
        c = p[m]
        for lm, lc, g in leads:
            if lm.divides(m):
                q = m / lm
                factor = c / lc
                for t, a in g.terms.items():
                    tm = t * q
                    s = p.get(tm, 0) - a * factor
                    if s:
                        p[tm] = s
                    else:
                        p.pop(tm, None)
                break
        else:
            remainder[m] = c
            del p[m]

    return Polynomial(remainder)


Pair = tuple[int, int]


def _update(
    leads: list[Monomial], pairs: set[Pair], lmf: Monomial
) -> set[Pair]:
    """Return the pair set after a polynomial with leading monomial `lmf` joins the basis.

    Gebauer-Moeller: drops old pairs whose lcm is a strict multiple through
    `lmf`, keeps one new pair per minimal lcm, and skips classes containing a
    pair with coprime leading monomials.
    """
    k = len(leads)
    kept: set[Pair] = set()
    for i, j in pairs:
        lcm = leads[i].lcm(leads[j])
        if (
            not lmf.divides(lcm)
            or lcm == leads[i].lcm(lmf)
            or lcm == leads[j].lcm(lmf)
        ):
            kept.add((i, j))

    by_lcm: dict[Monomial, list[int]] = {}
    for i in range(k):
        by_lcm.setdefault(leads[i].lcm(lmf), []).append(i)

    minimal: list[Monomial] = []
    for lcm in sorted(by_lcm, key=lambda m: m.degree):
        if all(not other.divides(lcm) for other in minimal):
            minimal.append(lcm)

    for lcm in minimal:
        members = by_lcm[lcm]
        if not any(leads[i].is_coprime(lmf) for i in members):
            kept.add((min(members), k))
    return kept


def _minimalize(basis: list[Polynomial], order: TermOrder) -> list[Polynomial]:
    chosen: list[Polynomial] = []
    for f in sorted(basis, key=lambda h: h.leading_monomial(order).key(order)):
        lm = f.leading_monomial(order)
        if all(not g.leading_monomial(order).divides(lm) for g in chosen):
            chosen.append(f)
    return chosen


def _interreduce(basis: list[Polynomial], order: TermOrder) -> list[Polynomial]:
    reduced: list[Polynomial] = []
    for i, g in enumerate(basis):
        r = normal_form(g, basis[:i] + basis[i + 1 :], order)
        reduced.append(r.monic(order))
    return sorted(reduced, key=lambda h: h.leading_monomial(order).key(order), reverse=True)


def reduce_basis(basis: list[Polynomial], order: TermOrder) -> list[Polynomial]:
    """Turn a Groebner basis into the reduced one, monic and sorted decreasingly."""
    return _interreduce(_minimalize([g for g in basis if g], order), order)


def buchberger(
    gens: Iterable[Polynomial],
    order: TermOrder = ROW_MAJOR,
    caps: EngineCaps = DEFAULT_CAPS,
) -> GroebnerBasis:
    """Compute the reduced Groebner basis of the ideal generated by `gens`.

    Pairs are selected by the normal strategy (smallest lcm, by degree first),
    and pairs with coprime leading monomials are never reduced.

    Args:
    gens(Iterable[Polynomial]): the generators; zeros are ignored.
    order(TermOrder): the term order.
    caps(EngineCaps): the budget.

    Returns:
    GroebnerBasis: COMPLETE with the reduced basis, or TRUNCATED_AT_CAPS with
    the partial basis when a cap fired.

    """
    basis: list[Polynomial] = []
    leads: list[Monomial] = []
    pairs: set[Pair] = set()
    # lazily pruned: entries no longer in `pairs` are skipped when popped
    queue: list[tuple[int, tuple[tuple[int, int], ...], Pair]] = []

    def _add(f: Polynomial):
        nonlocal pairs
        f = f.monic(order)
        lm = f.leading_monomial(order)
        pairs = _update(leads, pairs, lm)
        k = len(leads)
        for i, j in pairs:
            if j == k:
                lcm = leads[i].lcm(lm)
                heapq.heappush(queue, (lcm.degree, lcm.key(order), (i, j)))
        basis.append(f)
        leads.append(lm)

    for g in gens:
        if g:
            _add(g)

    def _truncated(reason: str, reductions: int) -> GroebnerBasis:
        logger.warning(
            "Buchberger stopped at %s (basis %d, pairs left %d)",
            reason, len(basis), len(pairs),
        )
        return GroebnerBasis(list(basis), order, Status.TRUNCATED_AT_CAPS, reductions, list(leads))

    reductions = 0
    while pairs:
        _, _, (i, j) = heapq.heappop(queue)
        if (i, j) not in pairs:
            continue
        pairs.remove((i, j))

        reductions += 1
        if reductions > caps.max_pair_reductions:
            return _truncated("max_pair_reductions", reductions)

        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if r:
            if r.degree() > caps.max_poly_degree:
                return _truncated("max_poly_degree", reductions)
            _add(r)
            if len(basis) > caps.max_basis_size:
                return _truncated("max_basis_size", reductions)

        if reductions % 1000 == 0:
            logger.debug(
                "%d pairs reduced, basis %d, pairs left %d", reductions, len(basis), len(pairs)
            )

    reduced = reduce_basis(basis, order)
    logger.info(
        "Groebner basis complete: %d elements after %d pair reductions", len(reduced), reductions
    )
    return GroebnerBasis(
        reduced, order, Status.COMPLETE, reductions,
        [g.leading_monomial(order) for g in reduced],
    )


@lru_cache(maxsize=256)
def _cached_basis(
    gens: tuple[Polynomial, ...], order: TermOrder, caps: EngineCaps
) -> GroebnerBasis:
    return buchberger(gens, order, caps)


def groebner_basis(
    gens: Iterable[Polynomial],
    order: TermOrder = ROW_MAJOR,
    caps: EngineCaps = DEFAULT_CAPS,
) -> GroebnerBasis:
    """Like `buchberger`, but remembers recent results for identical inputs."""
    return _cached_basis(tuple(gens), order, caps)


def is_groebner(basis: Sequence[Polynomial], order: TermOrder) -> bool:
    """Check that every S-polynomial of basis elements reduces to zero."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if basis[i].leading_monomial(order).is_coprime(basis[j].leading_monomial(order)):
                continue
            if normal_form(s_polynomial(basis[i], basis[j], order), basis, order):
                return False
    return True


def ideal_member(
    f: Polynomial,
    gens: Iterable[Polynomial],
    caps: EngineCaps = DEFAULT_CAPS,
    order: TermOrder = ROW_MAJOR,
) -> Tri:
    """Decide whether `f` lies in the ideal generated by `gens`.

    Returns:
    Tri: INCONCLUSIVE when the basis could not be completed within `caps`.

    """
    gb = groebner_basis(gens, order, caps)
    if not gb.complete:
        return Tri.INCONCLUSIVE
    if not gb.generators:
        return Tri.of(not f)
    return Tri.of(not normal_form(f, gb.generators, order))


def ideal_equal(
    a: Iterable[Polynomial],
    b: Iterable[Polynomial],
    caps: EngineCaps = DEFAULT_CAPS,
    order: TermOrder = ROW_MAJOR,
) -> Tri:
    """Compare two ideals through their reduced Groebner bases."""
    ga = groebner_basis(a, order, caps)
    gb = groebner_basis(b, order, caps)
    if not (ga.complete and gb.complete):
        return Tri.INCONCLUSIVE
    return Tri.of(set(ga.generators) == set(gb.generators))


def ideal_contains(
    big: Iterable[Polynomial],
    small: Iterable[Polynomial],
    caps: EngineCaps = DEFAULT_CAPS,
) -> Tri:
    """Decide whether the ideal of `small` is contained in the ideal of `big`."""
    gb = groebner_basis(big, ROW_MAJOR, caps)
    if not gb.complete:
        return Tri.INCONCLUSIVE
    if not gb.generators:
        return Tri.of(not any(small))
    return Tri.of(not any(normal_form(f, gb.generators, ROW_MAJOR) for f in small))


def _eliminate_aux(gens: list[Polynomial], caps: EngineCaps) -> list[Polynomial] | Tri:
    gb = groebner_basis(gens, ELIMINATE, caps)
    if not gb.complete:
        return Tri.INCONCLUSIVE
    return [g for g in gb.generators if not any(v.aux for v in g.variables())]


def ideal_intersection(
    a: Iterable[Polynomial],
    b: Iterable[Polynomial],
    caps: EngineCaps = DEFAULT_CAPS,
) -> list[Polynomial] | Tri:
    """Generators of the intersection of two ideals of x-polynomials.

    Computes a basis of t*a + (1-t)*b with t above every x and keeps the
    elements free of t.

    Returns:
    list[Polynomial] | Tri: Tri.INCONCLUSIVE when a cap fired.

    Raises:
    PreconditionError: if an input already contains an auxiliary variable.

    """
    a, b = list(a), list(b)
    if any(v.aux for f in a + b for v in f.variables()):
        raise PreconditionError("Intersection inputs must be free of auxiliary variables.")
    t = Polynomial.var(VarIndex.t())
    one_minus_t = Polynomial.constant(1) - t
    return _eliminate_aux([t * f for f in a] + [one_minus_t * g for g in b], caps)


def intersect_all(
    ideals: Sequence[Sequence[Polynomial]],
    caps: EngineCaps = DEFAULT_CAPS,
) -> list[Polynomial] | Tri:
    """Intersect a nonempty list of ideals by folding `ideal_intersection`.

    Raises:
    PreconditionError: for an empty list.

    """
    if not ideals:
        raise PreconditionError("Cannot intersect an empty family of ideals.")
    current: list[Polynomial] | Tri = list(ideals[0])
    for other in ideals[1:]:
        if isinstance(current, Tri):
            return current
        current = ideal_intersection(current, other, caps)
    return current


def saturate_by_product(
    gens: Iterable[Polynomial],
    variables: Iterable[VarIndex],
    caps: EngineCaps = DEFAULT_CAPS,
) -> list[Polynomial] | Tri:
    """Generators of (gens) : (prod of `variables`)^infinity.

    Adds 1 - t * prod(variables) and eliminates t.

    Returns:
    list[Polynomial] | Tri: Tri.INCONCLUSIVE when a cap fired.

    """
    product = Polynomial.monomial(Monomial((v, 1) for v in variables))
    t = Polynomial.var(VarIndex.t())
    relation = Polynomial.constant(1) - t * product
    return _eliminate_aux([*gens, relation], caps)
