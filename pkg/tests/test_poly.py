import random
from fractions import Fraction

import pytest

from pairideal.errors import PolynomialFormatError, PreconditionError
from pairideal.poly import (
    ONE,
    Monomial,
    Polynomial,
    TermOrder,
    VarIndex,
    add,
    compare_monomials,
    leading_term,
    multiply,
    parse_polynomial,
    power,
    s_polynomial,
    x,
)

LEX = TermOrder.ROW_MAJOR_LEX
ELIM = TermOrder.ELIMINATE_AUX_THEN_ROW_MAJOR_LEX


def m(*cells: tuple[int, int]) -> Monomial:
    return Monomial((x(i, j), 1) for i, j in cells)


def X(i: int, j: int) -> Polynomial:
    return Polynomial.var(x(i, j))


def random_polynomial(rng: random.Random) -> Polynomial:
    terms: dict[Monomial, Fraction] = {}
    for _ in range(rng.randint(0, 4)):
        exps = [(x(rng.randint(1, 2), rng.randint(1, 3)), rng.randint(0, 2)) for _ in range(3)]
        terms[Monomial(exps)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return Polynomial(terms)


def test_row_major_comparisons():
    assert compare_monomials(m((1, 1)), m((1, 2)), LEX) == 1
    assert compare_monomials(m((1, 2)), m((2, 1)), LEX) == 1
    assert compare_monomials(m((1, 3), (2, 1)), m((1, 3), (2, 2)), LEX) == 1
    assert compare_monomials(m((2, 2)), m((2, 2)), LEX) == 0
    # lex, not degree first
    assert compare_monomials(m((1, 1)), Monomial.var(x(1, 2), 5), LEX) == 1


def test_aux_variable_position():
    t = Monomial.var(VarIndex.t())
    assert compare_monomials(t, m((1, 1)), ELIM) == 1
    assert compare_monomials(t, m((3, 3)), LEX) == -1


def test_order_is_multiplicative():
    rng = random.Random(3)
    cells = [(i, j) for i in range(1, 3) for j in range(1, 4)]
    for _ in range(100):
        a, b, c = (m(*rng.sample(cells, rng.randint(0, 3))) for _ in range(3))
        assert compare_monomials(a * c, b * c, LEX) == compare_monomials(a, b, LEX)


def test_monomial_division():
    a = m((1, 1), (2, 2))
    assert m((1, 1)).divides(a)
    assert not m((1, 2)).divides(a)
    assert a / m((2, 2)) == m((1, 1))
    assert a.lcm(m((2, 2), (3, 3))) == m((1, 1), (2, 2), (3, 3))
    assert a.is_coprime(m((1, 2)))
    with pytest.raises(PreconditionError):
        _ = a / m((3, 3))


def test_zero_coefficients_are_dropped():
    f = X(1, 1) - X(1, 1)
    assert f.is_zero()
    assert f == 0
    assert Polynomial({m((1, 1)): 0}).is_zero()


def test_ring_axioms():
    rng = random.Random(11)
    for _ in range(100):
        f, g, h = (random_polynomial(rng) for _ in range(3))
        assert (f + g) - g == f
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f * Polynomial.constant(1) == f


def test_add_and_multiply():
    f, g = X(1, 1) + X(1, 2), X(1, 1) - X(1, 2)
    assert add(f, g) == 2 * X(1, 1)
    assert multiply(f, g) == X(1, 1) ** 2 - X(1, 2) ** 2
    assert add(f, -f) == Polynomial()
    assert multiply(f, Polynomial()) == Polynomial()


def test_power():
    f = X(1, 1) - X(2, 2)
    assert power(f, 0) == Polynomial.constant(1)
    assert f**3 == f * f * f
    with pytest.raises(PreconditionError):
        _ = power(f, -1)


def test_leading_term():
    f = X(1, 2) * X(2, 1) - 2 * X(1, 1) * X(2, 2)
    assert leading_term(f, LEX) == (m((1, 1), (2, 2)), Fraction(-2))
    assert f.monic(LEX).leading_coefficient(LEX) == 1
    with pytest.raises(PreconditionError):
        _ = leading_term(Polynomial(), LEX)


def test_leading_term_is_multiplicative():
    rng = random.Random(5)
    for _ in range(100):
        f, g = random_polynomial(rng), random_polynomial(rng)
        if f.is_zero() or g.is_zero():
            continue
        mf, cf = leading_term(f, LEX)
        mg, cg = leading_term(g, LEX)
        assert leading_term(f * g, LEX) == (mf * mg, cf * cg)


def test_s_polynomial_of_two_minors_sharing_a_corner():
    # k, l, q = 1, 2, 3
    f = X(1, 1) * X(2, 2) - X(2, 1) * X(1, 2)
    g = X(1, 1) * X(2, 3) - X(1, 3) * X(2, 1)
    s = s_polynomial(f, g, LEX)
    assert s.leading_monomial(LEX) == m((2, 3), (2, 1), (1, 2))
    assert s == X(1, 3) * X(2, 1) * X(2, 2) - X(1, 2) * X(2, 1) * X(2, 3)


def test_s_polynomial_with_itself():
    f = X(1, 1) * X(2, 2) - X(1, 2) * X(2, 1)
    assert s_polynomial(f, f, LEX).is_zero()
    with pytest.raises(PreconditionError):
        _ = s_polynomial(f, Polynomial(), LEX)


def test_substitute_zero():
    f = X(1, 1) * X(2, 2) - X(1, 2) * X(2, 1) + X(3, 3)
    assert f.substitute_zero({x(1, 1), x(3, 3)}) == -X(1, 2) * X(2, 1)


def test_homogeneity_and_degree():
    f = X(1, 1) * X(2, 2) - X(1, 2) * X(2, 1)
    assert f.is_homogeneous()
    assert f.degree() == 2
    assert not (f + X(1, 1)).is_homogeneous()
    assert Polynomial().degree() == -1


def test_render():
    f = X(1, 2) * X(2, 1) - X(1, 1) * X(2, 2)
    assert str(f) == "-x[1,1]*x[2,2] + x[1,2]*x[2,1]"
    assert str(Fraction(3, 2) * X(1, 1) ** 2 + Polynomial.constant(1)) == "3/2*x[1,1]^2 + 1"
    assert str(Polynomial()) == "0"
    assert str(Polynomial.monomial(ONE, -4)) == "-4"


def test_parse_reads_rendered_text():
    rng = random.Random(2)
    for _ in range(30):
        f = random_polynomial(rng)
        assert parse_polynomial(str(f)) == f


def test_parse_polynomial():
    f = parse_polynomial("x[1,1]*x[2,2] - x[1, 2]*x[2,1]")
    assert f == X(1, 1) * X(2, 2) - X(1, 2) * X(2, 1)
    assert parse_polynomial("2*t[0]*x[1,1] + 1/2") == (
        2 * Polynomial.var(VarIndex.t()) * X(1, 1) + Polynomial.constant(Fraction(1, 2))
    )


@pytest.mark.parametrize(
    "text", ["", "x[1,1] x[2,2]", "y[1,1]", "x[0,1]", "x[1,1]*", "x[1,1] + 1/0*x[1,2]"]
)
def test_parse_errors(text: str):
    with pytest.raises(PolynomialFormatError):
        _ = parse_polynomial(text)
