import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from crnlie.lie import bracket_closed_form, kappa, step_field
from crnlie.poly import Polynomial, PolyVectorField, lie_bracket, monomial_poly

x1, x2, x3 = (Polynomial.variable(i) for i in range(3))
K2 = Polynomial.variable(4)  # k2 in a 3-species, 2-step ring


def test_arith_examples():
    assert (x1 + x2) + (-x1) == x2
    assert x1 * x1 == Polynomial({((0, 2),): 1})
    assert (x1 * x2).scale(2) - x1 * x2 == x1 * x2
    assert (x1 - x1).is_zero()
    assert x1 + 0 == x1
    assert 3 * x1 == x1.scale(3)


def test_derivative_examples():
    assert (x2 * x2).derivative(1) == x2.scale(2)
    assert (x1 * x2).derivative(0) == x2
    assert x2.derivative(0).is_zero()
    assert monomial_poly([2, 3]).derivative(1) == monomial_poly([2, 2], coeff=3)


def test_evaluate_constant_term():
    p = x1 * x2 + Fraction(7, 3)
    assert p.evaluate([0, 0]) == Fraction(7, 3)
    assert p.evaluate({0: 2, 1: Fraction(1, 2)}) == Fraction(10, 3)


def test_format():
    p = (x1 * x2 * K2).scale(-2)
    assert p.format(["x1", "x2", "x3", "k1", "k2"]) == "-2*x1*x2*k2"
    assert (x1 * x1 + x2.scale(Fraction(3, 2)) - 1).format() == "x1^2 + 3/2*x2 - 1"
    assert Polynomial().format() == "0"
    assert (-x1).format() == "-x1"


def test_jacobian_ex1(ex1):
    g = step_field(ex1, 0)
    zero, one = Polynomial(), Polynomial.constant(1)
    assert g.jacobian() == [[-one, zero, zero], [one, zero, zero], [zero, zero, zero]]
    f = step_field(ex1, 1).scale(K2)
    jac = f.jacobian()
    expected = [[zero] * 3, [zero, (x2 * K2).scale(-4), zero], [zero, (x2 * K2).scale(2), zero]]
    assert jac == expected


def test_jacobian_of_constant_field():
    v = PolyVectorField([Polynomial.constant(3), Polynomial.constant(-1)])
    assert all(e.is_zero() for row in v.jacobian() for e in row)


def test_bracket_with_itself_vanishes(ex2):
    g = step_field(ex2, 0)
    assert lie_bracket(g, g).is_zero()


# -- randomized fields and the sympy oracle ---------------------------------

SYMS = sp.symbols("v0 v1 v2 v3")  # v3 plays the role of a rate parameter


def random_poly(rng, nvars=3, params=1, max_deg=2, max_terms=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [rng.randint(0, max_deg) for _ in range(nvars + params)]
        terms[tuple((i, e) for i, e in enumerate(exps) if e)] = rng.randint(-3, 3)
    return Polynomial(terms)


def random_field(rng, dim=3):
    return PolyVectorField(random_poly(rng) for _ in range(dim))


def to_sympy(p: Polynomial):
    return sum((sp.Rational(c.numerator, c.denominator) *
                sp.Mul(*[SYMS[v] ** e for v, e in m]) for m, c in p.items()), sp.Integer(0))


def sympy_bracket(v, w, dim=3):
    X = sp.Matrix(SYMS[:dim])
    V = sp.Matrix([to_sympy(c) for c in v])
    W = sp.Matrix([to_sympy(c) for c in w])
    return sp.expand(W.jacobian(X) * V - V.jacobian(X) * W)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_bracket_matches_sympy(seed):
    rng = random.Random(seed)
    v, w = random_field(rng), random_field(rng)
    ours = lie_bracket(v, w)
    ref = sympy_bracket(v, w)
    for comp, r in zip(ours, ref):
        assert sp.expand(to_sympy(comp) - r) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_ring_axioms(seed):
    rng = random.Random(seed)
    p, q, r = (random_poly(rng) for _ in range(3))
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p
    assert p - p == Polynomial()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_bracket_algebra(seed):
    rng = random.Random(seed)
    u, v, w = (random_field(rng) for _ in range(3))
    a, b = Fraction(rng.randint(-5, 5), rng.randint(1, 4)), rng.randint(-3, 3)
    assert lie_bracket(v, w) == -lie_bracket(w, v)
    assert lie_bracket(v.scale(a) + w.scale(b), u) == \
        lie_bracket(v, u).scale(a) + lie_bracket(w, u).scale(b)
    jacobi = (lie_bracket(u, lie_bracket(v, w)) + lie_bracket(v, lie_bracket(w, u))
              + lie_bracket(w, lie_bracket(u, v)))
    assert jacobi.is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_bracket_finite_difference(seed):
    rng = random.Random(seed)
    v, w = random_field(rng), random_field(rng)
    point = [rng.uniform(0.5, 2.0) for _ in range(4)]
    h = 1e-6

    def ev(field, pt):
        return [float(c.evaluate([Fraction(t) for t in pt])) for c in field]

    def directional(field, direction):
        plus = [p + h * d for p, d in zip(point, direction + [0.0])]
        minus = [p - h * d for p, d in zip(point, direction + [0.0])]
        return [(a - b) / (2 * h) for a, b in zip(ev(field, plus), ev(field, minus))]

    vv, ww = ev(v, point), ev(w, point)
    approx = [a - b for a, b in zip(directional(w, vv), directional(v, ww))]
    exact = [float(c) for c in lie_bracket(v, w).evaluate([Fraction(t) for t in point])]
    scale = max(1.0, max(abs(e) for e in exact))
    for a, e in zip(approx, exact):
        assert abs(a - e) <= 1e-6 * scale + 1e-6 * abs(e)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_bracket_closed_form_matches(seed):
    from netgen import random_network

    net = random_network(random.Random(seed), max_species=4, max_steps=2)
    if net.num_steps < 2:
        return
    direct = lie_bracket(step_field(net, 0), step_field(net, 1))
    assert direct == bracket_closed_form(net, 0, 1)


def test_kappa_is_derivative_contraction(ex2):
    # kappa_{1,2}: alpha(.,1)^T D_1 gamma(.,2); X1+X2 against (0,0,-1,1) -> 0
    assert kappa(ex2, 0, 1).is_zero()
    # kappa_{3,1}: alpha(.,3)=X4 against gamma(.,1)=(-1,0,1,0) -> 0
    assert kappa(ex2, 2, 0).is_zero()
    # kappa_{1,3}: X1+X2 against (0,1,0,-1) -> x1 (derivative wrt x2)
    assert kappa(ex2, 0, 2) == x1


@pytest.mark.parametrize("exps", [[1, 0, 0], [0, 2, 0], [1, 1, 3]])
def test_partial_of_monomial(exps):
    p = monomial_poly(exps)
    for m in range(3):
        d = p.derivative(m)
        if exps[m] == 0:
            assert d.is_zero()
        else:
            lower = list(exps)
            lower[m] -= 1
            assert d == monomial_poly(lower, coeff=exps[m])
