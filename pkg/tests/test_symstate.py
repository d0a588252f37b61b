import random
from fractions import Fraction as F

import pytest
import sympy as sp

from chainpoly.suites import random_probe
from chainpoly.symstate import (
    OpName,
    SymExpr,
    apply,
    apply_word,
    commutator_residual,
    literal_commutator_residual,
)

z, t = sp.symbols("z t", positive=True)


def to_sympy(s: SymExpr):
    L = sp.log(z * t)
    return sum((sp.Rational(c.numerator, c.denominator) * z**m.zpow * t**m.tpow * L**m.logpow
                for m, c in s.terms.items()), sp.Integer(0))


def sympy_op(op, f, alpha):
    a = sp.Rational(alpha.numerator, alpha.denominator)
    T = lambda g: t * sp.diff(g, t) + (1 + a) / 2 * g  # noqa: E731
    Ep = lambda g: t * (z * sp.diff(g, z) + t * sp.diff(g, t) + (1 + a) * g - z * g)  # noqa: E731
    Em = lambda g: (z * sp.diff(g, z) - t * sp.diff(g, t)) / t  # noqa: E731
    if op is OpName.T:
        return T(f)
    if op is OpName.Eplus:
        return Ep(f)
    if op is OpName.Eminus:
        return Em(f)
    return T(T(f)) + T(f) + Em(Ep(f))


@pytest.mark.parametrize("alpha", [F(0), F(1, 2), F(-2, 3)])
def test_realization_matches_direct_differentiation(alpha):
    rng = random.Random(7)
    for _ in range(6):
        p = random_probe(rng, terms=3)
        for op in OpName:
            got = to_sympy(apply(op, p, alpha))
            want = sympy_op(op, to_sympy(p), alpha)
            assert sp.simplify(sp.expand(got - want)) == 0


def test_euler_operators_on_log():
    s = SymExpr.monomial(logpow=2)
    # t d/dt L^2 = 2 L
    assert apply(OpName.T, s, -1) == SymExpr.monomial(logpow=1, coeff=2)


@pytest.mark.parametrize("alpha", [F(0), F(3, 5), F(10)])
def test_commutators_vanish(alpha):
    rng = random.Random(1)
    for _ in range(20):
        p = random_probe(rng)
        for a, b in [(OpName.Eminus, OpName.Eplus), (OpName.T, OpName.Eplus),
                     (OpName.T, OpName.Eminus)]:
            assert commutator_residual(a, b, p, alpha).is_zero()
        # argument order is antisymmetric
        assert commutator_residual(OpName.Eplus, OpName.Eminus, p, alpha).is_zero()


def test_opposite_sign_residual_is_minus_four_T():
    rng = random.Random(3)
    for _ in range(10):
        p = random_probe(rng)
        lit = literal_commutator_residual(OpName.Eminus, OpName.Eplus, p, F(1, 2))
        assert lit == apply(OpName.T, p, F(1, 2)) * -4


def test_casimir_is_central():
    rng = random.Random(5)
    for _ in range(5):
        p = random_probe(rng)
        for g in (OpName.T, OpName.Eplus, OpName.Eminus):
            lhs = apply_word([OpName.Casimir, g], p, F(2, 3))
            rhs = apply_word([g, OpName.Casimir], p, F(2, 3))
            assert lhs == rhs


def test_eminus_on_constant_is_zero_and_valid():
    s = SymExpr.monomial()
    out = apply(OpName.Eminus, s, 0)
    assert out.is_zero() and out.is_valid_state()
    assert not SymExpr.monomial(tpow=-1).is_valid_state()
