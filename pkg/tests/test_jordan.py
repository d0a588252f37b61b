from fractions import Fraction as F

import pytest
import sympy as sp

from chainpoly.jordan import (
    JordanChainFamily,
    casimir_nilpotent_check,
    closed_form_omega1,
    closed_form_omega2,
    exp_Eplus_apply,
    genfunc_jordan,
    lowering_residual_jordan,
    ode_residual_jordan,
    route_equivalence_jordan,
    state_jordan,
    verify_ket_actions_jordan,
)
from chainpoly.exact import format_q
from chainpoly.qpoly import QPoly, laguerre
from chainpoly.symstate import OpName, SymExpr, apply


def test_seeds_and_first_steps():
    fam = JordanChainFamily(3, 0, (0, 0))
    assert fam.omega(0, 1) == QPoly([0])
    assert fam.omega(2, 1) == QPoly([3, -2])
    fam = JordanChainFamily(2, F(1, 2), (F(7, 3),))
    s1 = F(7, 3)
    # omega_{1,1} = s1 L_1 + 2 L_0, derivative -s1
    assert fam.omega(1, 1) == s1 * laguerre(1, F(1, 2)) + 2
    assert fam.omega(1, 1).deriv() == QPoly([-s1])


def test_rejects_bad_indices():
    fam = JordanChainFamily(2, 0, (1,))
    with pytest.raises(ValueError):
        fam.omega(3, 2)
    with pytest.raises(ValueError):
        JordanChainFamily(2, 0, (1, 2))


def test_ket_actions(jordan3):
    rep = verify_ket_actions_jordan(jordan3, 6)
    assert rep.passed, [c.to_dict() for c in rep.failures[:3]]
    a = jordan3.alpha
    # K|0,2> = (a^2-1)/4 |0,2> + a |0,1> + |0,0>
    assert rep.info["casimir_matrix"][2] == ["1", format_q(a), format_q((a * a - 1) / 4)]
    assert rep.info["casimir_matrix"][0] == [format_q((a * a - 1) / 4), "0", "0"]


def test_state_layout():
    fam = JordanChainFamily(3, 0, (1, 2))
    s = state_jordan(fam, 1, 2)
    # omega_{1,0} L^2/2 + omega_{1,1} L + omega_{1,2}
    assert s.poly_coefficient(1, 2) == laguerre(1, 0) * F(1, 2)
    assert s.poly_coefficient(1, 1) == fam.omega(1, 1)
    assert s.poly_coefficient(1, 0) == fam.omega(1, 2)


def test_odes_and_lowering(jordan3):
    for n in range(21):
        for ell in (1, 2):
            assert ode_residual_jordan(jordan3, n, ell).is_zero()
        for ell in range(3):
            assert lowering_residual_jordan(jordan3, n, ell).is_zero()


def test_closed_forms_match_recursion(jordan3):
    s1, s2 = jordan3.sigmas
    for n in range(21):
        assert closed_form_omega1(n, jordan3.alpha, s1) == jordan3.omega(n, 1)
        assert closed_form_omega2(n, jordan3.alpha, s1, s2) == jordan3.omega(n, 2)


def test_generating_functions(jordan3):
    for ell in range(3):
        gf = genfunc_jordan(jordan3, ell, 14)
        for n in range(15):
            assert gf[n] == jordan3.omega(n, ell)
    assert route_equivalence_jordan(jordan3, 12).passed


def test_omega1_against_sympy_ode():
    # independent check of the first chain through a symbolic ODE solve
    z = sp.Symbol("z")
    fam = JordanChainFamily(2, F(1, 2), (3,))
    a = sp.Rational(1, 2)
    for n in range(1, 6):
        w = sum(sp.Rational(c.numerator, c.denominator) * z**k for k, c in enumerate(fam.omega(n, 1).coeffs))
        L = sp.assoc_laguerre(n, a, z)
        expr = z * sp.diff(w, z, 2) + (1 + a - z) * sp.diff(w, z) + n * w + 2 * sp.diff(L, z)
        assert sp.expand(expr) == 0


def test_casimir_nilpotent(jordan3):
    assert casimir_nilpotent_check(jordan3, 5).passed


def test_exp_eplus_acts_as_shift_on_laguerre_chain():
    # exp(u E+) |0,0> has t^k coefficient u^k |k,0> for the Laguerre chain
    fam = JordanChainFamily(1, F(1, 3))
    s = exp_Eplus_apply(state_jordan(fam, 0, 0), F(1, 2), 5, fam.alpha)
    for k in range(6):
        assert s.poly_coefficient(k, 0) == laguerre(k, F(1, 3)) * F(1, 2) ** k


def test_lowest_state_annihilated():
    fam = JordanChainFamily(3, 2, (1, 1))
    for ell in range(3):
        out = apply(OpName.Eminus, state_jordan(fam, 0, ell), fam.alpha)
        assert out == SymExpr()
