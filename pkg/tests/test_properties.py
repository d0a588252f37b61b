import math
from fractions import Fraction as F

import pytest

from chainpoly.diag import DiagChainFamily
from chainpoly.exact import pochhammer
from chainpoly.jordan import JordanChainFamily
from chainpoly.properties import (
    apply_operator,
    biorth_inner,
    biorth_report,
    fit_operator_correction,
    fourth_order_operator,
    fourth_order_residual,
    higher_ode_report,
    inner_product_grid,
    mixed_recurrence_residual_jordan,
    partner_q_diag,
    partner_q_jordan,
    recurdiff_residual,
    recurdiff_summed_residual,
    third_order_residual,
    zeros_csv_rows,
    zeros_report,
)
from chainpoly.qpoly import QPoly, laguerre


@pytest.mark.parametrize("alpha,s1", [(0, 0), (0, 1), (2, 3), (F(5, 3), -2)])
def test_jordan_recurrences(alpha, s1):
    fam = JordanChainFamily(2, alpha, (s1,))
    for n in range(21):
        assert recurdiff_residual(fam, n).is_zero()
        assert recurdiff_summed_residual(fam, n).is_zero()
        if n >= 1:
            assert mixed_recurrence_residual_jordan(fam, n).is_zero()


def test_recurrences_reject_wrong_family():
    with pytest.raises(ValueError):
        recurdiff_residual(DiagChainFamily(2, 0, (1,)), 1)


def test_fourth_order_quoted_fails_from_n2_and_corrected_holds():
    fam = JordanChainFamily(2, 10, (2,))
    assert fourth_order_residual(fam, 0).is_zero()
    assert fourth_order_residual(fam, 1).is_zero()
    assert not fourth_order_residual(fam, 6).is_zero()
    for n in range(21):
        assert fourth_order_residual(fam, n, corrected=True).is_zero()


def test_third_order_corrected_including_degenerate_sigma():
    for alpha, s1 in [(10, 2), (F(1, 2), F(3, 2)), (1, F(1, 2)), (0, 0)]:
        fam = DiagChainFamily(2, alpha, (s1,))
        for n in range(1, 21):
            assert third_order_residual(fam, n, corrected=True).is_zero()
    # s1 = 1/(1+a) kills the leading coefficient
    fam = DiagChainFamily(2, 1, (F(1, 2),))
    assert not third_order_residual(fam, 3).is_zero()


def test_fit_recovers_two_slot_correction():
    fam = JordanChainFamily(2, F(1, 2), (1,))
    fit = fit_operator_correction(
        fourth_order_operator(fam.alpha), lambda n: fam.omega(n, 1),
        [0, 1, 2, 2, 2], range(0, 11), range(11, 21),
    )
    assert fit.found and fit.verified
    assert fit.slots == {(2, 0): (F(25, 4), 0, 0), (2, 1): (F(-2), 0, 0)}


def test_fit_reports_nothing_needed_for_true_operator():
    fam = JordanChainFamily(2, 3, (1,))
    op = fourth_order_operator(3, corrected=True)
    fit = fit_operator_correction(op, lambda n: fam.omega(n, 1), [0, 1, 2, 2, 2], range(6), range(6, 9))
    assert fit.found and fit.verified and fit.slots == {}


def test_fit_gives_up_when_no_small_correction_exists():
    fam = JordanChainFamily(2, 3, (1,))
    op = {(0, 0): lambda n: 1}
    # the only "fix" inside these slots would cancel the operator outright
    fit = fit_operator_correction(op, lambda n: fam.omega(n, 1), [0, 0], range(2, 8), range(8, 10))
    assert not fit.found


@pytest.mark.parametrize("fam", [JordanChainFamily(2, 10, (2,)), DiagChainFamily(2, 10, (2,))],
                         ids=["jordan", "diag"])
def test_higher_ode_report(fam):
    rep = higher_ode_report(fam, 14, fit_max=10)
    assert rep.passed
    key = "ode4_fit" if fam.case == "jordan" else "ode3_fit"
    assert rep.info[key]["verified"]


def test_partner_polynomials():
    assert partner_q_jordan(0, 5) == QPoly([1])
    assert partner_q_jordan(1, F(1, 2)) == QPoly([1, F(-2, 3)])
    a, s = F(2), F(1)
    A = -1 + s + a * s
    assert partner_q_diag(1, a, s) == QPoly([1, -A / ((1 + a) * (-1 + 2 * s + a * s))])
    for m in range(8):
        scale = F(math.factorial(m)) / pochhammer(F(1, 3) + 1, m)
        assert partner_q_jordan(m, F(1, 3)) == laguerre(m, F(1, 3)) * scale


def test_partner_diag_names_bad_k():
    with pytest.raises(ValueError, match="k=1"):
        partner_q_diag(3, 1, F(1, 3))


def test_biorthogonality_examples():
    fam = JordanChainFamily(2, F(3, 4), (F(-5, 2),))
    assert biorth_inner(fam, 0, 1).value == 0
    assert biorth_inner(fam, 1, 1).value != 0
    diag = DiagChainFamily(2, 2, (1,))
    assert biorth_inner(diag, 1, 1).value == 0
    # above the triangle the pairing equals -1 + s1 + a s1
    assert biorth_inner(diag, 2, 1).value == 2


@pytest.mark.parametrize("fam", [
    JordanChainFamily(2, 0, (1,)), JordanChainFamily(2, F(1, 2), (-3,)),
    JordanChainFamily(2, 10, (F(2, 7),)), DiagChainFamily(2, 10, (2,)),
    DiagChainFamily(2, 2, (1,)), DiagChainFamily(2, F(1, 3), (5,)),
], ids=lambda f: f"{f.case}-a={f.alpha}")
def test_biorth_report(fam):
    rep = biorth_report(fam, 12)
    assert rep.passed
    if fam.case == "diag":
        assert rep.info["counterexamples_n_equals_m"] == []


def test_inner_product_grid_shape():
    grid = inner_product_grid(DiagChainFamily(2, 2, (1,)), 3)
    assert len(grid) == 9
    assert grid[0] == {"family": "diag", "n": 1, "m": 1, "value": "0"}


@pytest.mark.parametrize("case,n,s1,alpha", [
    ("jordan", 6, 2, 10), ("diag", 8, 2, 10), ("diag", 20, F(1, 1000), F(1, 1000)),
])
def test_zeros_all_real(case, n, s1, alpha):
    fam = (JordanChainFamily if case == "jordan" else DiagChainFamily)(2, alpha, (s1,))
    rep = zeros_report(fam, n)
    assert rep.degree == n
    assert rep.real_root_count == n and rep.all_real
    rows = zeros_csv_rows(fam, n, rep)
    assert len(rows) == n and rows[0]["all_real"] == "true"


def test_zeros_reject_constant():
    with pytest.raises(ValueError):
        zeros_report(JordanChainFamily(2, 0, (1,)), 0)


def test_zeros_single_root():
    rep = zeros_report(DiagChainFamily(2, 0, (1,)), 1)
    assert rep.isolating_intervals == ((F(1), F(1)),)


def test_apply_operator_simple():
    op = {(1, 1): lambda n: 1, (0, 0): lambda n: -n}  # z w' - n w kills z^n
    assert apply_operator(op, QPoly([0, 0, 0, 1]), 3).is_zero()
