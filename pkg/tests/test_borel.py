from fractions import Fraction as F

import pytest

from chainpoly.borel import (
    LAM,
    DepthOverflow,
    LatticeVector,
    ModuleSpec,
    act,
    act_word,
    commutator_check,
    invariants_check,
    power_commutator_check,
    realization_bridge,
)
from chainpoly.diag import DiagChainFamily
from chainpoly.jordan import JordanChainFamily
from chainpoly.qpoly import ONE


def test_nondiag_examples():
    spec = ModuleSpec("nondiag", 3, 6)
    for i in (1, 2, 3):
        assert act("e", LatticeVector.basis(i, 0), spec).is_zero()
    v = LatticeVector.basis(3, 0)
    assert act_word("ef", v, spec) == v.scale(LAM)
    assert act("h", LatticeVector.basis(1, 2), spec) == LatticeVector(
        {(1, 2): LAM - 4, (2, 2): ONE}
    )


def test_diag_examples():
    spec = ModuleSpec("diag", 4, 6)
    for k in range(1, 5):
        v = LatticeVector.basis(k, 0)
        assert act("h", v, spec) == v.scale(LAM + 2 * (k - 1))
    assert act("e", LatticeVector.basis(4, 0), spec).is_zero()
    assert act("e", LatticeVector.basis(2, 0), spec) == LatticeVector.basis(3, 0)


def test_depth_overflow_and_bad_spec():
    spec = ModuleSpec("diag", 2, 2)
    with pytest.raises(DepthOverflow):
        act("f", LatticeVector.basis(1, 2), spec)
    with pytest.raises(ValueError):
        ModuleSpec("other", 2, 2)
    with pytest.raises(ValueError):
        ModuleSpec("diag", 0, 2)
    assert ModuleSpec("jordan", 1, 1).case == "nondiag"


@pytest.mark.parametrize("case", ["nondiag", "diag"])
@pytest.mark.parametrize("n", [1, 3, 5])
def test_relations(case, n):
    spec = ModuleSpec(case, n, 8)
    assert commutator_check(spec).passed
    assert power_commutator_check(spec, 4).passed
    assert invariants_check(spec).passed


def test_h_left_power_reading_fails_beyond_first_power():
    rep = power_commutator_check(ModuleSpec("nondiag", 2, 6), 3)
    bad = {c.params["power"] for c in rep.checks
           if c.name == "power:[f,e^a]-h-left" and not c.passed}
    assert bad == {2, 3}
    assert rep.passed  # informational only


def test_power_check_needs_room():
    with pytest.raises(DepthOverflow):
        power_commutator_check(ModuleSpec("diag", 2, 3), 3)


@pytest.mark.parametrize("fam,lam", [
    (DiagChainFamily(1, F(1, 2)), F(-3, 2)),
    (DiagChainFamily(2, F(1, 2), (1,)), F(-7, 2)),
    (JordanChainFamily(1, 3), F(-4)),
    (JordanChainFamily(2, F(2, 5), (1,)), F(-7, 5)),
], ids=["diag1", "diag2", "jordan1", "jordan2"])
def test_bridge(fam, lam):
    case = "diag" if fam.case == "diag" else "nondiag"
    rep = realization_bridge(ModuleSpec(case, fam.N, 8), fam)
    assert rep.passed
    assert rep.info["lambda"] == (str(lam.numerator) if lam.denominator == 1 else f"{lam.numerator}/{lam.denominator}")
    assert rep.info["orientation"] == "i=N-l"
    if fam.N == 2:
        assert rep.info["orientations"]["i=l+1"]["obstruction"]


def test_bridge_rejects_mismatched_spec():
    rep = realization_bridge(ModuleSpec("diag", 3, 4), DiagChainFamily(2, 0, (1,)))
    assert not rep.passed
