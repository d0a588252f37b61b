"""The abstract modules induced from a Borel representation, with the
lowest weight kept symbolic, and their match with the chain families.
"""

from fractions import Fraction as F

from chainpoly import DiagChainFamily, JordanChainFamily
from chainpoly.borel import (
    LatticeVector,
    ModuleSpec,
    act,
    commutator_check,
    power_commutator_check,
    realization_bridge,
)

spec = ModuleSpec("nondiag", 3, 6)
v = LatticeVector.basis(1, 2)
print("h v[1,2] =", act("h", v, spec))
print("e v[1,2] =", act("e", v, spec))

# %% all relations hold identically in lam
for case in ("nondiag", "diag"):
    s = ModuleSpec(case, 4, 8)
    print(case, "relations:", commutator_check(s).passed, "powers:", power_commutator_check(s, 4).passed)

# With h applied last, [f, e^a] = -a (h+a-1) e^(a-1) only survives a = 1.
rep = power_commutator_check(ModuleSpec("diag", 2, 6), 3)
bad = sorted({c.params["power"] for c in rep.checks if c.informational and not c.passed})
print("h-left reading fails for powers", bad)

# %% Bridge: h = -2T, e = -E-, f = -E+ with a per-state rescaling.
for fam in (JordanChainFamily(2, F(1, 2), (F(1),)), DiagChainFamily(2, F(1, 2), (F(1),))):
    case = "nondiag" if fam.case == "jordan" else "diag"
    rep = realization_bridge(ModuleSpec(case, 2, 6), fam)
    print(fam.case, "lam =", rep.info["lambda"], "orientation", rep.info["orientation"])
    print("   rescaling:", dict(list(rep.info["rescaling"].items())[:6]))
    print("   other orientation:", rep.info["orientations"]["i=l+1"]["obstruction"])
