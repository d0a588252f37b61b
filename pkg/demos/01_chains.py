"""Walk through the two chain families: build a few polynomials, look at
the states, and watch the differential operators act on them.

Run with ``python3 demos/01_chains.py``.
"""

from fractions import Fraction as F

from chainpoly import DiagChainFamily, JordanChainFamily, OpName
from chainpoly.diag import state_diag
from chainpoly.jordan import state_jordan
from chainpoly.symstate import apply

# %% Jordan-coupled chains.  Chain 0 is plain Laguerre, chain 1 picks up
# a log(zt) partner and a free seed sigma_1.
jfam = JordanChainFamily(3, F(1, 2), (F(1), F(1, 3)))
for n in range(4):
    print(f"omega_{{{n},1}} =", jfam.omega(n, 1).pretty())

# The states mix polynomials with powers of L = ln(zt).
s = state_jordan(jfam, 2, 2)
print("|2,2> =", s)

# T is not diagonal here: it pushes each state one chain up.
print("T|2,2> - (2 + 3/4)|2,2> =", apply(OpName.T, s, jfam.alpha) - s * F(11, 4))
print("which is |2,1> =", state_jordan(jfam, 2, 1))

# %% Diagonal chains live on a trapezoid: chain l starts at n = l.
dfam = DiagChainFamily(3, 0, (F(1), F(2)))
for n, ell in dfam.entries(3):
    print(f"omega_{{{n},{ell}}} =", dfam.omega(n, ell).pretty())

# E- steps down and leaks into the chain above.
out = apply(OpName.Eminus, state_diag(dfam, 2, 1), dfam.alpha)
want = state_diag(dfam, 1, 1) * -(dfam.alpha + 3) + state_diag(dfam, 1, 0)
print("E-|2,1> == -(a+3)|1,1> + |1,0> :", out == want)
