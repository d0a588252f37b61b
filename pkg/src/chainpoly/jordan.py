"""Chains on which T acts by Jordan blocks.

Chains are indexed downward by ``ell``: ``ell = 0`` is the Laguerre chain,
``ell = 1`` the first chain below it, and so on.  The state on chain ``ell``
at position ``n`` is

    |n, ell> = t**n * sum_{j<=ell} omega_{n,j}(z) L**(ell-j) / (ell-j)!

with ``L = ln(z t)`` and ``omega_{n,0} = L_n^(alpha)``.  The polynomials obey

    (n+1) omega_{n+1,l} = z omega_{n,l}' + (n+alpha+1-z) omega_{n,l} + 2 omega_{n,l-1}

seeded by the free constants ``omega_{0,l} = sigma_l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import as_q, format_q, harmonic
from .qpoly import ZERO, QPoly, laguerre, laguerre_ode_residual
from .report import Report
from .series import DEFAULT_ORDER, TSeries, laguerre_kernel, series_log1m, series_mul
from .symstate import OpName, SymExpr, apply

__all__ = [
    "JordanChainFamily",
    "build_omega_jordan",
    "closed_form_omega1",
    "closed_form_omega2",
    "state_jordan",
    "ket_action_jordan",
    "verify_ket_actions_jordan",
    "ode_residual_jordan",
    "lowering_residual_jordan",
    "genfunc_jordan",
    "exp_Eplus_apply",
    "casimir_nilpotent_check",
    "route_equivalence_jordan",
]


@dataclass
class JordanChainFamily:
    """``N`` Jordan-coupled chains over ``L_n^(alpha)``.

    ``sigmas[l-1]`` is the seed ``omega_{0,l}`` of chain ``l`` (``l >= 1``);
    missing seeds default to zero.
    """

    N: int
    alpha: Fraction
    sigmas: tuple = ()
    table: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be at least 1")
        self.alpha = as_q(self.alpha)
        sig = [as_q(s) for s in self.sigmas]
        if len(sig) > self.N - 1:
            raise ValueError(f"N={self.N} takes at most {self.N - 1} sigmas")
        sig += [Fraction(0)] * (self.N - 1 - len(sig))
        self.sigmas = tuple(sig)

    case = "jordan"

    def sigma(self, ell: int) -> Fraction:
        return self.sigmas[ell - 1]

    def omega(self, n: int, ell: int) -> QPoly:
        return build_omega_jordan(self, n, ell)

    def omega_or_zero(self, n: int, ell: int) -> QPoly:
        if n < 0 or ell < 0:
            return ZERO
        return build_omega_jordan(self, n, ell)

    def entries(self, nmax: int):
        for n in range(nmax + 1):
            for ell in range(self.N):
                yield n, ell


def build_omega_jordan(fam: JordanChainFamily, n: int, ell: int) -> QPoly:
    """``omega_{n,ell}`` from the raising recursion (memoized on ``fam``)."""
    if ell >= fam.N or ell < 0:
        raise ValueError(f"chain index {ell} outside 0..{fam.N - 1}")
    if n < 0:
        raise ValueError("n must be non-negative")
    key = (n, ell)
    if key in fam.table:
        return fam.table[key]
    if ell == 0:
        out = laguerre(n, fam.alpha)
    else:
        # build upward from the seed iteratively to keep recursion shallow
        start = max((m for (m, l) in fam.table if l == ell and m < n), default=None)
        if start is None:
            fam.table[(0, ell)] = QPoly([fam.sigma(ell)])
            start = 0
        w = fam.table[(start, ell)]
        for m in range(start, n):
            above = build_omega_jordan(fam, m, ell - 1)
            num = w.deriv().shift_up() + (m + fam.alpha + 1) * w - w.shift_up() + 2 * above
            w = num / (m + 1)
            fam.table[(m + 1, ell)] = w
        out = w
    fam.table[key] = out
    return out


def closed_form_omega1(n: int, alpha, sigma1) -> QPoly:
    """``sigma1 L_n + sum_{m=1}^n (2/m) L_{n-m}``."""
    alpha, sigma1 = as_q(alpha), as_q(sigma1)
    out = sigma1 * laguerre(n, alpha)
    for m in range(1, n + 1):
        out = out + Fraction(2, m) * laguerre(n - m, alpha)
    return out


def _omega2_nested_sum(n, alpha, sigma1, sigma2) -> QPoly:
    out = sigma2 * laguerre(n, alpha)
    for m in range(1, n + 1):
        inner = sum((Fraction(4, k) for k in range(1, m)), Fraction(0))
        out = out + ((2 * sigma1 + inner) / m) * laguerre(n - m, alpha)
    return out


def _omega2_digamma_form(n, alpha, sigma1, sigma2) -> QPoly:
    # gamma + digamma(m) evaluated as H_{m-1}
    out = sigma2 * laguerre(n, alpha)
    for k in range(n):
        m = n - k
        c = 2 * sigma1 / m + 4 * harmonic(m - 1) / m
        out = out + c * laguerre(k, alpha)
    return out


def closed_form_omega2(n: int, alpha, sigma1, sigma2) -> QPoly:
    """``sigma2 L_n + sum_{m=1}^n (2 sigma1 + 4 H_{m-1}) / m * L_{n-m}``.

    The nested-sum and digamma presentations are evaluated as well and must
    agree; a disagreement raises ``ArithmeticError``.
    """
    alpha, sigma1, sigma2 = as_q(alpha), as_q(sigma1), as_q(sigma2)
    out = sigma2 * laguerre(n, alpha)
    for m in range(1, n + 1):
        out = out + ((2 * sigma1 + 4 * harmonic(m - 1)) / m) * laguerre(n - m, alpha)
    if out != _omega2_nested_sum(n, alpha, sigma1, sigma2):
        raise ArithmeticError("nested-sum form disagrees")
    if out != _omega2_digamma_form(n, alpha, sigma1, sigma2):
        raise ArithmeticError("digamma form disagrees")
    return out


def state_jordan(fam: JordanChainFamily, n: int, ell: int) -> SymExpr:
    """``|n, ell>`` as a :class:`SymExpr`."""
    if ell >= fam.N or ell < 0:
        raise ValueError(f"chain index {ell} outside 0..{fam.N - 1}")
    out = SymExpr()
    for j in range(ell + 1):
        w = fam.omega(n, j)
        k = ell - j
        out = out + SymExpr.from_poly(w, tpow=n, logpow=k) * Fraction(1, math.factorial(k))
    return out


def ket_action_jordan(op, n: int, ell: int, alpha) -> dict:
    """Expected image of ``|n, ell>`` as ``{(n', ell'): coeff}``.

    Out-of-range targets (``n' < 0`` or ``ell' < 0``) are dropped.
    """
    alpha = as_q(alpha)
    op = op if isinstance(op, OpName) else OpName(op)
    tau = n + (alpha + 1) / 2
    if op is OpName.T:
        out = {(n, ell): tau, (n, ell - 1): Fraction(1)}
    elif op is OpName.Eplus:
        out = {(n + 1, ell): Fraction(n + 1)}
    elif op is OpName.Eminus:
        out = {(n - 1, ell): -(n + alpha), (n - 1, ell - 1): Fraction(-2)}
    else:
        out = {
            (n, ell): (alpha * alpha - 1) / 4,
            (n, ell - 1): alpha,
            (n, ell - 2): Fraction(1),
        }
    return {k: v for k, v in out.items() if k[0] >= 0 and k[1] >= 0 and v != 0}


def _combo(fam, coeffs: dict) -> SymExpr:
    out = SymExpr()
    for (m, l), c in coeffs.items():
        out = out + state_jordan(fam, m, l) * c
    return out


_IDENTITIES = {
    OpName.T: "T|n,l> = (n+(alpha+1)/2)|n,l> + |n,l-1>",
    OpName.Eplus: "E+|n,l> = (n+1)|n+1,l>",
    OpName.Eminus: "E-|n,l> = -(n+alpha)|n-1,l> - 2|n-1,l-1>",
    OpName.Casimir: "K|n,l> = (alpha^2-1)/4|n,l> + alpha|n,l-1> + |n,l-2>",
}


def verify_ket_actions_jordan(fam: JordanChainFamily, nmax: int) -> Report:
    """Apply the differential realization to every state with ``n <= nmax``
    and compare with the expected ket actions.
    """
    rep = Report(f"jordan ket actions N={fam.N} alpha={format_q(fam.alpha)}")
    for n, ell in fam.entries(nmax):
        s = state_jordan(fam, n, ell)
        for op in OpName:
            got = apply(op, s, fam.alpha)
            want = _combo(fam, ket_action_jordan(op, n, ell, fam.alpha))
            diff = got - want
            rep.add(f"ket:{op.value}", _IDENTITIES[op], diff.is_zero(), diff, n=n, ell=ell)
            if op is OpName.Eminus and n == 0:
                rep.add(
                    "ket:Eminus-lowest",
                    "E-|0,l> = 0 with no negative t powers",
                    got.is_zero() and got.is_valid_state(),
                    got,
                    ell=ell,
                )
    rep.info["casimir_matrix"] = [
        [format_q(ket_action_jordan(OpName.Casimir, 0, r, fam.alpha).get((0, c), Fraction(0)))
         for c in range(fam.N)]
        for r in range(fam.N)
    ]
    return rep


def ode_residual_jordan(fam: JordanChainFamily, n: int, ell: int) -> QPoly:
    """``z w'' + (1+alpha-z) w' + n w + 2 (omega_{n,ell-1})'`` for ``w = omega_{n,ell}``."""
    if ell < 1:
        raise ValueError("ell must be >= 1 (ell = 0 is the homogeneous Laguerre ODE)")
    w = fam.omega(n, ell)
    return laguerre_ode_residual(w, n, fam.alpha) + 2 * fam.omega(n, ell - 1).deriv()


def lowering_residual_jordan(fam: JordanChainFamily, n: int, ell: int) -> QPoly:
    """``z w' - n w + (alpha+n) omega_{n-1,ell} + 2 omega_{n-1,ell-1}``."""
    w = fam.omega(n, ell)
    return (
        w.deriv().shift_up()
        - n * w
        + (fam.alpha + n) * fam.omega_or_zero(n - 1, ell)
        + 2 * fam.omega_or_zero(n - 1, ell - 1)
    )


def genfunc_jordan(fam: JordanChainFamily, ell: int, order: int = DEFAULT_ORDER) -> TSeries:
    """Closed-form generating function of chain ``ell`` expanded to ``t**order``.

    * ``ell = 0``: ``(1-t)^-(alpha+1) exp(-zt/(1-t))``
    * ``ell = 1``: ``(sigma1 - 2 log(1-t))`` times the above
    * ``ell = 2``: ``(sigma2 - 2 sigma1 log(1-t) + 2 log(1-t)^2)`` times the above
    """
    if ell not in (0, 1, 2):
        raise ValueError("closed-form generating functions exist for ell <= 2 only")
    if ell >= fam.N:
        raise ValueError(f"family has no chain {ell}")
    if order < 1:
        raise ValueError("order must be >= 1")
    kernel = laguerre_kernel(fam.alpha, order)
    if ell == 0:
        return kernel
    log1m = series_log1m(order)
    if ell == 1:
        prefactor = TSeries.one(order) * fam.sigma(1) - log1m * 2
    else:
        prefactor = (
            TSeries.one(order) * fam.sigma(2)
            - log1m * (2 * fam.sigma(1))
            + series_mul(log1m, log1m) * 2
        )
    return series_mul(prefactor, kernel)


def exp_Eplus_apply(s: SymExpr, u, order: int, alpha) -> SymExpr:
    """``sum_{k<=order} u**k (E+)**k s / k!`` by iterated application."""
    if order < 0:
        raise ValueError("order must be non-negative")
    u = as_q(u)
    out = SymExpr()
    term = s
    for k in range(order + 1):
        out = out + term * (u**k / math.factorial(k))
        if k < order:
            term = apply(OpName.Eplus, term, alpha)
    return out


def casimir_nilpotent_check(fam: JordanChainFamily, nmax: int) -> Report:
    """``(K - (alpha^2-1)/4)**N`` annihilates every state with ``n <= nmax``."""
    rep = Report(f"jordan casimir nilpotency N={fam.N}")
    shift = (fam.alpha**2 - 1) / 4
    for n, ell in fam.entries(nmax):
        s = state_jordan(fam, n, ell)
        for _ in range(fam.N):
            s = apply(OpName.Casimir, s, fam.alpha) - s * shift
        rep.add("casimir:nilpotent", "(K - (alpha^2-1)/4)^N |n,l> = 0", s.is_zero(), s, n=n, ell=ell)
    return rep


def route_equivalence_jordan(fam: JordanChainFamily, nmax: int) -> Report:
    """Recursion vs closed forms vs generating-function coefficients."""
    rep = Report(f"jordan route equivalence N={fam.N}")
    top = min(fam.N - 1, 2)
    series = {ell: genfunc_jordan(fam, ell, nmax) for ell in range(top + 1)}
    for n in range(nmax + 1):
        for ell in range(top + 1):
            built = fam.omega(n, ell)
            rep.add(
                "route:genfunc",
                "[t^n] generating function = omega_{n,l}",
                series[ell][n] == built,
                series[ell][n] - built,
                n=n,
                ell=ell,
            )
            if ell == 1:
                cf = closed_form_omega1(n, fam.alpha, fam.sigma(1))
                rep.add("route:closed1", "omega_{n,1} = sigma1 L_n + sum (2/m) L_{n-m}",
                        cf == built, cf - built, n=n)
            if ell == 2:
                cf = closed_form_omega2(n, fam.alpha, fam.sigma(1), fam.sigma(2))
                rep.add("route:closed2",
                        "omega_{n,2} = sigma2 L_n + sum (2 sigma1 + 4 H_{m-1})/m L_{n-m}",
                        cf == built, cf - built, n=n)
    return rep
