"""Chains on which T acts diagonally and E- couples each chain to the one
above it.

Chain ``ell`` (``ell = 0`` is the Laguerre chain) starts at ``n = ell``, so
the states fill a trapezoid.  States carry no logarithms:
``|n, ell> = omega_{n,ell}(z) t**n``, and

    E+ |n,ell> = (n+1-ell) |n+1,ell>
    E- |n,ell> = -(alpha+n+ell) |n-1,ell> + |n-1,ell-1>

The lowest state of chain ``ell`` solves ``z w' - ell w = omega_{ell-1,ell-1}``;
its ``z**ell`` coefficient is the free constant ``sigma_ell``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import as_q, format_q, solve_linear
from .qpoly import ZERO, QPoly, laguerre
from .report import Report
from .series import DEFAULT_ORDER, TSeries, laguerre_kernel, series_mul
from .symstate import OpName, SymExpr, apply

__all__ = [
    "DiagChainFamily",
    "build_omega_diag",
    "closed_form_diag_omega1",
    "closed_form_diag_omega2",
    "state_diag",
    "ket_action_diag",
    "verify_ket_actions_diag",
    "casimir_report_diag",
    "ode_residual_diag",
    "lowering_residual_diag",
    "z_recurrence_residual_diag",
    "genfunc_diag",
    "route_equivalence_diag",
    "casimir_coefficients",
    "ket_matrix_commutators",
]


@dataclass
class DiagChainFamily:
    """``N`` chains in the trapezoid arrangement; ``sigmas[l-1]`` is the
    leading coefficient of the lowest state on chain ``l``.
    """

    N: int
    alpha: Fraction
    sigmas: tuple = ()
    table: dict = field(default_factory=dict, repr=False, compare=False)

    case = "diag"

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be at least 1")
        self.alpha = as_q(self.alpha)
        sig = [as_q(s) for s in self.sigmas]
        if len(sig) > self.N - 1:
            raise ValueError(f"N={self.N} takes at most {self.N - 1} sigmas")
        sig += [Fraction(0)] * (self.N - 1 - len(sig))
        self.sigmas = tuple(sig)

    def sigma(self, ell: int) -> Fraction:
        return self.sigmas[ell - 1]

    def omega(self, n: int, ell: int) -> QPoly:
        return build_omega_diag(self, n, ell)

    def omega_or_zero(self, n: int, ell: int) -> QPoly:
        """Zero outside the trapezoid, for sums over neighbouring chains."""
        if ell < 0 or n < ell:
            return ZERO
        return build_omega_diag(self, n, ell)

    def entries(self, nmax: int):
        for n in range(nmax + 1):
            for ell in range(min(self.N - 1, n) + 1):
                yield n, ell


def _seed(fam: DiagChainFamily, ell: int) -> QPoly:
    # z w' - ell w = rhs  =>  (k - ell) c_k = rhs_k, c_ell = sigma_ell
    rhs = build_omega_diag(fam, ell - 1, ell - 1)
    if rhs.coeff(ell) != 0 or rhs.degree > ell:
        raise ArithmeticError("seed equation has no polynomial solution")
    coeffs = [rhs.coeff(k) / (k - ell) for k in range(ell)] + [fam.sigma(ell)]
    return QPoly(coeffs)


def build_omega_diag(fam: DiagChainFamily, n: int, ell: int) -> QPoly:
    """``omega_{n,ell}`` for ``n >= ell`` (seed ODE, then the raising recursion)."""
    if ell < 0 or ell >= fam.N:
        raise ValueError(f"chain index {ell} outside 0..{fam.N - 1}")
    if n < ell:
        raise ValueError(f"omega_{{{n},{ell}}} lies outside the trapezoid (n < ell)")
    key = (n, ell)
    if key in fam.table:
        return fam.table[key]
    if ell == 0:
        out = laguerre(n, fam.alpha)
    else:
        start = max((m for (m, l) in fam.table if l == ell and m < n), default=None)
        if start is None:
            fam.table[(ell, ell)] = _seed(fam, ell)
            start = ell
        w = fam.table[(start, ell)]
        for m in range(start, n):
            num = w.deriv().shift_up() + (m + fam.alpha + 1) * w - w.shift_up()
            w = num / (m + 1 - ell)
            fam.table[(m + 1, ell)] = w
        out = w
    fam.table[key] = out
    return out


def closed_form_diag_omega1(n: int, alpha, sigma1) -> QPoly:
    """``sigma1((alpha+1) sum_{k<n} L_k - n L_n) - sum_{k<n} L_k``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    alpha, sigma1 = as_q(alpha), as_q(sigma1)
    partial = ZERO
    for k in range(n):
        partial = partial + laguerre(k, alpha)
    return sigma1 * ((alpha + 1) * partial - n * laguerre(n, alpha)) - partial


def closed_form_diag_omega2(n: int, alpha, sigma1, sigma2) -> QPoly:
    """Three-part Laguerre expansion of ``omega_{n,2}``::

        n(n-1) s2 L_n + (n-1)(s1 - 2 s2 (2+a)) L_{n-1}
          + sum_{k<=n-2} [ (n-k-1)/2 - s1((n-k-1)a + (n-1-2k))
                           + s2 (2+a)((n-k-1)a + (n-1-3k)) ] L_k
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    a, s1, s2 = as_q(alpha), as_q(sigma1), as_q(sigma2)
    out = n * (n - 1) * s2 * laguerre(n, a)
    out = out + (n - 1) * (s1 - 2 * s2 * (2 + a)) * laguerre(n - 1, a)
    for k in range(n - 1):
        c = (
            Fraction(n - k - 1, 2)
            - s1 * ((n - k - 1) * a + (n - 1 - 2 * k))
            + s2 * (2 + a) * ((n - k - 1) * a + (n - 1 - 3 * k))
        )
        out = out + c * laguerre(k, a)
    return out


def state_diag(fam: DiagChainFamily, n: int, ell: int) -> SymExpr:
    return SymExpr.from_poly(fam.omega(n, ell), tpow=n)


def ket_action_diag(op, n: int, ell: int, alpha) -> dict:
    """Expected image of ``|n, ell>`` for ``T``, ``E+`` and ``E-``.

    Targets outside the trapezoid are dropped.  The Casimir is not tabulated
    here; see :func:`casimir_report_diag`.
    """
    alpha = as_q(alpha)
    op = op if isinstance(op, OpName) else OpName(op)
    if op is OpName.T:
        out = {(n, ell): n + (alpha + 1) / 2}
    elif op is OpName.Eplus:
        out = {(n + 1, ell): Fraction(n + 1 - ell)}
    elif op is OpName.Eminus:
        out = {(n - 1, ell): -(alpha + n + ell), (n - 1, ell - 1): Fraction(1)}
    else:
        raise ValueError("use casimir_report_diag for the Casimir")
    return {k: v for k, v in out.items() if k[1] >= 0 and k[0] >= k[1] and v != 0}


def casimir_coefficients(ell: int, n: int, alpha) -> dict:
    """``K|n,ell> = c_ell |n,ell> + d_{n,ell} |n,ell-1>`` from composing the
    ket actions of ``T``, ``E+`` and ``E-``.
    """
    alpha = as_q(alpha)
    tau = n + (alpha + 1) / 2
    up = n + 1 - ell
    c = tau * tau + tau - up * (alpha + n + 1 + ell)
    d = Fraction(up) if ell >= 1 else Fraction(0)
    return {"scalar": c, "north": d}


def _combo(fam, coeffs: dict) -> SymExpr:
    out = SymExpr()
    for (m, l), c in coeffs.items():
        out = out + state_diag(fam, m, l) * c
    return out


_IDENTITIES = {
    OpName.T: "T|n,l> = (n+(alpha+1)/2)|n,l>",
    OpName.Eplus: "E+|n,l> = (n+1-l)|n+1,l>",
    OpName.Eminus: "E-|n,l> = -(alpha+n+l)|n-1,l> + |n-1,l-1>",
}


def verify_ket_actions_diag(fam: DiagChainFamily, nmax: int) -> Report:
    """Check the T, E+, E- ket actions against the differential realization
    and fold in the Casimir analysis of :func:`casimir_report_diag`.
    """
    rep = Report(f"diag ket actions N={fam.N} alpha={format_q(fam.alpha)}")
    for n, ell in fam.entries(nmax):
        s = state_diag(fam, n, ell)
        for op in (OpName.T, OpName.Eplus, OpName.Eminus):
            got = apply(op, s, fam.alpha)
            want = _combo(fam, ket_action_diag(op, n, ell, fam.alpha))
            diff = got - want
            rep.add(f"ket:{op.value}", _IDENTITIES[op], diff.is_zero(), diff, n=n, ell=ell)
    if fam.N >= 2:
        got = apply(OpName.Eminus, state_diag(fam, 1, 1), fam.alpha)
        rep.add("ket:Eminus-boundary", "E-|1,1> = |0,0>", got == state_diag(fam, 0, 0), got)
    rep.extend(casimir_report_diag(fam, nmax))
    return rep


def _decompose(target: QPoly, basis: list[QPoly]):
    deg = max([target.degree] + [b.degree for b in basis])
    rows = [[b.coeff(k) for b in basis] for k in range(deg + 1)]
    rhs = [target.coeff(k) for k in range(deg + 1)]
    return solve_linear(rows, rhs)


def casimir_report_diag(fam: DiagChainFamily, nmax: int) -> Report:
    """Compute ``K = T^2 + T + E- E+`` on every state through the realization,
    extract ``K|n,l> = c |n,l> + d |n,l-1>`` by exact linear solve, and compare
    the extracted numbers with three candidate closed forms:

    * ``general``: ``(2l+alpha+1)(2l+alpha-1)/4`` with ``d = n+1-l``
    * ``general_literal_index``: the same with ``l`` replaced by ``N-l``
    * ``matrix_display``: the two/three-chain matrices with diagonal
      ``(alpha+2N+1-2l)(alpha+2N-1-2l)/2``
    """
    rep = Report(f"diag casimir N={fam.N}")
    a = fam.alpha
    matches = {"general": True, "general_literal_index": True, "matrix_display": True}
    derived = {}
    for n, ell in fam.entries(nmax):
        got = apply(OpName.Casimir, state_diag(fam, n, ell), a)
        basis = [fam.omega(n, ell)] + ([fam.omega(n, ell - 1)] if ell >= 1 else [])
        if any(m.tpow != n for m in got.terms):
            rep.add("casimir:shape", "K|n,l> stays at t^n", False, got, n=n, ell=ell)
            continue
        sol = _decompose(got.poly_coefficient(n, 0), basis)
        ok = sol is not None
        rep.add("casimir:closure", "K|n,l> in span{|n,l>, |n,l-1>}", ok, got, n=n, ell=ell)
        if not ok:
            continue
        c, d = sol[0], (sol[1] if ell >= 1 else Fraction(0))
        expected = casimir_coefficients(ell, n, a)
        rep.add(
            "casimir:composition",
            "K|n,l> = c_l|n,l> + (n+1-l)|n,l-1>, c_l = (2l+alpha+1)(2l+alpha-1)/4",
            c == expected["scalar"] and d == expected["north"],
            f"c={format_q(c)} d={format_q(d)}",
            n=n,
            ell=ell,
        )
        derived.setdefault(ell, {"scalar": format_q(c), "north": {}})["north"][n] = format_q(d)
        gen = (2 * ell + a + 1) * (2 * ell + a - 1) / 4
        lit_b = fam.N - ell
        lit = (2 * lit_b + a + 1) * (2 * lit_b + a - 1) / 4
        mat = (a + 2 * fam.N + 1 - 2 * ell) * (a + 2 * fam.N - 1 - 2 * ell) / 2
        matches["general"] &= c == gen and (ell == 0 or d == n + 1 - ell)
        matches["general_literal_index"] &= c == lit
        matches["matrix_display"] &= c == mat
    verdict = [k for k, v in matches.items() if v]
    rep.info["casimir_derived"] = {str(k): v for k, v in derived.items()}
    rep.info["casimir_matches"] = matches
    rep.add(
        "casimir:display-comparison",
        "compositional Casimir matches: " + (", ".join(verdict) or "none of the displays"),
        True,
        informational=True,
        matches=verdict,
    )
    return rep


def lowering_residual_diag(fam: DiagChainFamily, n: int, ell: int) -> QPoly:
    """``z w' - n w + (alpha+n+ell) omega_{n-1,ell} - omega_{n-1,ell-1}``."""
    w = fam.omega(n, ell)
    return (
        w.deriv().shift_up()
        - n * w
        + (fam.alpha + n + ell) * fam.omega_or_zero(n - 1, ell)
        - fam.omega_or_zero(n - 1, ell - 1)
    )


def z_recurrence_residual_diag(fam: DiagChainFamily, n: int, ell: int) -> QPoly:
    """``(2n+alpha+1-z) w_n - (n+1-ell) w_{n+1} - (alpha+n+ell) w_{n-1} + omega_{n-1,ell-1}``."""
    w = fam.omega(n, ell)
    lhs = (2 * n + fam.alpha + 1) * w - w.shift_up()
    rhs = (
        (n + 1 - ell) * fam.omega(n + 1, ell)
        + (fam.alpha + n + ell) * fam.omega_or_zero(n - 1, ell)
        - fam.omega_or_zero(n - 1, ell - 1)
    )
    return lhs - rhs


def ode_residual_diag(fam: DiagChainFamily, n: int, ell: int) -> QPoly:
    """``z^2 w'' + z(1+alpha-z) w' + (n z - alpha ell - ell^2) w - (n-ell+1) omega_{n,ell-1}``.

    Obtained by applying the raising operator at ``n-1`` to the lowering
    relation at ``n``; the right-hand neighbour is the chain above.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if n < ell:
        raise ValueError("n must be >= ell")
    a = fam.alpha
    w = fam.omega(n, ell)
    d1, d2 = w.deriv(), w.deriv(2)
    lhs = (
        d2.shift_up().shift_up()
        + (1 + a) * d1.shift_up()
        - d1.shift_up().shift_up()
        + n * w.shift_up()
        - (a * ell + ell * ell) * w
    )
    return lhs - (n - ell + 1) * fam.omega(n, ell - 1)


def genfunc_diag(fam: DiagChainFamily, ell: int, order: int = DEFAULT_ORDER) -> TSeries:
    """Closed-form generating function of chain ``ell`` expanded to ``t**order``.

    * ``ell = 1``: ``(sigma1 z - 1 + t) t (1-t)^-(alpha+3) exp(-zt/(1-t))``
    * ``ell = 2``: ``(sigma2 z^2 - sigma1 z (1-t) + (1-t)^2/2) t^2 (1-t)^-(alpha+5) exp(-zt/(1-t))``
    """
    if ell not in (0, 1, 2):
        raise ValueError("closed-form generating functions exist for ell <= 2 only")
    if ell >= fam.N:
        raise ValueError(f"family has no chain {ell}")
    if ell == 0:
        return laguerre_kernel(fam.alpha, order)
    kernel = laguerre_kernel(fam.alpha, order, extra_power=2 * ell)
    z = QPoly([0, 1])
    if ell == 1:
        prefactor = TSeries([fam.sigma(1) * z - 1, QPoly([1])], order)
    else:
        one_minus_t = TSeries([1, -1], order)
        prefactor = (
            TSeries.one(order) * (fam.sigma(2) * z * z)
            - one_minus_t * (fam.sigma(1) * z)
            + series_mul(one_minus_t, one_minus_t) * Fraction(1, 2)
        )
    return series_mul(TSeries.t_power(ell, order), series_mul(prefactor, kernel))


def route_equivalence_diag(fam: DiagChainFamily, nmax: int) -> Report:
    """Recursion vs closed forms vs generating-function coefficients."""
    rep = Report(f"diag route equivalence N={fam.N}")
    top = min(fam.N - 1, 2)
    series = {ell: genfunc_diag(fam, ell, nmax) for ell in range(top + 1)}
    for n in range(nmax + 1):
        for ell in range(top + 1):
            built = fam.omega_or_zero(n, ell)
            rep.add("route:genfunc", "[t^n] generating function = omega_{n,l} (0 for n<l)",
                    series[ell][n] == built, series[ell][n] - built, n=n, ell=ell)
            if ell == 1 and n >= 1:
                cf = closed_form_diag_omega1(n, fam.alpha, fam.sigma(1))
                rep.add("route:closed1",
                        "omega_{n,1} = s1((a+1) sum_{k<n} L_k - n L_n) - sum_{k<n} L_k",
                        cf == built, cf - built, n=n)
            if ell == 2 and n >= 2:
                cf = closed_form_diag_omega2(n, fam.alpha, fam.sigma(1), fam.sigma(2))
                rep.add("route:closed2", "omega_{n,2} three-part Laguerre expansion",
                        cf == built, cf - built, n=n)
    return rep


def ket_matrix_commutators(case: str, N: int, nmax: int, alpha) -> Report:
    """sl(2) relations for the abstract ket-action matrices (no realization).

    Checks ``[E-, E+] = -2T`` and ``[T, E+-] = +-E+-`` on every basis
    vector with ``n <= nmax``.
    """
    from .jordan import ket_action_jordan

    alpha = as_q(alpha)
    if case == "diag":
        act = ket_action_diag

        def basis():
            for n in range(nmax + 1):
                for ell in range(min(N - 1, n) + 1):
                    yield n, ell
    else:
        act = ket_action_jordan

        def basis():
            for n in range(nmax + 1):
                for ell in range(N):
                    yield n, ell

    def run(op, vec: dict) -> dict:
        out: dict = {}
        for (n, ell), c in vec.items():
            for key, v in act(op, n, ell, alpha).items():
                if key[1] < N:
                    out[key] = out.get(key, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def sub(x, y, s=1):
        out = dict(x)
        for k, v in y.items():
            out[k] = out.get(k, 0) - s * v
        return {k: v for k, v in out.items() if v}

    rep = Report(f"{case} ket-matrix sl(2) relations N={N}")
    T, Ep, Em = OpName.T, OpName.Eplus, OpName.Eminus
    for b in basis():
        v = {b: Fraction(1)}
        r1 = sub(sub(run(Em, run(Ep, v)), run(Ep, run(Em, v))), run(T, v), -2)
        r2 = sub(sub(run(T, run(Ep, v)), run(Ep, run(T, v))), run(Ep, v))
        r3 = sub(sub(run(T, run(Em, v)), run(Em, run(T, v))), run(Em, v), -1)
        rep.add("matrix:[E-,E+]", "[E-,E+] = -2T on ket matrices", not r1, r1, n=b[0], ell=b[1])
        rep.add("matrix:[T,E+]", "[T,E+] = E+ on ket matrices", not r2, r2, n=b[0], ell=b[1])
        rep.add("matrix:[T,E-]", "[T,E-] = -E- on ket matrices", not r3, r3, n=b[0], ell=b[1])
    return rep
