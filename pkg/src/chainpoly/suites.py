"""Named verification suites, each a list of :class:`Report` objects for one
chain family.  The CLI and the acceptance tests both go through here.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .borel import ModuleSpec, commutator_check, invariants_check, power_commutator_check, realization_bridge
from .diag import (
    DiagChainFamily,
    casimir_report_diag,
    ket_matrix_commutators,
    lowering_residual_diag,
    ode_residual_diag,
    route_equivalence_diag,
    verify_ket_actions_diag,
)
from .exact import format_q
from .jordan import (
    JordanChainFamily,
    casimir_nilpotent_check,
    lowering_residual_jordan,
    ode_residual_jordan,
    route_equivalence_jordan,
    verify_ket_actions_jordan,
)
from .properties import biorth_report, higher_ode_report, recurrence_report
from .qpoly import laguerre, laguerre_ode_residual, three_term_check
from .report import Report
from .series import laguerre_kernel
from .symstate import OpName, SymExpr, apply, commutator_residual, literal_commutator_residual

__all__ = ["SUITES", "make_family", "random_probe", "run_suite", "sl2_report", "classical_report"]

SUITES = ("sl2", "ket", "ode", "recur", "genfunc", "casimir", "biorth", "module")


def make_family(family: str, N: int, alpha, sigmas=()):
    if family == "jordan":
        return JordanChainFamily(N, alpha, tuple(sigmas))
    if family == "diag":
        return DiagChainFamily(N, alpha, tuple(sigmas))
    raise ValueError(f"unknown family {family!r}")


def random_probe(rng: random.Random, terms: int = 4) -> SymExpr:
    """Random ``sum c z^i t^n L^m`` with small exponents and rational ``c``."""
    out = []
    for _ in range(terms):
        mono = (rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 3))
        out.append((mono, Fraction(rng.randint(-9, 9), rng.randint(1, 7))))
    return SymExpr(out)


_PAIRS = ((OpName.Eminus, OpName.Eplus), (OpName.T, OpName.Eplus), (OpName.T, OpName.Eminus))


def sl2_report(alphas, probes: int = 40, seed: int = 0) -> Report:
    """Realization relations on random probes, plus the sign of ``[E-, E+]``.

    The relation set that holds is ``[E+, E-] = 2T``.  For each probe the
    opposite sign is also evaluated; its residual must be exactly
    ``-4 T(probe)``, which pins the sign down.
    """
    rng = random.Random(seed)
    rep = Report("sl(2) realization")
    sign_ok = True
    for alpha in alphas:
        for k in range(probes):
            p = random_probe(rng)
            for a, b in _PAIRS:
                r = commutator_residual(a, b, p, alpha)
                rep.add(f"sl2:[{a.value},{b.value}]", _REL[(a, b)], r.is_zero(), r,
                        alpha=alpha, probe=k)
            lit = literal_commutator_residual(OpName.Eminus, OpName.Eplus, p, alpha)
            sign_ok &= lit == apply(OpName.T, p, alpha) * -4
    rep.add("sl2:sign", "([E-,E+] - 2T)(p) = -4 T(p), so [E-,E+] = -2T", sign_ok)
    rep.info["relations"] = list(_REL.values())
    return rep


_REL = {
    (OpName.Eminus, OpName.Eplus): "[E-,E+] = -2T",
    (OpName.T, OpName.Eplus): "[T,E+] = E+",
    (OpName.T, OpName.Eminus): "[T,E-] = -E-",
}


def classical_report(alpha, nmax: int = 16) -> Report:
    """Laguerre ODE, three-term recurrence and generating-function coefficients."""
    rep = Report(f"Laguerre alpha={format_q(alpha)}")
    gf = laguerre_kernel(alpha, nmax)
    for n in range(nmax + 1):
        L = laguerre(n, alpha)
        r = laguerre_ode_residual(L, n, alpha)
        rep.add("laguerre:ode", "z y'' + (1+a-z) y' + n y = 0", r.is_zero(), r, n=n)
        if n >= 1:
            rep.add("laguerre:three-term",
                    "(n+1)L_{n+1} = (2n+1+a-z)L_n - (n+a)L_{n-1}", three_term_check(n, alpha), n=n)
        rep.add("laguerre:genfunc", "[t^n](1-t)^-(a+1) exp(-zt/(1-t)) = L_n",
                gf[n] == L, gf[n] - L, n=n)
    return rep


def _ode_report(fam, nmax: int) -> Report:
    rep = Report(f"{fam.case} chain ODEs")
    for n, ell in fam.entries(nmax):
        if fam.case == "jordan":
            lo = lowering_residual_jordan(fam, n, ell)
            rep.add("ode:lowering", "z w' - n w + (a+n) w_{n-1,l} + 2 w_{n-1,l-1} = 0",
                    lo.is_zero(), lo, n=n, ell=ell)
            if 1 <= ell <= 2:
                r = ode_residual_jordan(fam, n, ell)
                rep.add("ode:nonhomogeneous", "z w'' + (1+a-z) w' + n w = -2 w_{n,l-1}'",
                        r.is_zero(), r, n=n, ell=ell)
        else:
            lo = lowering_residual_diag(fam, n, ell)
            rep.add("ode:lowering", "z w' - n w + (a+n+l) w_{n-1,l} - w_{n-1,l-1} = 0",
                    lo.is_zero(), lo, n=n, ell=ell)
            if ell >= 1:
                r = ode_residual_diag(fam, n, ell)
                rep.add("ode:second-order",
                        "z^2 w'' + z(1+a-z) w' + (nz - a l - l^2) w = (n-l+1) w_{n,l-1}",
                        r.is_zero(), r, n=n, ell=ell)
    return rep


def run_suite(name: str, fam, nmax: int = 12, seed: int = 0, depth_cap: int = 8,
              order: int | None = None) -> list[Report]:
    """Reports for one named suite on ``fam``.

    ``order`` is the truncation order of generating-function comparisons
    (defaults to ``nmax``).
    """
    order = nmax if order is None else order
    if name == "sl2":
        return [sl2_report([fam.alpha], seed=seed),
                ket_matrix_commutators(fam.case, fam.N, nmax, fam.alpha)]
    if name == "ket":
        if fam.case == "jordan":
            return [verify_ket_actions_jordan(fam, nmax)]
        return [verify_ket_actions_diag(fam, nmax)]
    if name == "ode":
        out = [_ode_report(fam, nmax)]
        if fam.N >= 2:
            out.append(higher_ode_report(fam, max(nmax, 12), fit_max=min(10, max(nmax, 12) - 2)))
        return out
    if name == "recur":
        out = [classical_report(fam.alpha, nmax)]
        if fam.N >= 2:
            out.append(recurrence_report(fam, nmax))
        return out
    if name == "genfunc":
        if fam.case == "jordan":
            return [classical_report(fam.alpha, nmax), route_equivalence_jordan(fam, order)]
        return [classical_report(fam.alpha, nmax), route_equivalence_diag(fam, order)]
    if name == "casimir":
        if fam.case == "jordan":
            return [casimir_nilpotent_check(fam, nmax)]
        return [casimir_report_diag(fam, nmax)]
    if name == "biorth":
        if fam.N < 2:
            return []
        return [biorth_report(fam, min(nmax, 12))]
    if name == "module":
        spec = ModuleSpec("nondiag" if fam.case == "jordan" else "diag", fam.N, depth_cap)
        return [
            commutator_check(spec),
            power_commutator_check(spec, min(4, depth_cap - 1)),
            invariants_check(spec),
            realization_bridge(spec, fam),
        ]
    raise ValueError(f"unknown suite {name!r}")
