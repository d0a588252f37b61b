"""Induced sl(2) modules built from a finite Borel representation.

Basis vectors are ``v[i, a]``: ``i = 1..n`` labels the Borel basis vector
(the chain), ``a >= 0`` the number of ``f`` applications (the depth).
Coefficients are polynomials in the lowest weight ``lam``, held as
:class:`~chainpoly.qpoly.QPoly` so every identity is checked for all ``lam``
at once.

Two action tables are implemented.

``nondiag`` (h has Jordan blocks)::

    h v[i,a] = (lam - 2a) v[i,a] + v[i+1,a]
    f v[i,a] = v[i,a+1]
    e v[i,a] = a (lam - a + 1) v[i,a-1] + a v[i+1,a-1]

``diag`` (h diagonal)::

    h v[i,a] = (lam + 2(i-1) - 2a) v[i,a]
    f v[i,a] = v[i,a+1]
    e v[i,a] = a (lam + 2i - a - 1) v[i,a-1] + v[i+1,a]

with ``v[n+1, a] = 0`` in both.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact import as_q, format_q, rank
from .qpoly import ONE, ZERO, QPoly
from .report import Report
from .symstate import OpName

__all__ = [
    "LAM",
    "DepthOverflow",
    "LatticeVector",
    "ModuleSpec",
    "act",
    "act_word",
    "basis",
    "commutator_check",
    "power_commutator_check",
    "invariants_check",
    "realization_bridge",
]

LAM = QPoly([0, 1])


class DepthOverflow(ValueError):
    """``f`` pushed a vector past the configured depth cap."""


class LatticeVector:
    """Finite combination ``sum c[i,a](lam) v[i,a]``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | Iterable = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = {}
        for key, c in items:
            c = c if isinstance(c, QPoly) else QPoly([c])
            acc[key] = acc.get(key, ZERO) + c
        self.terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def basis(cls, i: int, a: int) -> LatticeVector:
        return cls({(i, a): ONE})

    def __add__(self, other: LatticeVector) -> LatticeVector:
        return LatticeVector(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> LatticeVector:
        return LatticeVector({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        return self + (-other)

    def scale(self, c) -> LatticeVector:
        c = c if isinstance(c, QPoly) else QPoly([c])
        return LatticeVector({k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeVector) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def max_depth(self) -> int:
        return max((a for _, a in self.terms), default=-1)

    def __repr__(self) -> str:
        if not self.terms:
            return "LatticeVector(0)"
        body = " + ".join(
            f"({c.pretty('lam')}) v[{i},{a}]" for (i, a), c in sorted(self.terms.items())
        )
        return f"LatticeVector({body})"


_CASES = {"nondiag": "nondiag", "jordan": "nondiag", "diag": "diag"}


@dataclass(frozen=True)
class ModuleSpec:
    """``case`` is ``"nondiag"`` or ``"diag"`` (``"jordan"`` is accepted as an
    alias); ``n`` is the Borel dimension and ``A`` the depth cap."""

    case: str
    n: int
    A: int

    def __post_init__(self):
        if self.case not in _CASES:
            raise ValueError(f"unknown module case {self.case!r}")
        object.__setattr__(self, "case", _CASES[self.case])
        if self.n < 1 or self.A < 1:
            raise ValueError("need n >= 1 and A >= 1")


def basis(spec: ModuleSpec, max_depth: int | None = None):
    top = spec.A if max_depth is None else max_depth
    for a in range(top + 1):
        for i in range(1, spec.n + 1):
            yield i, a


def _act_basis(gen: str, i: int, a: int, spec: ModuleSpec) -> dict:
    n = spec.n
    if gen == "f":
        if a + 1 > spec.A:
            raise DepthOverflow(f"f v[{i},{a}] exceeds depth cap {spec.A}")
        return {(i, a + 1): ONE}
    if spec.case == "nondiag":
        if gen == "h":
            out = {(i, a): LAM - 2 * a}
            if i < n:
                out[(i + 1, a)] = ONE
            return out
        if gen == "e":
            if a == 0:
                return {}
            out = {(i, a - 1): a * (LAM - (a - 1))}
            if i < n:
                out[(i + 1, a - 1)] = QPoly([a])
            return out
    else:
        if gen == "h":
            return {(i, a): LAM + (2 * (i - 1) - 2 * a)}
        if gen == "e":
            out = {}
            if a > 0:
                out[(i, a - 1)] = a * (LAM + (2 * i - a - 1))
            if i < n:
                out[(i + 1, a)] = ONE
            return out
    raise ValueError(f"unknown generator {gen!r}")


def act(gen: str, v: LatticeVector, spec: ModuleSpec) -> LatticeVector:
    """Image of ``v`` under ``e``, ``f`` or ``h``.

    Raises :class:`DepthOverflow` instead of truncating when ``f`` leaves the
    lattice.
    """
    out: list = []
    for (i, a), c in v.terms.items():
        for key, d in _act_basis(gen, i, a, spec).items():
            out.append((key, c * d))
    return LatticeVector(out)


def act_word(word: str, v: LatticeVector, spec: ModuleSpec) -> LatticeVector:
    """Apply a word such as ``"efh"`` right to left."""
    for g in reversed(word):
        v = act(g, v, spec)
    return v


def _poly_shift(v: LatticeVector, spec, c0) -> LatticeVector:
    """``(h + c0) v``."""
    return act("h", v, spec) + v.scale(c0)


def commutator_check(spec: ModuleSpec) -> Report:
    """``[e,f] = h``, ``[h,e] = 2e``, ``[h,f] = -2f`` on every basis vector
    of depth below the cap."""
    rep = Report(f"{spec.case} module relations n={spec.n} A={spec.A}")
    for i, a in basis(spec, spec.A - 1):
        v = LatticeVector.basis(i, a)
        r1 = act_word("ef", v, spec) - act_word("fe", v, spec) - act("h", v, spec)
        r2 = act_word("he", v, spec) - act_word("eh", v, spec) - act("e", v, spec).scale(2)
        r3 = act_word("hf", v, spec) - act_word("fh", v, spec) + act("f", v, spec).scale(2)
        rep.add("module:[e,f]", "[e,f] = h", r1.is_zero(), r1, i=i, a=a)
        rep.add("module:[h,e]", "[h,e] = 2e", r2.is_zero(), r2, i=i, a=a)
        rep.add("module:[h,f]", "[h,f] = -2f", r3.is_zero(), r3, i=i, a=a)
    return rep


def power_commutator_check(spec: ModuleSpec, amax: int) -> Report:
    """Power relations for ``1 <= a <= amax`` on every basis vector that
    keeps ``f**a`` inside the cap.

    ``[f, e^a]`` is checked as ``-a e^(a-1) (h+a-1)``, which is the same
    operator as ``-a (h-a+1) e^(a-1)``.  The reading with ``h`` to the left,
    ``-a (h+a-1) e^(a-1)``, is recorded as an informational check: it holds
    only for ``a = 1``.  ``[e, f^a] = a (h+a-1) f^(a-1)`` holds with ``h``
    on the left.
    """
    if amax > spec.A - 1:
        raise DepthOverflow(f"amax={amax} needs depth cap >= {amax + 1}")
    rep = Report(f"{spec.case} module power relations n={spec.n} A={spec.A}")
    for p in range(1, amax + 1):
        ep, fp, ep1, fp1 = "e" * p, "f" * p, "e" * (p - 1), "f" * (p - 1)
        for i, a in basis(spec, spec.A - p):
            v = LatticeVector.basis(i, a)
            prm = dict(i=i, a=a, power=p)
            r = act_word("h" + ep, v, spec) - act_word(ep + "h", v, spec) - act_word(ep, v, spec).scale(2 * p)
            rep.add("power:[h,e^a]", "[h,e^a] = 2a e^a", r.is_zero(), r, **prm)

            lhs = act_word("f" + ep, v, spec) - act_word(ep + "f", v, spec)
            right = act_word(ep1, _poly_shift(v, spec, p - 1), spec).scale(-p)
            r = lhs - right
            rep.add("power:[f,e^a]", "[f,e^a] = -a e^(a-1) (h+a-1)", r.is_zero(), r, **prm)
            left = _poly_shift(act_word(ep1, v, spec), spec, p - 1).scale(-p)
            r = lhs - left
            rep.add("power:[f,e^a]-h-left", "[f,e^a] = -a (h+a-1) e^(a-1), h applied last",
                    r.is_zero(), r, informational=True, **prm)

            lhs = act_word("e" + fp, v, spec) - act_word(fp + "e", v, spec)
            r = lhs - _poly_shift(act_word(fp1, v, spec), spec, p - 1).scale(p)
            rep.add("power:[e,f^a]", "[e,f^a] = a (h+a-1) f^(a-1)", r.is_zero(), r, **prm)

            r = act_word("h" + fp, v, spec) - act_word(fp + "h", v, spec) + act_word(fp, v, spec).scale(2 * p)
            rep.add("power:[h,f^a]", "[h,f^a] = -2a f^a", r.is_zero(), r, **prm)
    return rep


def invariants_check(spec: ModuleSpec) -> Report:
    """Structure of ``h`` on each depth layer and injectivity of ``f``."""
    rep = Report(f"{spec.case} module invariants n={spec.n} A={spec.A}")
    for i, a in basis(spec):
        v = LatticeVector.basis(i, a)
        if spec.case == "nondiag":
            w = v
            for _ in range(spec.n):
                w = _poly_shift(w, spec, -(LAM - 2 * a))
            rep.add("module:h-nilpotent", "(h - (lam-2a))^n kills depth a", w.is_zero(), w, i=i, a=a)
        else:
            hv = act("h", v, spec)
            ok = set(hv.terms) <= {(i, a)}
            rep.add("module:h-diagonal", "h v[i,a] is a multiple of v[i,a]", ok, hv, i=i, a=a)
    src = list(basis(spec, spec.A - 1))
    dst = list(basis(spec))
    cols = [act("f", LatticeVector.basis(i, a), spec) for i, a in src]
    constant = all(c.degree <= 0 for col in cols for c in col.terms.values())
    rows = [[col.terms.get(key, ZERO).coeff(0) for col in cols] for key in dst]
    r = rank(rows) if constant else None
    rep.add("module:f-injective", "f has full column rank below the cap",
            constant and r == len(src), None if constant else "non-constant f entries",
            rank=r, columns=len(src))
    return rep


# ----------------------------------------------------------------- bridging

_KET_TO_MODULE = {"h": (OpName.T, Fraction(-2)), "e": (OpName.Eminus, Fraction(-1)),
                  "f": (OpName.Eplus, Fraction(-1))}


def _ket_rules(fam):
    if fam.case == "jordan":
        from .jordan import ket_action_jordan as act_ket

        def depth(n, ell):
            return n
    else:
        from .diag import ket_action_diag as act_ket

        def depth(n, ell):
            return n - ell
    return act_ket, depth


def realization_bridge(spec: ModuleSpec, fam, nmax: int | None = None) -> Report:
    """Match the ket-action matrices of a chain family with the module table.

    The generators are transported as ``h = -2T``, ``e = -E-``, ``f = -E+``.
    Kets map to basis vectors by depth ``a = n`` (Jordan) or ``a = n - ell``
    (diagonal) and by one of two chain orientations, ``i = N - ell`` or
    ``i = ell + 1``; both are tried.  ``lam`` is read off as the ``h``
    eigenvalue on the ket that lands on ``v[1,0]``.  A diagonal rescaling
    ``v[b] = s_b |b>`` is then solved exactly by propagating
    ``X_mod[c,b] s_c = s_b X_ket[c,b]`` along nonzero entries; any mismatch
    in the zero pattern or any inconsistent ratio is reported as an
    obstruction.
    """
    want = "nondiag" if fam.case == "jordan" else "diag"
    rep = Report(f"bridge {fam.case} N={fam.N}")
    if spec.case != want or spec.n != fam.N:
        rep.add("bridge:spec", "module spec matches the family", False,
                f"spec=({spec.case}, n={spec.n}), family=({fam.case}, N={fam.N})")
        return rep
    nmax = spec.A if nmax is None else nmax
    act_ket, depth = _ket_rules(fam)
    N, alpha = fam.N, fam.alpha
    kets = [(n, ell) for n, ell in fam.entries(nmax) if depth(n, ell) <= spec.A]
    orientations = {"i=N-l": lambda ell: N - ell, "i=l+1": lambda ell: ell + 1}
    results = {}
    for name, orient in orientations.items():
        to_mod = {k: (orient(k[1]), depth(*k)) for k in kets}
        results[name] = _solve_bridge(spec, fam, kets, to_mod, act_ket, alpha)
    rep.info["orientations"] = {k: v["summary"] for k, v in results.items()}
    good = [k for k, v in results.items() if v["ok"]]
    rep.add("bridge:solved", "diagonal rescaling solved for some chain orientation",
            bool(good), None if good else "; ".join(v["summary"]["obstruction"] for v in results.values()))
    if good:
        best = results[good[0]]
        rep.info["orientation"] = good[0]
        rep.info["lambda"] = best["summary"]["lambda"]
        rep.info["rescaling"] = best["summary"]["rescaling"]
    return rep


def _solve_bridge(spec, fam, kets, to_mod, act_ket, alpha) -> dict:
    from_mod = {v: k for k, v in to_mod.items()}
    root = from_mod.get((1, 0))
    if root is None or len(from_mod) != len(to_mod):
        return {"ok": False, "summary": {"obstruction": "ket/basis map is not a bijection"}}
    lam = Fraction(-2) * act_ket(OpName.T, root[0], root[1], alpha).get(root, Fraction(0))
    edges = []  # (b, c, x_mod, x_ket)
    for b in kets:
        ib, ab = to_mod[b]
        for gen, (op, factor) in _KET_TO_MODULE.items():
            if gen == "f" and ab >= spec.A:
                continue
            ket_img = {c: factor * x for c, x in act_ket(op, b[0], b[1], alpha).items() if c in to_mod}
            mod_img = {
                from_mod[key]: c(lam)
                for key, c in _act_basis(gen, ib, ab, spec).items()
                if key in from_mod
            }
            for c in set(ket_img) | set(mod_img):
                edges.append((gen, b, c, mod_img.get(c, Fraction(0)), ket_img.get(c, Fraction(0))))
    for gen, b, c, xm, xk in edges:
        if (xm == 0) != (xk == 0):
            return {"ok": False, "summary": {
                "lambda": format_q(lam),
                "obstruction": f"{gen}: entry {b}->{c} is {format_q(xk)} on kets "
                               f"but {format_q(xm)} in the module",
            }}
    scale = {root: Fraction(1)}
    adj: dict = {}
    for gen, b, c, xm, xk in edges:
        if xm != 0 and b != c:
            adj.setdefault(b, []).append((c, xk / xm))  # s_c = s_b xk / xm
            adj.setdefault(c, []).append((b, xm / xk))
    queue = deque([root])
    while queue:
        b = queue.popleft()
        for c, ratio in adj.get(b, []):
            if c not in scale:
                scale[c] = scale[b] * ratio
                queue.append(c)
    if len(scale) != len(kets):
        return {"ok": False, "summary": {"lambda": format_q(lam),
                                         "obstruction": "ket graph is disconnected"}}
    for gen, b, c, xm, xk in edges:
        if xm * scale[c] != scale[b] * xk:
            return {"ok": False, "summary": {
                "lambda": format_q(lam),
                "obstruction": f"{gen}: ratio on {b}->{c} inconsistent "
                               f"({format_q(xm * scale[c])} vs {format_q(scale[b] * xk)})",
            }}
    return {"ok": True, "summary": {
        "lambda": format_q(lam),
        "obstruction": None,
        "rescaling": {f"{n},{ell}": format_q(s) for (n, ell), s in sorted(scale.items())},
    }}
