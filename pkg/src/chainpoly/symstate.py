"""Two-variable states as Q-linear combinations of ``z**i t**n L**m`` with
``L = ln(z t)``, and the differential realization of the sl(2) generators.

Only the Euler operators ``z d/dz`` and ``t d/dt`` are primitive; both send
``L`` to 1, so ``L`` is handled as a single atom.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .exact import as_q
from .qpoly import QPoly

__all__ = [
    "LogMonomial",
    "SymExpr",
    "OpName",
    "euler_z",
    "euler_t",
    "apply",
    "apply_word",
    "commutator_residual",
    "literal_commutator_residual",
    "SL2_RELATIONS",
]


class LogMonomial(NamedTuple):
    zpow: int
    tpow: int
    logpow: int


class SymExpr:
    """Finite Q-linear combination of :class:`LogMonomial` terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[LogMonomial, Fraction] = {}
        for mono, c in items:
            mono = LogMonomial(*mono)
            if mono.logpow < 0:
                raise ValueError("negative log power")
            acc[mono] = acc.get(mono, Fraction(0)) + as_q(c)
        self.terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> SymExpr:
        """Trusted constructor: keys are LogMonomials, values exact rationals."""
        out = cls.__new__(cls)
        out.terms = {m: c for m, c in terms.items() if c}
        return out

    @classmethod
    def monomial(cls, zpow=0, tpow=0, logpow=0, coeff=1) -> SymExpr:
        return cls({(zpow, tpow, logpow): coeff})

    @classmethod
    def from_poly(cls, p: QPoly, tpow: int = 0, logpow: int = 0) -> SymExpr:
        """``p(z) t**tpow L**logpow``."""
        return cls(((k, tpow, logpow), c) for k, c in enumerate(p.coeffs))

    def is_zero(self) -> bool:
        return not self.terms

    def is_valid_state(self) -> bool:
        """No negative powers of ``z`` or ``t``."""
        return all(m.zpow >= 0 and m.tpow >= 0 for m in self.terms)

    def __add__(self, other: SymExpr) -> SymExpr:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SymExpr._raw(out)

    def __neg__(self) -> SymExpr:
        return SymExpr._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: SymExpr) -> SymExpr:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return SymExpr._raw(out)

    def __mul__(self, scalar) -> SymExpr:
        s = as_q(scalar)
        return SymExpr._raw({m: s * c for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, SymExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def shift(self, dz: int = 0, dt: int = 0) -> SymExpr:
        """Multiply by ``z**dz t**dt``."""
        return SymExpr._raw(
            {LogMonomial(m.zpow + dz, m.tpow + dt, m.logpow): c for m, c in self.terms.items()}
        )

    def poly_coefficient(self, tpow: int, logpow: int) -> QPoly:
        """The polynomial in ``z`` multiplying ``t**tpow L**logpow``."""
        pairs = {m.zpow: c for m, c in self.terms.items() if m.tpow == tpow and m.logpow == logpow}
        if any(k < 0 for k in pairs):
            raise ValueError("negative z power in requested coefficient")
        top = max(pairs, default=-1)
        return QPoly([pairs.get(k, 0) for k in range(top + 1)])

    def __repr__(self) -> str:
        if not self.terms:
            return "SymExpr(0)"
        parts = [
            f"{c}*z^{m.zpow}*t^{m.tpow}*L^{m.logpow}" for m, c in sorted(self.terms.items())
        ]
        return "SymExpr(" + " + ".join(parts) + ")"


def _euler(s: SymExpr, wz, wt, const=0, dz=0, dt=0, zshift_coeff=0) -> SymExpr:
    """One pass of ``(wz z d_z + wt t d_t + const - zshift_coeff z)`` followed by
    multiplication with ``z**dz t**dt``.  All the generators reduce to this.
    """
    out: dict = {}
    for m, c in s.terms.items():
        w = wz * m.zpow + wt * m.tpow + const
        if w:
            key = LogMonomial(m.zpow + dz, m.tpow + dt, m.logpow)
            out[key] = out.get(key, 0) + w * c
        if m.logpow and (wz + wt):
            key = LogMonomial(m.zpow + dz, m.tpow + dt, m.logpow - 1)
            out[key] = out.get(key, 0) + (wz + wt) * m.logpow * c
        if zshift_coeff:
            key = LogMonomial(m.zpow + dz + 1, m.tpow + dt, m.logpow)
            out[key] = out.get(key, 0) - zshift_coeff * c
    return SymExpr._raw(out)


def euler_z(s: SymExpr) -> SymExpr:
    """``z d/dz`` with ``z d/dz L = 1``."""
    return _euler(s, 1, 0)


def euler_t(s: SymExpr) -> SymExpr:
    """``t d/dt`` with ``t d/dt L = 1``."""
    return _euler(s, 0, 1)


class OpName(enum.Enum):
    T = "T"
    Eplus = "Eplus"
    Eminus = "Eminus"
    Casimir = "Casimir"


def _op(op) -> OpName:
    return op if isinstance(op, OpName) else OpName(op)


def apply(op, s: SymExpr, alpha) -> SymExpr:
    """Image of ``s`` under one generator of the realization

    ``T = t d_t + (1+alpha)/2``,
    ``E+ = t (z d_z + t d_t + 1 + alpha - z)``,
    ``E- = (z d_z - t d_t) / t``,
    ``K = T T + T + E- E+`` (composed, not expanded by hand).
    """
    op = _op(op)
    alpha = as_q(alpha)
    if op is OpName.T:
        return _euler(s, 0, 1, (1 + alpha) / 2)
    if op is OpName.Eplus:
        return _euler(s, 1, 1, 1 + alpha, dt=1, zshift_coeff=1)
    if op is OpName.Eminus:
        return _euler(s, 1, -1, dt=-1)
    ts = apply(OpName.T, s, alpha)
    return (
        apply(OpName.T, ts, alpha)
        + ts
        + apply(OpName.Eminus, apply(OpName.Eplus, s, alpha), alpha)
    )


def apply_word(word: Iterable, s: SymExpr, alpha) -> SymExpr:
    """Apply operators right-to-left, as in ``A B C s``."""
    for op in reversed(list(word)):
        s = apply(op, s, alpha)
    return s


# [a, b] = coeff * c for the realization above.  Note the sign of the first
# entry: the realization gives [E-, E+] = -2T, i.e. [E+, E-] = 2T, which is
# also what makes T^2 + T + E- E+ central.
SL2_RELATIONS = {
    (OpName.Eminus, OpName.Eplus): (Fraction(-2), OpName.T),
    (OpName.T, OpName.Eplus): (Fraction(1), OpName.Eplus),
    (OpName.T, OpName.Eminus): (Fraction(-1), OpName.Eminus),
}

_LITERAL_RELATIONS = {
    (OpName.Eminus, OpName.Eplus): (Fraction(2), OpName.T),
    (OpName.T, OpName.Eplus): (Fraction(1), OpName.Eplus),
    (OpName.T, OpName.Eminus): (Fraction(-1), OpName.Eminus),
}


def _residual(table, a, b, probe, alpha) -> SymExpr:
    a, b = _op(a), _op(b)
    try:
        coeff, rhs = table[(a, b)]
    except KeyError:
        coeff, rhs = table[(b, a)]
        coeff = -coeff
    bracket = apply(a, apply(b, probe, alpha), alpha) - apply(b, apply(a, probe, alpha), alpha)
    if rhs is OpName.T:
        # T carries an additive constant, so the bracket must be matched against
        # the full operator
        target = apply(OpName.T, probe, alpha)
    else:
        target = apply(rhs, probe, alpha)
    return bracket - target * coeff


def commutator_residual(a, b, probe: SymExpr, alpha) -> SymExpr:
    """``([a, b] - rhs)(probe)`` for the sl(2) relations the realization obeys.

    The relation set is ``[E+, E-] = 2T``, ``[T, E+-] = +-E+-``.
    """
    return _residual(SL2_RELATIONS, a, b, probe, alpha)


def literal_commutator_residual(a, b, probe: SymExpr, alpha) -> SymExpr:
    """Same as :func:`commutator_residual` but with ``[E-, E+] = +2T``.

    For the realization this is nonzero: it equals ``-4 T(probe)`` on the
    ``(E-, E+)`` pair.  Kept so that the sign can be demonstrated.
    """
    return _residual(_LITERAL_RELATIONS, a, b, probe, alpha)
