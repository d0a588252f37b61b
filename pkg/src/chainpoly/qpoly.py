"""Dense univariate polynomials over Q, generalized Laguerre polynomials and
certified real-root isolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from .exact import as_q, format_q, pochhammer

__all__ = [
    "QPoly",
    "ZERO",
    "ONE",
    "Z",
    "laguerre",
    "laguerre_ode_residual",
    "three_term_check",
    "sturm_sequence",
    "sturm_count",
    "squarefree_decomposition",
    "RootReport",
    "isolate_real_roots",
    "DEFAULT_REFINE_WIDTH",
]

DEFAULT_REFINE_WIDTH = Fraction(1, 2**40)


class QPoly:
    """Polynomial with Fraction coefficients, lowest power first.

    Instances are immutable and hashable.  The zero polynomial has an empty
    coefficient tuple and ``degree == -1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def constant(cls, c) -> QPoly:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> QPoly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(other) -> QPoly:
        if isinstance(other, QPoly):
            return other
        return QPoly([other])

    def __add__(self, other) -> QPoly:
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> QPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> QPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> QPoly:
        if not isinstance(other, QPoly):
            c = as_q(other)
            return QPoly([c * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QPoly:
        c = as_q(other)
        return QPoly([x / c for x in self.coeffs])

    def __pow__(self, k: int) -> QPoly:
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: QPoly):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lc = other.lead
        if len(rem) - 1 < dd:
            return ZERO, self
        quo = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            c = rem[k + dd] / lc
            quo[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= c * y
        return QPoly(quo), QPoly(rem[:dd])

    def __floordiv__(self, other: QPoly) -> QPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: QPoly) -> QPoly:
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == QPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- calculus / evaluation -------------------------------------------
    def deriv(self, k: int = 1) -> QPoly:
        p = self
        for _ in range(k):
            p = QPoly([i * c for i, c in enumerate(p.coeffs)][1:])
        return p

    def shift_up(self) -> QPoly:
        """Multiply by the variable."""
        if not self.coeffs:
            return ZERO
        return QPoly((Fraction(0),) + self.coeffs)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> QPoly:
        return self / self.lead

    def gcd(self, other: QPoly) -> QPoly:
        """Monic gcd, via a primitive integer remainder sequence (plain
        Euclid over Q blows up coefficient sizes)."""
        if other.is_zero():
            return self.monic() if self else self
        if self.is_zero():
            return other.monic()
        a, b = _primitive_int(self), _primitive_int(other)
        if len(a) < len(b):
            a, b = b, a
        while b:
            if len(b) == 1:
                return ONE
            a, b = b, _neg_prem(a, b)
        return QPoly(a).monic()

    # -- presentation -----------------------------------------------------
    def to_strings(self) -> list[str]:
        return [format_q(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> QPoly:
        return cls(as_q(s) for s in items)

    def pretty(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = format_q(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{format_q(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"QPoly({self.pretty()})"


ZERO = QPoly()
ONE = QPoly([1])
Z = QPoly([0, 1])


@lru_cache(maxsize=None)
def _laguerre_cached(n: int, alpha: Fraction) -> QPoly:
    # hypergeometric sum: coeff of z^k is (-1)^k/k! * (alpha+k+1)_{n-k}/(n-k)!
    coeffs = []
    for k in range(n + 1):
        c = Fraction((-1) ** k, math.factorial(k) * math.factorial(n - k))
        coeffs.append(c * pochhammer(alpha + k + 1, n - k))
    return QPoly(coeffs)


def laguerre(n: int, alpha) -> QPoly:
    """Generalized Laguerre polynomial ``L_n^(alpha)`` built from its 1F1 sum.

    The recurrence is deliberately not used here so that it can serve as an
    independent check (see :func:`three_term_check`).
    """
    if n < 0:
        return ZERO
    return _laguerre_cached(n, as_q(alpha))


def laguerre_ode_residual(p: QPoly, n: int, alpha) -> QPoly:
    """``z p'' + (1 + alpha - z) p' + n p``."""
    alpha = as_q(alpha)
    d1 = p.deriv()
    return p.deriv(2).shift_up() + (1 + alpha) * d1 - d1.shift_up() + n * p


def three_term_check(n: int, alpha) -> bool:
    """Check ``(n+1)L_{n+1} = (2n+1+alpha-z)L_n - (n+alpha)L_{n-1}`` exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    alpha = as_q(alpha)
    ln = laguerre(n, alpha)
    lhs = (n + 1) * laguerre(n + 1, alpha)
    rhs = (2 * n + 1 + alpha) * ln - ln.shift_up() - (n + alpha) * laguerre(n - 1, alpha)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Real roots
#
# Sturm chains are computed on primitive integer polynomials with a
# sign-preserving pseudo-remainder; this keeps degree-50 isolation fast.


def _primitive_int(p: QPoly) -> list[int]:
    den = reduce(math.lcm, (c.denominator for c in p.coeffs), 1)
    ints = [int(c * den) for c in p.coeffs]
    g = reduce(math.gcd, ints, 0)
    return [c // g for c in ints] if g else ints


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _neg_prem(a: list[int], b: list[int]) -> list[int]:
    """``-|lc(b)|**k * rem(a, b)`` made primitive with positive content."""
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    mult = abs(lc)
    sgn = 1 if lc > 0 else -1
    while len(a) - 1 >= db and a:
        c = a[-1]
        shift = len(a) - 1 - db
        # a <- |lc| a - sgn c z^shift b
        a = [mult * x for x in a]
        for j, y in enumerate(b):
            a[shift + j] -= sgn * c * y
        a.pop()
        _strip(a)
    out = [-x for x in a]
    g = reduce(math.gcd, out, 0)
    return [x // g for x in out] if g else out


def sturm_sequence(p: QPoly) -> list[list[int]]:
    """Sturm chain of ``p`` as integer coefficient lists (lowest power first)."""
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    p0 = _primitive_int(p)
    seq = [p0]
    if len(p0) > 1:
        seq.append(_primitive_int(p.deriv()))
        while len(seq[-1]) > 1:
            r = _neg_prem(seq[-2], seq[-1])
            if not r:
                break
            seq.append(r)
    return seq


def _sign_at(coeffs: list[int], x: Fraction) -> int:
    # sign of den**d * p(num/den), den > 0, by homogeneous Horner
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    for k in range(len(coeffs) - 1, -1, -1):
        acc = acc * num + coeffs[k] * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


def _sign_at_inf(coeffs: list[int], positive: bool) -> int:
    lc = coeffs[-1]
    s = (lc > 0) - (lc < 0)
    if not positive and (len(coeffs) - 1) % 2 == 1:
        s = -s
    return s


def _variations(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def sturm_count(seq: list[list[int]], lo=None, hi=None) -> int:
    """Number of distinct real roots in ``(lo, hi]``; ``None`` means infinity."""
    if lo is None:
        vlo = _variations(_sign_at_inf(c, False) for c in seq)
    else:
        vlo = _variations(_sign_at(c, as_q(lo)) for c in seq)
    if hi is None:
        vhi = _variations(_sign_at_inf(c, True) for c in seq)
    else:
        vhi = _variations(_sign_at(c, as_q(hi)) for c in seq)
    return vlo - vhi


def squarefree_decomposition(p: QPoly) -> list[tuple[QPoly, int]]:
    """Yun's algorithm: monic pairwise-coprime square-free factors with
    multiplicities, such that ``p = lead * prod(f**m)``.
    """
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    out = []
    dp = p.deriv()
    a = p.gcd(dp)
    b = p // a
    c = dp // a
    d = c - b.deriv()
    i = 1
    while b.degree > 0:
        a = b.gcd(d)
        b = b // a
        c = d // a
        d = c - b.deriv()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


@dataclass(frozen=True)
class RootReport:
    """Certified real-root data for a polynomial.

    ``isolating_intervals[i]`` is a closed interval ``[lo, hi]`` holding
    exactly one distinct real root, with multiplicity ``multiplicities[i]``.
    ``refined_roots`` are binary64 midpoints, ascending.
    """

    degree: int
    real_root_count: int
    isolating_intervals: tuple[tuple[Fraction, Fraction], ...]
    refined_roots: tuple[float, ...]
    multiplicities: tuple[int, ...] = field(default=())

    @property
    def all_real(self) -> bool:
        return self.real_root_count == self.degree

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "real_root_count": self.real_root_count,
            "all_real": self.all_real,
            "isolating_intervals": [
                [format_q(lo), format_q(hi)] for lo, hi in self.isolating_intervals
            ],
            "refined_roots": list(self.refined_roots),
            "multiplicities": list(self.multiplicities),
        }


def _cauchy_bound(p: QPoly) -> Fraction:
    lc = abs(p.lead)
    return 1 + max(abs(c) / lc for c in p.coeffs[:-1]) if p.degree > 0 else Fraction(1)


def _isolate_squarefree(f: QPoly, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    seq = sturm_sequence(f)
    total = sturm_count(seq)
    if total == 0:
        return []
    bound = _cauchy_bound(f)
    # power of two above the bound keeps bisection points dyadic
    b = Fraction(1)
    while b < bound:
        b *= 2
    stack = [(-b, b, total)]
    found = []
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left = sturm_count(seq, lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, cnt - left))
    f_int = _primitive_int(f)
    refined = [_refine(f_int, lo, hi, width) for lo, hi in found]
    refined.sort()
    return refined


def _refine(f_int: list[int], lo: Fraction, hi: Fraction, width: Fraction):
    """Shrink ``(lo, hi]`` (one simple root of ``f``) to a closed interval of
    width at most ``width`` holding exactly that root.  Exact rational roots
    come back as degenerate ``(r, r)`` intervals.
    """
    s_hi = _sign_at(f_int, hi)
    if s_hi == 0:
        return (hi, hi)
    while hi - lo > width or _sign_at(f_int, lo) == 0:
        mid = (lo + hi) / 2
        s = _sign_at(f_int, mid)
        if s == 0:
            return (mid, mid)
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return (lo, hi)


def isolate_real_roots(p: QPoly, refine_width=DEFAULT_REFINE_WIDTH) -> RootReport:
    """Isolate and refine the real roots of ``p`` using Sturm sequences.

    Square-free factorisation is applied first; each factor is isolated
    separately and roots are reported with multiplicity.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    width = as_q(refine_width)
    if width <= 0:
        raise ValueError("refine_width must be positive")
    entries = []
    for factor, mult in squarefree_decomposition(p):
        for lo, hi in _isolate_squarefree(factor, width):
            entries.append((lo, hi, mult))
    entries.sort(key=lambda e: (e[0] + e[1]) / 2)
    # intervals come from different factors and may overlap; shrink until
    # disjoint (roots of coprime factors are distinct)
    entries = _separate(entries, p)
    intervals = tuple((lo, hi) for lo, hi, _ in entries)
    mults = tuple(m for _, _, m in entries)
    mids = tuple(float((lo + hi) / 2) for lo, hi in intervals)
    return RootReport(
        degree=p.degree,
        real_root_count=sum(mults),
        isolating_intervals=intervals,
        refined_roots=mids,
        multiplicities=mults,
    )


def _separate(entries, p: QPoly):
    factors = {m: f for f, m in squarefree_decomposition(p)}
    ints = {m: _primitive_int(f) for m, f in factors.items()}
    changed = True
    while changed:
        changed = False
        for i in range(len(entries) - 1):
            lo1, hi1, m1 = entries[i]
            lo2, hi2, m2 = entries[i + 1]
            if hi1 >= lo2:
                entries[i] = (*_halve(ints[m1], lo1, hi1), m1)
                entries[i + 1] = (*_halve(ints[m2], lo2, hi2), m2)
                changed = True
        entries.sort(key=lambda e: (e[0] + e[1]) / 2)
    return entries


def _halve(f_int, lo, hi):
    return _refine(f_int, lo, hi, (hi - lo) / 2)
