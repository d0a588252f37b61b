"""Exact scalar helpers: rational parsing, Pochhammer symbols, harmonic numbers
and Gamma-weighted moments.

All scalars are :class:`fractions.Fraction`.  Integrals against the weight
``z**alpha * exp(-z)`` are reported in units of ``Gamma(alpha + 1)`` so that
everything stays in Q.
"""

from fractions import Fraction
from functools import lru_cache

__all__ = ["Q", "as_q", "format_q", "pochhammer", "harmonic", "moment", "solve_linear", "rank"]

Q = Fraction


def as_q(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or a ``"p/q"`` string) to a Fraction.

    Floats are refused: they would silently smuggle rounding into identities
    that are meant to hold exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            num, den = int(num), int(den)
            if den == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(num, den)
        return Fraction(int(text))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_q(value: Fraction) -> str:
    """Serialise as ``"p/q"`` (or ``"p"`` for integers)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def pochhammer(a, k: int) -> Fraction:
    """Rising factorial ``a (a+1) ... (a+k-1)``; equals 1 for ``k == 0``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    a = as_q(a)
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


@lru_cache(maxsize=None)
def harmonic(m: int) -> Fraction:
    """``H_m = 1 + 1/2 + ... + 1/m`` with ``H_0 = 0``.

    ``gamma + digamma(m) == H_{m-1}`` for ``m >= 1``, which is how the
    polygamma form of the three-chain polynomials is evaluated exactly.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return Fraction(0)
    return harmonic(m - 1) + Fraction(1, m)


def moment(k: int, alpha) -> Fraction:
    """``int_0^inf z**(k+alpha) exp(-z) dz / Gamma(alpha+1) = (alpha+1)_k``.

    Raises ``ValueError`` when ``alpha <= -1`` (the integral diverges).
    """
    alpha = as_q(alpha)
    if alpha <= -1:
        raise ValueError(f"moments need alpha > -1, got {format_q(alpha)}")
    return pochhammer(alpha + 1, k)


def solve_linear(rows, rhs):
    """Exact Gaussian elimination for ``rows @ x = rhs`` over Q.

    Returns one solution (free variables set to zero) as a list of
    Fractions, or ``None`` when the system is inconsistent.
    """
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    ncols = len(m[0]) - 1 if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in m):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][-1]
    return x


def rank(rows) -> int:
    """Exact rank of a rational matrix."""
    if not rows:
        return 0
    m = [[Fraction(x) for x in row] for row in rows]
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r
