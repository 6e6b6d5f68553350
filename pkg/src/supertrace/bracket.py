"""Change-of-variable coefficients between the two mode gradings.

The table c(p, i, m) expands the degree-i polynomial binom(p-1+z, i) in
powers of z.  Row m of the inverse view gives the coefficients expressing a
square-bracket mode of weight p through the round-bracket modes; the
logarithm power series provides an independent route to the same numbers.
Operators are never modeled, only their rational coefficient vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .series import QSeries


@dataclass(frozen=True)
class BracketCoeffTable:
    """Exact rationals c(p, i, m) for 0 <= m <= i <= imax; zero when m > i."""

    p: int
    imax: int
    rows: dict[tuple[int, int], Fraction]

    def get(self, i: int, m: int) -> Fraction:
        if i > self.imax:
            raise ValueError(f"row {i} beyond table bound {self.imax}")
        return self.rows.get((i, m), Fraction(0))


def c_table(p: int, imax: int) -> BracketCoeffTable:
    """Expand binom(p-1+z, i) = prod_{t<i} (p-1+z-t) / i! in powers of z."""
    if imax < 0:
        raise ValueError("imax must be >= 0")
    rows: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
    poly = [Fraction(1)]
    for i in range(1, imax + 1):
        root = Fraction(p - 1 - (i - 1))
        nxt = [Fraction(0)] * (len(poly) + 1)
        for m, c in enumerate(poly):
            nxt[m] += c * root
            nxt[m + 1] += c
        poly = nxt
        fact = factorial(i)
        for m, c in enumerate(poly):
            if c:
                rows[(i, m)] = c / fact
    return BracketCoeffTable(p, imax, rows)


def _log_series(order: int) -> list[Fraction]:
    # log(1+z) = sum (-1)**(n-1)/n * z**n
    return [Fraction(0)] + [Fraction((-1) ** (n - 1), n) for n in range(1, order + 1)]


def _binomial_series(exponent: int, order: int) -> list[Fraction]:
    # (1+z)**exponent for any integer exponent, as a truncated series
    out = [Fraction(1)]
    for n in range(1, order + 1):
        out.append(out[-1] * Fraction(exponent - n + 1, n))
    return out


def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                if y:
                    out[i + j] += x * y
    return out


def log_pow_series(m: int, p: int, order: int) -> QSeries:
    """Exact expansion of log(1+z)**m * (1+z)**(p-1), the table's oracle.

    The z**i coefficient equals m! * c(p, i, m).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    acc = _binomial_series(p - 1, order)
    log = _log_series(order)
    for _ in range(m):
        acc = _series_mul(acc, log, order)
    return QSeries(acc, 0, 1)


def vbracket_coeffs(wt: int, m: int, imax: int) -> list[Fraction]:
    """Coefficients m! * c(wt, i, m) for i = 0..imax (zero below i = m).

    Entry i is the weight-wt square-bracket mode's coefficient on the i-th
    round-bracket mode; m = 0 reduces to binom(wt-1, i).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    table = c_table(wt, imax)
    fact = factorial(m)
    return [fact * table.get(i, m) for i in range(imax + 1)]


def l0_bracket_coeffs(nmax: int) -> list[Fraction]:
    """Coefficients (-1)**(n-1) / (n*(n+1)) for n = 1..nmax.

    These express the torus grading operator through the plane Virasoro
    modes above L(0).
    """
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    return [Fraction((-1) ** (n - 1), n * (n + 1)) for n in range(1, nmax + 1)]


# companion constants for the low square-bracket Virasoro modes:
# the degree -2 mode picks up -c/24 times the identity, and the degree -1
# mode is the sum of the plane modes L(-1) and L(0).
CENTRAL_CHARGE_SHIFT = Fraction(-1, 24)
L_MINUS_ONE_COMBINATION = (Fraction(1), Fraction(1))
