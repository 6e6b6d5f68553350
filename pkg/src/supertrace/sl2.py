"""Integer modular-group matrices, their three actions, and the ratio verifier.

A matrix acts on the upper half plane by Möbius maps, on pairs of roots of
unity on the right, and on commuting twist pairs.  The verifier estimates
the constant relating one weight-k function to another under a group
element and reports how far the ratio is from being constant.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from statistics import fmean
from typing import Callable, Sequence

from .errors import DegenerateSample
from .series import EvalPoint, RootOfUnity


@dataclass(frozen=True)
class SL2Matrix:
    """An integer matrix (a b; c d) with determinant one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix must have determinant 1")

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(self.a * other.a + self.b * other.c,
                         self.a * other.b + self.b * other.d,
                         self.c * other.a + self.d * other.c,
                         self.c * other.b + self.d * other.d)

    def __pow__(self, n: int) -> "SL2Matrix":
        if n < 0:
            return self.inverse() ** (-n)
        out = IDENTITY
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def mobius_tau(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def mobius(self, point: EvalPoint) -> EvalPoint:
        """Image of the point; stays in the upper half plane (determinant 1)."""
        return EvalPoint(self.mobius_tau(point.tau))

    def automorphy(self, tau: complex) -> complex:
        """The factor c*tau + d."""
        return self.c * tau + self.d

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


IDENTITY = SL2Matrix(1, 0, 0, 1)
S = SL2Matrix(0, -1, 1, 0)
T = SL2Matrix(1, 1, 0, 1)


def mobius(g: SL2Matrix, point: EvalPoint) -> EvalPoint:
    return g.mobius(point)


def act_pair(mu: RootOfUnity, lam: RootOfUnity, g: SL2Matrix) -> tuple[RootOfUnity, RootOfUnity]:
    """Right action (mu, lam) . (a b; c d) = (mu**a * lam**c, mu**b * lam**d)."""
    return (mu ** g.a * lam ** g.c, mu ** g.b * lam ** g.d)


@dataclass(frozen=True)
class TwistPair:
    """A pair (x**i1 * y**j1, x**i2 * y**j2) of words in two commuting
    generators of orders `orders[0]` and `orders[1]`; exponents reduced."""

    orders: tuple[int, int]
    first: tuple[int, int]
    second: tuple[int, int]

    def __post_init__(self):
        t, t1 = self.orders
        if t < 1 or t1 < 1:
            raise ValueError("generator orders must be positive")
        object.__setattr__(self, "first", (self.first[0] % t, self.first[1] % t1))
        object.__setattr__(self, "second", (self.second[0] % t, self.second[1] % t1))


def act_twist(tp: TwistPair, g: SL2Matrix) -> TwistPair:
    """Right action sending the pair (x, y) to (x**a * y**c, x**b * y**d)."""
    i1, j1 = tp.first
    i2, j2 = tp.second
    return TwistPair(tp.orders,
                     (g.a * i1 + g.c * i2, g.a * j1 + g.c * j2),
                     (g.b * i1 + g.d * i2, g.b * j1 + g.d * j2))


def in_gamma_theta(g: SL2Matrix) -> bool:
    """Membership in the theta group: congruent to I or to S modulo 2."""
    mod2 = tuple(x % 2 for x in g.entries())
    return mod2 == (1, 0, 0, 1) or mod2 == (0, 1, 1, 0)


def in_gamma_TT1(g: SL2Matrix, t_order: int, t1_order: int) -> bool:
    """a == d == 1 mod lcm(T, T1), b == 0 mod T, c == 0 mod T1."""
    if t_order < 1 or t1_order < 1:
        raise ValueError("orders must be positive")
    n = lcm(t_order, t1_order)
    return (g.a % n == 1 % n and g.d % n == 1 % n
            and g.b % t_order == 0 and g.c % t1_order == 0)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of an identity or transformation-law check.

    Exact checks carry only the pass flag; numeric checks also carry the
    estimated constant, the worst residual, and the samples used.  `details`
    holds named sub-residuals for composite checks.
    """

    label: str
    mode: str  # "exact" | "numeric"
    passed: bool
    constant: complex | None = None
    residual: float | None = None
    samples: tuple[complex, ...] = ()
    details: tuple[tuple[str, float], ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "mode": self.mode,
            "pass": self.passed,
            "constant": None if self.constant is None
            else [self.constant.real, self.constant.imag],
            "residual": self.residual,
            "samples": [[s.real, s.imag] for s in self.samples],
            "details": {name: value for name, value in self.details},
        }


DEFAULT_SAMPLES: tuple[complex, ...] = (2j, 1 + 2j, 3j, -1 + 2.5j)

MIN_SAMPLE_SEPARATION = 1e-3
DEGENERATE_THRESHOLD = 1e-12


def transform_ratio(lhs: Callable[[complex], complex],
                    rhs: Callable[[complex], complex],
                    g: SL2Matrix,
                    weight: int,
                    samples: Sequence[complex] = DEFAULT_SAMPLES,
                    tol: float = 1e-8,
                    label: str = "transform") -> VerificationReport:
    """Estimate the constant gamma with lhs(g.tau) = gamma * (c*tau+d)**weight * rhs(tau).

    The ratio is formed at every sample; the mean is reported as the
    constant and the worst deviation from the mean as the residual.  Passing
    means the ratio really is sample-independent at the tolerance.
    """
    pts = [complex(EvalPoint(s).tau) for s in samples]
    if len(pts) < 3:
        raise ValueError("need at least 3 sample points")
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i] - pts[j]) <= MIN_SAMPLE_SEPARATION:
                raise ValueError("sample points too close together")
    ratios = []
    for tau in pts:
        denom = g.automorphy(tau) ** weight * rhs(tau)
        if abs(denom) < DEGENERATE_THRESHOLD:
            raise DegenerateSample(f"rhs vanishes at tau={tau}")
        ratios.append(lhs(g.mobius_tau(tau)) / denom)
    constant = sum(ratios) / len(ratios)
    residual = max(abs(r - constant) for r in ratios)
    return VerificationReport(label=label, mode="numeric", passed=residual < tol,
                              constant=constant, residual=residual,
                              samples=tuple(pts))
