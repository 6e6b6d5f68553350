"""Exact truncated series in q with fractional exponents.

Series live on an exponent lattice ``offset + (1/D) * Z>=0`` with
coefficients in a cyclotomic field Q(zeta_L), stored exactly.  Nothing here
touches floating point except the final numeric evaluation on the upper
half plane.

Truncation semantics: a series represents its stored coefficient range
exactly and is unknown past the last stored exponent.  Arithmetic first
merges the exponent lattices of the operands, then truncates the result to
the shorter known range, so precision loss is explicit and predictable.
All values are immutable after construction; operations are pure.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import InvalidFactor, NotInvertible, OutsideUpperHalfPlane

Rational = Union[int, Fraction]

_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# cyclotomic polynomials and polynomial helpers (exact, over Fraction)
# ---------------------------------------------------------------------------

def _poly_div_exact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Divide integer polynomials exactly; `den` must be monic and divide `num`."""
    work = list(num)
    dd = len(den) - 1
    out = [0] * (len(work) - dd)
    for i in range(len(work) - 1, dd - 1, -1):
        c = work[i]
        if c:
            out[i - dd] = c
            for j in range(dd + 1):
                work[i - dd + j] -= c * den[j]
    if any(work):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(level: int) -> Tuple[int, ...]:
    """Integer coefficients of the level-th cyclotomic polynomial, constant first."""
    if level < 1:
        raise ValueError("level must be a positive integer")
    if level == 1:
        return (-1, 1)
    poly = [-1] + [0] * (level - 1) + [1]
    for d in range(1, level):
        if level % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _frac_poly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _frac_poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(1, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _frac_poly_trim(q), _frac_poly_trim(a)


def _reduce_terms(terms: Mapping[int, Rational], level: int) -> dict[int, Fraction]:
    """Fold exponents mod level, then reduce modulo the cyclotomic polynomial."""
    vec = [Fraction(0)] * level
    for a, c in terms.items():
        c = Fraction(c)
        if c:
            vec[a % level] += c
    phi = cyclotomic_polynomial(level)
    deg = len(phi) - 1
    for i in range(level - 1, deg - 1, -1):
        c = vec[i]
        if c:
            vec[i] = Fraction(0)
            for j in range(deg):
                vec[i - deg + j] -= c * phi[j]
    return {a: c for a, c in enumerate(vec[:deg]) if c}


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

class CycloScalar:
    """An element sum_a c_a * zeta_L**a of the cyclotomic field Q(zeta_L).

    Representations are reduced eagerly modulo the L-th cyclotomic
    polynomial, so structural equality of the reduced term maps coincides
    with field equality.  Rationals embed as the exponent-0 term.  Values of
    different levels mix freely; arithmetic promotes to the lcm level.
    Instances are immutable.
    """

    __slots__ = ("level", "terms")

    def __init__(self, terms: Mapping[int, Rational] | None = None, level: int = 1):
        if level < 1:
            raise ValueError("level must be a positive integer")
        self.level = level
        self.terms = _reduce_terms(terms or {}, level)

    @classmethod
    def _raw(cls, terms: dict[int, Fraction], level: int) -> "CycloScalar":
        # internal fast path: terms already reduced, only drop zeros
        obj = object.__new__(cls)
        obj.level = level
        obj.terms = {a: c for a, c in terms.items() if c}
        return obj

    @classmethod
    def rational(cls, value: Rational, level: int = 1) -> "CycloScalar":
        return cls._raw({0: Fraction(value)}, level)

    @classmethod
    def zeta(cls, level: int, power: int = 1) -> "CycloScalar":
        """The root of unity zeta_level**power."""
        return cls({power: Fraction(1)}, level)

    # -- structure ---------------------------------------------------------

    def promote(self, level: int) -> "CycloScalar":
        """Embed into Q(zeta_level); level must be a multiple of self.level."""
        if level == self.level:
            return self
        if level % self.level:
            raise ValueError(f"cannot embed level {self.level} into level {level}")
        k = level // self.level
        return CycloScalar({a * k: c for a, c in self.terms.items()}, level)

    def is_rational(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    def as_fraction(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {0}:
            return self.terms[0]
        raise ValueError(f"{self!r} is not rational")

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        level = lcm(self.level, other.level)
        a, b = self.promote(level), other.promote(level)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return CycloScalar._raw(terms, level)

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar._raw({a: -c for a, c in self.terms.items()}, self.level)

    def __sub__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycloScalar._raw({a: c * f for a, c in self.terms.items()}, self.level)
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        level = lcm(self.level, other.level)
        a, b = self.promote(level), other.promote(level)
        out: dict[int, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = (e1 + e2) % level
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return CycloScalar(out, level)

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if not self.terms:
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.level)]
        deg = len(phi) - 1
        f = _frac_poly_trim([self.terms.get(i, Fraction(0)) for i in range(deg)])
        # extended Euclid keeping only the f-cofactor: r = s*f (mod phi)
        r0, s0 = phi, [Fraction(0)]
        r1, s1 = f, [Fraction(1)]
        while len(r1) > 1:
            q, r = _frac_poly_divmod(r0, r1)
            qs1 = [Fraction(0)] * (len(q) + len(s1) - 1)
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        qs1[i + j] += qi * sj
            new_s = [Fraction(0)] * max(len(s0), len(qs1))
            for i, c in enumerate(s0):
                new_s[i] += c
            for i, c in enumerate(qs1):
                new_s[i] -= c
            r0, s0, r1, s1 = r1, s1, r, _frac_poly_trim(new_s)
        if not r1[0]:
            raise ArithmeticError("noninvertible element of a field")
        c = r1[0]
        return CycloScalar({i: x / c for i, x in enumerate(s1)}, self.level)

    def __truediv__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "CycloScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = CycloScalar.rational(1, self.level)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison, display, numerics --------------------------------------

    def __eq__(self, other) -> bool:
        other = as_scalar(other)
        if other is None:
            return NotImplemented
        level = lcm(self.level, other.level)
        return self.promote(level).terms == other.promote(level).terms

    def evaluate(self) -> complex:
        """Numeric value with zeta_L mapped to exp(2*pi*i/L)."""
        total = 0j
        for a, c in self.terms.items():
            total += float(c) * cmath.exp(_TWO_PI * 1j * a / self.level)
        return total

    def __repr__(self) -> str:
        return f"CycloScalar({self!s}, level={self.level})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms):
            c = self.terms[a]
            if a == 0:
                parts.append(str(c))
            elif a == 1:
                parts.append(f"{c}*z{self.level}")
            else:
                parts.append(f"{c}*z{self.level}^{a}")
        return " + ".join(parts)


def as_scalar(value) -> CycloScalar | None:
    """Coerce to CycloScalar; returns None for foreign types."""
    if isinstance(value, CycloScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return CycloScalar.rational(value)
    if isinstance(value, RootOfUnity):
        return value.as_cyclo()
    return None


# ---------------------------------------------------------------------------
# roots of unity and evaluation points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootOfUnity:
    """The exact root of unity exp(2*pi*i*numerator/order), kept in lowest terms.

    Equality is equality of value: RootOfUnity(1, 2) == RootOfUnity(2, 4).
    """

    numerator: int
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be a positive integer")
        j = self.numerator % self.order
        g = math.gcd(j, self.order)
        object.__setattr__(self, "numerator", j // g)
        object.__setattr__(self, "order", self.order // g)

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(0, 1)

    @classmethod
    def minus_one(cls) -> "RootOfUnity":
        return cls(1, 2)

    @classmethod
    def from_string(cls, text: str) -> "RootOfUnity":
        """Parse 'j/M' (e.g. '1/2' for -1); a bare integer j means exponent j/1."""
        if "/" in text:
            num, _, den = text.partition("/")
            return cls(int(num), int(den))
        return cls(int(text), 1)

    @property
    def is_one(self) -> bool:
        return self.numerator == 0

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = lcm(self.order, other.order)
        return RootOfUnity(self.numerator * (m // self.order)
                           + other.numerator * (m // other.order), m)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.numerator, self.order)

    def __pow__(self, n: int) -> "RootOfUnity":
        return RootOfUnity(self.numerator * n, self.order)

    def exponent(self) -> Fraction:
        """The fraction j/M with value exp(2*pi*i*j/M)."""
        return Fraction(self.numerator, self.order)

    def as_cyclo(self, level: int | None = None) -> CycloScalar:
        level = level or self.order
        if level % self.order:
            raise ValueError("level must be a multiple of the order")
        return CycloScalar.zeta(level, self.numerator * (level // self.order))

    def evaluate(self) -> complex:
        return cmath.exp(_TWO_PI * 1j * self.numerator / self.order)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.order}"


@dataclass(frozen=True)
class EvalPoint:
    """A point tau in the open upper half plane."""

    tau: complex

    def __post_init__(self):
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        if not tau.imag > 0:
            raise OutsideUpperHalfPlane(f"Im(tau) must be positive, got {tau}")

    def q(self) -> complex:
        """The nome exp(2*pi*i*tau)."""
        return cmath.exp(_TWO_PI * 1j * self.tau)


@dataclass(frozen=True)
class SeriesValue:
    """Numeric value of a truncated series plus a crude truncation-tail bound."""

    value: complex
    tail_bound: float


# ---------------------------------------------------------------------------
# the series type
# ---------------------------------------------------------------------------

class QSeries:
    """Truncated series sum_k c_k * q**(offset + k*step), exact coefficients.

    `offset` is the lowest represented exponent (entries below it are zero by
    construction, possibly negative, e.g. -l/48); `step` is 1/D for a
    positive integer D.  Equality compares coefficients on the merged
    lattice up to the common truncation.
    """

    __slots__ = ("offset", "step", "coeffs", "level")

    def __init__(self, coeffs: Iterable, offset: Rational = 0,
                 step: Rational = 1, level: int | None = None):
        step = Fraction(step)
        if step <= 0 or step.numerator != 1:
            raise ValueError("step must be 1/D for a positive integer D")
        scalars = []
        for c in coeffs:
            s = as_scalar(c)
            if s is None:
                raise TypeError(f"cannot use {c!r} as a series coefficient")
            scalars.append(s)
        if not scalars:
            raise ValueError("a series needs at least one coefficient slot")
        if level is None:
            level = 1
            for s in scalars:
                level = lcm(level, s.level)
        self.offset = Fraction(offset)
        self.step = step
        self.level = level
        self.coeffs = tuple(s.promote(level) for s in scalars)

    # -- constructors --------------------------------------------------------

    @classmethod
    def constant(cls, value, span: int = 0, step: Rational = 1) -> "QSeries":
        """The constant series, known out to relative exponent `span`."""
        step = Fraction(step)
        n = int(Fraction(span) / step)
        zero = CycloScalar.rational(0)
        return cls([as_scalar(value)] + [zero] * n, 0, step)

    @classmethod
    def monomial(cls, exponent: Rational, value=1, span: Rational = 0) -> "QSeries":
        step = Fraction(1, Fraction(span).denominator) if Fraction(span) else Fraction(1)
        n = int(Fraction(span) / step)
        zero = CycloScalar.rational(0)
        return cls([as_scalar(value)] + [zero] * n, exponent, step)

    @classmethod
    def zero(cls, offset: Rational = 0, step: Rational = 1, span: Rational = 0) -> "QSeries":
        step = Fraction(step)
        n = int(Fraction(span) / step)
        return cls([CycloScalar.rational(0)] * (n + 1), offset, step)

    # -- basic structure -----------------------------------------------------

    @property
    def truncation(self) -> int:
        """Index of the last stored lattice slot."""
        return len(self.coeffs) - 1

    @property
    def span(self) -> Fraction:
        """Relative exponent range covered beyond the offset."""
        return self.truncation * self.step

    @property
    def top_exponent(self) -> Fraction:
        return self.offset + self.span

    @property
    def step_denominator(self) -> int:
        return self.step.denominator

    def exponents(self) -> Iterator[Fraction]:
        for k in range(len(self.coeffs)):
            yield self.offset + k * self.step

    def coefficient(self, exponent: Rational) -> CycloScalar:
        """Coefficient at an exponent within the known range (zero off-lattice)."""
        e = Fraction(exponent)
        if e > self.top_exponent:
            raise ValueError(f"exponent {e} is beyond the stored truncation")
        rel = e - self.offset
        if rel < 0 or rel % self.step:
            return CycloScalar.rational(0, self.level)
        return self.coeffs[int(rel / self.step)]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # -- lattice bookkeeping ---------------------------------------------------

    def _resample(self, offset: Fraction, step: Fraction, n: int) -> list[CycloScalar]:
        """Coefficients on the lattice offset + k*step, k = 0..n (within range)."""
        zero = CycloScalar.rational(0, self.level)
        out = []
        for k in range(n + 1):
            rel = offset + k * step - self.offset
            if rel < 0 or rel % self.step:
                out.append(zero)
            else:
                out.append(self.coeffs[int(rel / self.step)])
        return out

    @staticmethod
    def _merged_lattice(a: "QSeries", b: "QSeries"):
        denom = lcm(a.step.denominator, b.step.denominator,
                    (a.offset - b.offset).denominator)
        step = Fraction(1, denom)
        offset = min(a.offset, b.offset)
        top = min(a.top_exponent, b.top_exponent)
        n = int((top - offset) / step)
        return offset, step, n

    def refined(self, factor: int) -> "QSeries":
        """The same series on a lattice `factor` times finer."""
        if factor < 1:
            raise ValueError("refinement factor must be >= 1")
        step = self.step / factor
        n = int(self.span / step)
        return QSeries(self._resample(self.offset, step, n), self.offset, step)

    def truncated(self, span: Rational) -> "QSeries":
        """Restrict the known range to relative exponent <= span."""
        span = Fraction(span)
        if span > self.span:
            raise ValueError("cannot extend a series by truncation")
        n = int(span / self.step)
        return QSeries(self.coeffs[: n + 1], self.offset, self.step)

    def shifted(self, delta: Rational) -> "QSeries":
        """Multiply by q**delta (shift every exponent)."""
        return QSeries(self.coeffs, self.offset + Fraction(delta), self.step)

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycloScalar, RootOfUnity)):
            other = self._constant_like(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        offset, step, n = self._merged_lattice(self, other)
        xs = self._resample(offset, step, n)
        ys = other._resample(offset, step, n)
        return QSeries([x + y for x, y in zip(xs, ys)], offset, step)

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs], self.offset, self.step)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycloScalar, RootOfUnity)):
            other = self._constant_like(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _constant_like(self, value) -> "QSeries":
        # a constant known at least as far out as self
        span = max(Fraction(0), self.top_exponent)
        n = math.ceil(span)
        zero = CycloScalar.rational(0)
        return QSeries([as_scalar(value)] + [zero] * n, 0, 1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloScalar, RootOfUnity)):
            s = as_scalar(other)
            return QSeries([c * s for c in self.coeffs], self.offset, self.step)
        if not isinstance(other, QSeries):
            return NotImplemented
        denom = lcm(self.step.denominator, other.step.denominator)
        step = Fraction(1, denom)
        offset = self.offset + other.offset
        n = int(min(self.span, other.span) / step)
        stride_a = denom // self.step.denominator
        stride_b = denom // other.step.denominator
        level = lcm(self.level, other.level)
        zero = CycloScalar.rational(0, level)
        out = [zero] * (n + 1)
        for ka, ca in enumerate(self.coeffs):
            base = ka * stride_a
            if base > n:
                break
            if not ca:
                continue
            for kb, cb in enumerate(other.coeffs):
                idx = base + kb * stride_b
                if idx > n:
                    break
                if cb:
                    out[idx] = out[idx] + ca * cb
        return QSeries(out, offset, step, level=level)

    __rmul__ = __mul__

    def invert(self) -> "QSeries":
        """Two-sided inverse up to truncation; needs a nonzero leading coefficient."""
        lead = self.coeffs[0]
        if not lead:
            raise NotInvertible("leading coefficient is zero")
        inv0 = lead.inverse()
        out = [inv0]
        for n in range(1, len(self.coeffs)):
            acc = None
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    term = self.coeffs[k] * out[n - k]
                    acc = term if acc is None else acc + term
            if acc is None:
                out.append(CycloScalar.rational(0, self.level))
            else:
                out.append(-(inv0 * acc))
        return QSeries(out, -self.offset, self.step)

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return self.invert() ** (-n)
        out = QSeries([CycloScalar.rational(1)] + [CycloScalar.rational(0)] * self.truncation,
                      0, self.step)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        offset, step, n = self._merged_lattice(self, other)
        return self._resample(offset, step, n) == other._resample(offset, step, n)

    # -- numerics ---------------------------------------------------------------

    def evaluate(self, point: EvalPoint) -> SeriesValue:
        """Value at q = exp(2*pi*i*tau) plus a crude bound on the dropped tail.

        The bound is C * |q|**(next exponent) / (1 - |q|**step) with C the
        largest coefficient magnitude over the last quarter of stored terms.
        """
        tau = point.tau
        qstep = cmath.exp(_TWO_PI * 1j * tau * float(self.step))
        qpow = cmath.exp(_TWO_PI * 1j * tau * float(self.offset))
        total = 0j
        for c in self.coeffs:
            if c:
                total += c.evaluate() * qpow
            qpow *= qstep
        window = self.coeffs[-max(1, len(self.coeffs) // 4):]
        big = max((abs(c.evaluate()) for c in window if c), default=0.0)
        qabs_step = math.exp(-_TWO_PI * tau.imag * float(self.step))
        next_exp = float(self.offset + (self.truncation + 1) * self.step)
        tail = big * math.exp(-_TWO_PI * tau.imag * next_exp) / (1.0 - qabs_step)
        return SeriesValue(total, tail)

    # -- canonical JSON form ------------------------------------------------------

    def to_json_dict(self) -> dict:
        coeffs = []
        for c in self.coeffs:
            coeffs.append([[[str(v.numerator), str(v.denominator)], a]
                           for a, v in sorted(c.terms.items())])
        return {
            "offset": str(self.offset),
            "step_denominator": self.step.denominator,
            "level": self.level,
            "coefficients": coeffs,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "QSeries":
        level = int(data["level"])
        coeffs = []
        for entry in data["coefficients"]:
            terms = {int(a): Fraction(int(num), int(den)) for (num, den), a in entry}
            coeffs.append(CycloScalar(terms, level))
        return cls(coeffs, Fraction(data["offset"]),
                   Fraction(1, int(data["step_denominator"])), level=level)

    # -- display -------------------------------------------------------------------

    def __repr__(self) -> str:
        return (f"QSeries(offset={self.offset}, step={self.step}, "
                f"n={self.truncation}, level={self.level})")

    def __str__(self) -> str:
        parts = []
        for e, c in zip(self.exponents(), self.coeffs):
            if not c:
                continue
            coeff = str(c) if c.is_rational() else f"({c})"
            if e == 0:
                parts.append(coeff)
            else:
                parts.append(f"{coeff}*q^({e})")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^({self.offset + (self.truncation + 1) * self.step}))"


# ---------------------------------------------------------------------------
# products of binomials
# ---------------------------------------------------------------------------

def product_expand(factors: Iterable[tuple], order: Rational) -> QSeries:
    """Expand prod_i (1 + scale_i * q**exponent_i) up to total exponent `order`.

    Exponents must be strictly positive; factors beyond the order are
    dropped since they cannot touch the stored range.
    """
    order = Fraction(order)
    kept: list[tuple[CycloScalar, Fraction]] = []
    denom = order.denominator
    for scale, exponent in factors:
        e = Fraction(exponent)
        if e <= 0:
            raise InvalidFactor(f"factor exponent must be positive, got {e}")
        if e > order:
            continue
        s = as_scalar(scale)
        if s is None:
            raise TypeError(f"cannot use {scale!r} as a factor scale")
        kept.append((s, e))
        denom = lcm(denom, e.denominator)
    step = Fraction(1, denom)
    n = int(order / step)
    one = CycloScalar.rational(1)
    zero = CycloScalar.rational(0)
    arr: list[CycloScalar] = [one] + [zero] * n
    for scale, e in kept:
        de = int(e / step)
        for i in range(n - de, -1, -1):
            if arr[i]:
                arr[i + de] = arr[i + de] + scale * arr[i]
    return QSeries(arr, 0, step)
