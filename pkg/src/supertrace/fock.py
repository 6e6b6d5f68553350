"""Twisted free-fermion modules and their graded trace functions.

A module is described purely by its trace data: families of exterior
(one-use) oscillators on an energy progression, zero modes, a conformal
weight and a central charge.  Each generator carries exact eigenvalue
assignments for the named automorphisms acting on it.  Traces come out as
exact series two ways: a product formula over levels, and a brute-force
enumeration of basis states that serves as its oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping

from .errors import BudgetExceeded, InvalidDimension, UnknownAutomorphism, UnsupportedPair
from .modforms import EtaQuotientSpec
from .series import CycloScalar, QSeries, RootOfUnity, product_expand

AUT_IDENTITY = "identity"
AUT_SIGMA = "sigma"
AUT_G = "g"
AUT_GSIGMA = "gsigma"

_PLUS = RootOfUnity.one()
_MINUS = RootOfUnity.minus_one()

Assignment = Mapping[str, RootOfUnity]


@dataclass(frozen=True)
class OscillatorFamily:
    """Generators replicated on the energy progression start, start+step, ...

    Every generator is fermionic: it enters a basis state at most once, and
    its parity eigenvalue must be minus its identity eigenvalue.
    """

    start: Fraction
    step: Fraction
    generators: tuple[Assignment, ...]

    def __post_init__(self):
        object.__setattr__(self, "start", Fraction(self.start))
        object.__setattr__(self, "step", Fraction(self.step))
        if self.start <= 0:
            raise ValueError("family energies must be positive")
        if self.step <= 0:
            raise ValueError("energy step must be positive")
        for gen in self.generators:
            _check_parity(gen)

    def levels(self, top: Fraction):
        e = self.start
        while e <= top:
            yield e
            e += self.step


def _check_parity(gen: Assignment) -> None:
    if AUT_IDENTITY in gen and AUT_SIGMA in gen:
        if gen[AUT_SIGMA] != gen[AUT_IDENTITY] * _MINUS:
            raise ValueError("parity eigenvalue must negate the identity eigenvalue")


@dataclass(frozen=True)
class FockModule:
    """Trace data of a twisted fermionic module."""

    name: str
    families: tuple[OscillatorFamily, ...]
    zero_modes: tuple[Assignment, ...]
    conformal_weight: Fraction
    central_charge: Fraction

    def __post_init__(self):
        object.__setattr__(self, "conformal_weight", Fraction(self.conformal_weight))
        object.__setattr__(self, "central_charge", Fraction(self.central_charge))
        for zm in self.zero_modes:
            _check_parity(zm)

    @property
    def trace_offset(self) -> Fraction:
        return self.conformal_weight - self.central_charge / 24


def _require_even(l: int, minimum: int) -> None:
    if l % 2 or l < minimum:
        raise InvalidDimension(f"fermion count must be even and >= {minimum}, got {l}")


def build_ns(l: int) -> FockModule:
    """The untwisted module of l free fermions on half-integer energies.

    Central charge l/2, conformal weight 0, l generators at each energy
    n + 1/2.  For l >= 4 the generators also carry eigenvalues for the
    order-2 isometry that pairs two fermion directions: two directions are
    fixed, the other l - 2 are negated.
    """
    _require_even(l, 2)
    base = {AUT_IDENTITY: _PLUS, AUT_SIGMA: _MINUS}
    gens: list[Assignment] = []
    if l >= 4:
        paired = dict(base, **{AUT_G: _PLUS, AUT_GSIGMA: _MINUS})
        rest = dict(base, **{AUT_G: _MINUS, AUT_GSIGMA: _PLUS})
        gens = [paired] * 2 + [rest] * (l - 2)
    else:
        gens = [base] * l
    family = OscillatorFamily(Fraction(1, 2), Fraction(1), tuple(gens))
    return FockModule(f"ns({l})", (family,), (), Fraction(0), Fraction(l, 2))


def build_sigma_twisted(l: int) -> FockModule:
    """The parity-twisted module: integer energies plus l/2 zero modes.

    Conformal weight l/16, central charge l/2.  The zero modes model the
    2**(l/2)-dimensional Clifford vacuum through their trace data only:
    each carries parity eigenvalue -1, which reproduces the 2**(l/2)
    graded dimension and kills the parity-weighted trace.
    """
    _require_even(l, 2)
    base = {AUT_IDENTITY: _PLUS, AUT_SIGMA: _MINUS}
    family = OscillatorFamily(Fraction(1), Fraction(1), tuple([base] * l))
    zero_modes = tuple([base] * (l // 2))
    return FockModule(f"twisted({l})", (family,), zero_modes,
                      Fraction(l, 16), Fraction(l, 2))


def build_g_sigma_twisted(l: int) -> FockModule:
    """The module twisted by the isometry composed with parity (l >= 4).

    Two integer-energy towers from the antisymmetric fermion combinations
    (one of them with an extra zero mode), and l - 2 half-integer towers
    from the negated directions.  Conformal weight 1/8, central charge l/2.
    """
    _require_even(l, 4)
    fixed = {AUT_IDENTITY: _PLUS, AUT_SIGMA: _MINUS, AUT_G: _PLUS, AUT_GSIGMA: _MINUS}
    negated = {AUT_IDENTITY: _PLUS, AUT_SIGMA: _MINUS, AUT_G: _MINUS, AUT_GSIGMA: _PLUS}
    tower_a = OscillatorFamily(Fraction(1), Fraction(1), (fixed,))
    tower_b = OscillatorFamily(Fraction(1), Fraction(1), (fixed,))
    tower_c = OscillatorFamily(Fraction(1, 2), Fraction(1), tuple([negated] * (l - 2)))
    return FockModule(f"g-twisted({l})", (tower_a, tower_b, tower_c), (fixed,),
                      Fraction(1, 8), Fraction(l, 2))


def _eigenvalue(gen: Assignment, aut: str, module: FockModule) -> RootOfUnity:
    try:
        return gen[aut]
    except KeyError:
        raise UnknownAutomorphism(
            f"module {module.name} has a generator without an eigenvalue for {aut!r}") from None


def graded_trace_product(module: FockModule, aut: str, order: int) -> QSeries:
    """Graded trace of the automorphism action, by the level product formula.

    q**(h - c/24) times (1 + eigenvalue) over zero modes times
    (1 + eigenvalue * q**energy) over all oscillators with energy <= order,
    truncated at relative exponent `order`.
    """
    constant = CycloScalar.rational(1)
    for zm in module.zero_modes:
        constant = constant * (1 + _eigenvalue(zm, aut, module).as_cyclo())
    factors = []
    for family in module.families:
        eigs = [_eigenvalue(gen, aut, module) for gen in family.generators]
        for energy in family.levels(Fraction(order)):
            for eig in eigs:
                factors.append((eig, energy))
    series = product_expand(factors, order) * constant
    return series.shifted(module.trace_offset)


DEFAULT_STATE_BUDGET = 10_000_000


def graded_trace_enumerate(module: FockModule, aut: str, cutoff,
                           budget: int = DEFAULT_STATE_BUDGET) -> QSeries:
    """Graded trace by brute-force enumeration of exterior basis states.

    Walks every subset of the generators (zero modes included) with total
    energy <= cutoff; each state contributes the product of its generators'
    eigenvalues at its total energy.  Independent oracle for the product
    formula.  Raises BudgetExceeded past `budget` visited states.
    """
    cutoff = Fraction(cutoff)
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    gens: list[tuple[Fraction, CycloScalar]] = []
    for zm in module.zero_modes:
        gens.append((Fraction(0), _eigenvalue(zm, aut, module).as_cyclo()))
    for family in module.families:
        eigs = [_eigenvalue(gen, aut, module).as_cyclo() for gen in family.generators]
        for energy in family.levels(cutoff):
            for eig in eigs:
                gens.append((energy, eig))
    gens.sort(key=lambda item: item[0])

    denom = cutoff.denominator
    for energy, _ in gens:
        denom = lcm(denom, energy.denominator)
    step = Fraction(1, denom)
    slots = int(cutoff / step)
    zero = CycloScalar.rational(0)
    acc = [zero] * (slots + 1)
    states = 0

    def walk(start: int, energy: Fraction, weight: CycloScalar) -> None:
        nonlocal states
        states += 1
        if states > budget:
            raise BudgetExceeded(f"enumeration exceeded {budget} states")
        idx = int(energy / step)
        acc[idx] = acc[idx] + weight
        for pos in range(start, len(gens)):
            e, eig = gens[pos]
            if energy + e > cutoff:
                break
            walk(pos + 1, energy + e, weight * eig)

    walk(0, Fraction(0), CycloScalar.rational(1))
    return QSeries(acc, 0, step).shifted(module.trace_offset)


# the seven concretely realized twist pairs: (module twist, trace twist)
# mapped to the module builder and the operator inserted in the trace
_PAIR_DISPATCH = {
    ("1", "1"): (build_sigma_twisted, AUT_SIGMA),
    ("1", "sigma"): (build_sigma_twisted, AUT_IDENTITY),
    ("sigma", "1"): (build_ns, AUT_SIGMA),
    ("sigma", "sigma"): (build_ns, AUT_IDENTITY),
    ("sigma", "g"): (build_ns, AUT_GSIGMA),
    ("g", "sigma"): (build_g_sigma_twisted, AUT_IDENTITY),
    ("g", "gsigma"): (build_g_sigma_twisted, AUT_G),
}


def _normalize_pair(x: str, y: str) -> tuple[str, str]:
    alias = {"1": "1", "identity": "1", "sigma": "sigma",
             "g": "g", "gsigma": "gsigma"}
    try:
        return alias[str(x)], alias[str(y)]
    except KeyError:
        raise UnsupportedPair(f"unknown twist label in ({x}, {y})") from None


def _involves_isometry(pair: tuple[str, str]) -> bool:
    return pair[0] == "g" or pair[1] in ("g", "gsigma")


def module_and_operator(x: str, y: str, l: int) -> tuple[FockModule, str]:
    """Resolve a twist pair to its module and the automorphism traced over it."""
    pair = _normalize_pair(x, y)
    if pair not in _PAIR_DISPATCH:
        raise UnsupportedPair(f"pair {pair} is not one of the seven realized cases")
    if _involves_isometry(pair):
        _require_even(l, 4)
    builder, aut = _PAIR_DISPATCH[pair]
    return builder(l), aut


def trace_gh(x: str, y: str, l: int, order: int) -> QSeries:
    """Graded trace for the pair (x, y): the parity-composed-x twisted module
    traced against the parity-composed-y operator, as an exact series."""
    module, aut = module_and_operator(x, y, l)
    return graded_trace_product(module, aut, order)


def reference_eta_quotient(x: str, y: str, l: int) -> EtaQuotientSpec:
    """The closed eta-quotient form of the (x, y) trace for l fermions."""
    pair = _normalize_pair(x, y)
    if pair not in _PAIR_DISPATCH:
        raise UnsupportedPair(f"pair {pair} is not one of the seven realized cases")
    _require_even(l, 4 if _involves_isometry(pair) else 2)
    half = Fraction(1, 2)
    one = Fraction(1)
    two = Fraction(2)
    if pair == ("1", "1"):
        return EtaQuotientSpec((), CycloScalar.rational(0))
    if pair == ("1", "sigma"):
        return EtaQuotientSpec(((two, l), (one, -l)), CycloScalar.rational(2 ** (l // 2)))
    if pair == ("sigma", "1"):
        return EtaQuotientSpec(((half, l), (one, -l)))
    if pair == ("sigma", "sigma"):
        return EtaQuotientSpec(((one, 2 * l), (half, -l), (two, -l)))
    if pair == ("g", "sigma"):
        return EtaQuotientSpec(((one, 2 * l - 6), (two, -(l - 4)), (half, -(l - 2))),
                               CycloScalar.rational(2))
    if pair == ("sigma", "g"):
        return EtaQuotientSpec(((one, 2 * l - 6), (half, -(l - 4)), (two, -(l - 2))))
    # ("g", "gsigma")
    return EtaQuotientSpec(((two, 2), (half, l - 2), (one, -l)),
                           CycloScalar.rational(2))
