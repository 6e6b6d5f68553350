"""Named verification suites surfaced through the command line.

Each suite bundles a family of identity or transformation-law checks and
reports one item per check.  Suites are deterministic; wall-clock duration
is measured for the text summary but kept out of the JSON form.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from . import bracket, fock, modforms, sl2
from .series import EvalPoint, RootOfUnity
from .sl2 import S, T, VerificationReport


@dataclass(frozen=True)
class SuiteItem:
    label: str
    passed: bool
    mode: str = "exact"
    report: VerificationReport | None = None

    def to_json_dict(self) -> dict:
        data = {"label": self.label, "pass": self.passed, "mode": self.mode}
        if self.report is not None:
            data["report"] = self.report.to_json_dict()
        return data


@dataclass
class SuiteResult:
    name: str
    items: list[SuiteItem] = field(default_factory=list)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def to_json_dict(self) -> dict:
        return {"suite": self.name, "pass": self.passed,
                "items": [item.to_json_dict() for item in self.items]}

    def format_table(self) -> str:
        lines = [f"suite {self.name}"]
        for item in self.items:
            status = "pass" if item.passed else "FAIL"
            extra = ""
            if item.report is not None and item.report.residual is not None:
                extra = f"  residual={item.report.residual:.3e}"
            lines.append(f"  [{status}] {item.label}{extra}")
        overall = "pass" if self.passed else "FAIL"
        lines.append(f"  => {overall} ({len(self.items)} checks, {self.duration:.2f}s)")
        return "\n".join(lines)


def _exact(label: str, ok: bool) -> SuiteItem:
    return SuiteItem(label=label, passed=ok, mode="exact")


def _from_report(report: VerificationReport) -> SuiteItem:
    return SuiteItem(label=report.label, passed=report.passed,
                     mode=report.mode, report=report)


_SIGMA_PAIRS = (("1", "1"), ("1", "sigma"), ("sigma", "1"), ("sigma", "sigma"))
_G_PAIRS = (("g", "sigma"), ("sigma", "g"), ("g", "gsigma"))


def _eta_match_items(pairs, dims, order=10):
    items = []
    for l in dims:
        for x, y in pairs:
            trace = fock.trace_gh(x, y, l, order)
            reference = modforms.eta_quotient(fock.reference_eta_quotient(x, y, l), order)
            items.append(_exact(f"trace({x},{y},l={l}) == eta-quotient", trace == reference))
    return items


def suite_sigma_examples() -> list[SuiteItem]:
    items = _eta_match_items(_SIGMA_PAIRS, (2, 4, 8))
    trace = fock.trace_gh("1", "1", 2, 10)
    items.append(_exact("trace(1,1) vanishes identically", trace.is_zero()))
    return items


def suite_g_examples() -> list[SuiteItem]:
    return _eta_match_items(_G_PAIRS, (4, 8))


def suite_enumeration_oracle() -> list[SuiteItem]:
    items = []
    cases = [(x, y, l) for l in (2, 4) for x, y in _SIGMA_PAIRS] + \
            [(x, y, l) for l in (4,) for x, y in _G_PAIRS]
    weight = 5
    for x, y, l in cases:
        module, aut = fock.module_and_operator(x, y, l)
        prod = fock.graded_trace_product(module, aut, weight)
        enum = fock.graded_trace_enumerate(module, aut, weight)
        items.append(_exact(f"enumeration == product for ({x},{y},l={l})", prod == enum))
    return items


_Q_TRANSFORM_PAIRS = (
    (RootOfUnity.one(), RootOfUnity.minus_one()),
    (RootOfUnity.minus_one(), RootOfUnity.one()),
    (RootOfUnity.minus_one(), RootOfUnity.minus_one()),
)


def suite_q_transform(order: int = 300, tol: float = 1e-8) -> list[SuiteItem]:
    items = []
    gammas = (("S", S), ("T", T), ("TS", T @ S))
    taus = (2j, 1 + 2j)
    cache: dict = {}

    def series_for(k, mu, lam):
        key = (k, mu, lam)
        if key not in cache:
            cache[key] = modforms.q_series_Q(k, mu, lam, order)
        return cache[key]

    for k in (2, 4, 6):
        for mu, lam in _Q_TRANSFORM_PAIRS:
            lhs = series_for(k, mu, lam)
            for name, gamma in gammas:
                mu2, lam2 = sl2.act_pair(mu, lam, gamma)
                rhs = series_for(k, mu2, lam2)
                worst = 0.0
                for tau in taus:
                    image = gamma.mobius_tau(tau)
                    lv = lhs.evaluate(EvalPoint(image)).value
                    rv = rhs.evaluate(EvalPoint(tau)).value
                    worst = max(worst, abs(lv - gamma.automorphy(tau) ** k * rv))
                report = VerificationReport(
                    label=f"Q[k={k},mu={mu},lambda={lam}] under {name}",
                    mode="numeric", passed=worst < tol, residual=worst,
                    samples=taus)
                items.append(_from_report(report))
    return items


def suite_p_transform(cutoff: int = 80, tol: float = 1e-6) -> list[SuiteItem]:
    items = []
    mu, lam = RootOfUnity.one(), RootOfUnity.minus_one()
    tau = 2j
    # z chosen so both sides sit inside their convergence regions
    cases = (("S", S, -0.3 + 0.9j), ("T", T, 0.1 + 0.9j))
    for k in (1, 2):
        for name, gamma, z in cases:
            image_tau = gamma.mobius_tau(tau)
            factor = gamma.automorphy(tau)
            lhs = modforms.p_eval(k, mu, lam, z / factor, EvalPoint(image_tau), cutoff)
            mu2, lam2 = sl2.act_pair(mu, lam, gamma)
            rhs = modforms.p_eval(k, mu2, lam2, z, EvalPoint(tau), cutoff)
            residual = abs(lhs - factor ** k * rhs)
            report = VerificationReport(
                label=f"P[k={k},mu={mu},lambda={lam}] under {name} at z={z}",
                mode="numeric", passed=residual < tol, residual=residual,
                samples=(tau,))
            items.append(_from_report(report))
    return items


def suite_prop_2_3(order: int = 8) -> list[SuiteItem]:
    window = order + 4
    items = []
    for k in range(0, 5):
        for m in range(-2, 3):
            for mu, lam in _Q_TRANSFORM_PAIRS:
                report = modforms.check_prop_2_3(k, m, mu, lam, window, order)
                items.append(_from_report(report))
    return items


def suite_bracket() -> list[SuiteItem]:
    items = []
    imax = 12
    ok = True
    for p in range(-2, 11):
        table = bracket.c_table(p, imax)
        for m in range(imax + 1):
            oracle = bracket.log_pow_series(m, p, imax)
            for i in range(imax + 1):
                if factorial(m) * table.get(i, m) != oracle.coefficient(i).as_fraction():
                    ok = False
    items.append(_exact("coefficient table matches the log-power oracle", ok))
    ok = all(bracket.vbracket_coeffs(wt, 0, 8) ==
             [bracket.c_table(wt, 8).get(i, 0) for i in range(9)]
             for wt in range(-1, 5))
    items.append(_exact("mode change of variable at m = 0 is the binomial row", ok))
    expected = [Fraction(1, 2), Fraction(-1, 6), Fraction(1, 12)]
    items.append(_exact("grading-operator coefficients 1/2, -1/6, 1/12",
                        bracket.l0_bracket_coeffs(3) == expected))
    return items


def suite_eisenstein() -> list[SuiteItem]:
    items = []
    point = EvalPoint(1j)
    two_pi_i = 2j * math.pi
    for k in (4, 6, 8):
        series = modforms.eisenstein_E(k, 40)
        lattice = modforms.eisenstein_G_lattice(k, point, 200)
        residual = abs(lattice - two_pi_i ** k * series.evaluate(point).value)
        report = VerificationReport(label=f"lattice sum vs q-expansion, k={k}",
                                    mode="numeric", passed=residual < 1e-4,
                                    residual=residual, samples=(point.tau,))
        items.append(_from_report(report))
    ok = True
    for r in range(13):
        poly = modforms.bernoulli_polynomial(r)
        diff = poly.taylor_shift(1) - poly
        expect = modforms.RationalPolynomial(
            tuple([Fraction(0)] * max(0, r - 1) + [Fraction(r)]) if r else (Fraction(0),))
        if diff != expect:
            ok = False
    items.append(_exact("forward difference of Bernoulli polynomials", ok))
    return items


def suite_eta(tol: float = 1e-10) -> list[SuiteItem]:
    return [_from_report(modforms.check_eta_laws(EvalPoint(tau), tol=tol))
            for tau in (2j, 3j)]


_SUITES: dict[str, Callable[[], list[SuiteItem]]] = {
    "sigma-examples": suite_sigma_examples,
    "g-examples": suite_g_examples,
    "bracket": suite_bracket,
    "eisenstein": suite_eisenstein,
    "eta": suite_eta,
    "Q-transform": suite_q_transform,
    "P-transform": suite_p_transform,
    "prop-2-3": suite_prop_2_3,
    "enumeration-oracle": suite_enumeration_oracle,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(name: str) -> SuiteResult:
    """Run one named suite; raises KeyError for an unknown name."""
    builder = _SUITES[name]
    start = time.perf_counter()
    items = builder()
    return SuiteResult(name=name, items=items,
                       duration=time.perf_counter() - start)
