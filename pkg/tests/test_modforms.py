"""Tests for Bernoulli polynomials, Eisenstein series, the twisted family,
the windowed kernel with its residue identity, and the eta function."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import mpmath as mp
import pytest

from supertrace import (
    EtaQuotientSpec,
    EvalPoint,
    InvalidFactor,
    InvalidWeight,
    NotAbsolutelyConvergent,
    OutsideConvergenceRegion,
    QSeries,
    RationalPolynomial,
    RootOfUnity,
    UndefinedAtTrivialPair,
    WindowTooSmall,
    bernoulli_number,
    bernoulli_polynomial,
    check_eta_laws,
    check_prop_2_3,
    eisenstein_E,
    eisenstein_G_lattice,
    eta_quotient,
    eta_series,
    p_eval,
    pbar_window,
    q_series_Q,
)
from supertrace.sl2 import S, T, act_pair

ONE = RootOfUnity.one()
MINUS = RootOfUnity.minus_one()

PAIRS = [(ONE, MINUS), (MINUS, ONE), (MINUS, MINUS)]


# ---------------------------------------------------------------------------
# Bernoulli polynomials
# ---------------------------------------------------------------------------

def test_bernoulli_polynomial_small_cases():
    assert bernoulli_polynomial(0) == RationalPolynomial((Fraction(1),))
    assert bernoulli_polynomial(1) == RationalPolynomial((Fraction(-1, 2), Fraction(1)))
    assert bernoulli_polynomial(2) == RationalPolynomial(
        (Fraction(1, 6), Fraction(-1), Fraction(1)))
    assert bernoulli_polynomial(3) == RationalPolynomial(
        (Fraction(0), Fraction(1, 2), Fraction(-3, 2), Fraction(1)))


def _series_inverse(a: list[Fraction], order: int) -> list[Fraction]:
    out = [1 / a[0]]
    for n in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += a[k] * out[n - k]
        out.append(-out[0] * acc)
    return out


def _bernoulli_poly_oracle(r: int) -> list[Fraction]:
    # expand t*exp(t*x)/(exp(t)-1) in t by series division; the t**r
    # coefficient is B_r(x)/r!, assembled here as a coefficient list in x
    order = r + 1
    expm1_over_t = [Fraction(1, math.factorial(n + 1)) for n in range(order + 1)]
    a = _series_inverse(expm1_over_t, order)  # t/(e^t - 1)
    coeffs = [Fraction(0)] * (r + 1)
    for m in range(r + 1):  # x**m arrives from exp(t*x) with weight t**m/m!
        coeffs[m] = a[r - m] * Fraction(math.factorial(r), math.factorial(m))
    return coeffs


def _trim(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return coeffs


@pytest.mark.parametrize("r", range(11))
def test_bernoulli_polynomial_matches_generating_function(r):
    assert list(bernoulli_polynomial(r).coefficients) == _trim(_bernoulli_poly_oracle(r))


def test_bernoulli_forward_difference():
    for r in range(13):
        poly = bernoulli_polynomial(r)
        diff = poly.taylor_shift(1) - poly
        if r == 0:
            assert diff == RationalPolynomial((Fraction(0),))
        else:
            expected = RationalPolynomial(
                tuple([Fraction(0)] * (r - 1) + [Fraction(r)]))
            assert diff == expected


def test_bernoulli_numbers():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(4) == Fraction(-1, 30)
    assert bernoulli_number(12) == Fraction(-691, 2730)


# ---------------------------------------------------------------------------
# Eisenstein series
# ---------------------------------------------------------------------------

def _sigma_oracle(n: int, p: int) -> int:
    return sum(d ** p for d in range(1, n + 1) if n % d == 0)


def test_eisenstein_e2_head():
    e2 = eisenstein_E(2, 4)
    assert e2.coefficient(0).as_fraction() == Fraction(-1, 12)
    assert e2.coefficient(1).as_fraction() == 2
    assert e2.coefficient(2).as_fraction() == 6


def test_eisenstein_e4_constant_term():
    assert eisenstein_E(4, 2).coefficient(0).as_fraction() == Fraction(1, 720)


@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_eisenstein_coefficients_against_divisor_sums(k):
    series = eisenstein_E(k, 12)
    for n in range(1, 13):
        expected = Fraction(2 * _sigma_oracle(n, k - 1), math.factorial(k - 1))
        assert series.coefficient(n).as_fraction() == expected


def test_eisenstein_invalid_weights():
    with pytest.raises(InvalidWeight):
        eisenstein_E(3, 5)
    with pytest.raises(InvalidWeight):
        eisenstein_E(0, 5)


def test_lattice_sum_cross_oracle_smoke():
    point = EvalPoint(1j)
    series = eisenstein_E(4, 30)
    lattice = eisenstein_G_lattice(4, point, 60)
    factor = (2j * math.pi) ** 4
    assert abs(lattice - factor * series.evaluate(point).value) < 2e-3


def test_lattice_sum_error_cases():
    point = EvalPoint(1j)
    with pytest.raises(NotAbsolutelyConvergent):
        eisenstein_G_lattice(2, point, 50)
    with pytest.raises(InvalidWeight):
        eisenstein_G_lattice(5, point, 50)
    with pytest.raises(ValueError):
        eisenstein_G_lattice(4, point, 5)


def test_odd_weight_terms_cancel_pairwise():
    # (m1, m2) -> (-m1, -m2) flips the sign of every odd-power term
    tau = 0.3 + 1.1j
    total = 0j
    for m1 in range(-15, 16):
        for m2 in range(-15, 16):
            if (m1, m2) != (0, 0):
                total += 1.0 / (m1 * tau + m2) ** 5
    assert abs(total) < 1e-12


# ---------------------------------------------------------------------------
# the twisted family
# ---------------------------------------------------------------------------

def test_q_weight_zero_is_minus_one():
    for mu, lam in PAIRS + [(ONE, ONE)]:
        series = q_series_Q(0, mu, lam, 4)
        assert series.coefficient(0).as_fraction() == -1
        assert series == QSeries([-1] + [0] * 4)


def test_q_rejects_trivial_pair_at_positive_weight():
    with pytest.raises(UndefinedAtTrivialPair):
        q_series_Q(1, ONE, ONE, 4)
    with pytest.raises(UndefinedAtTrivialPair):
        q_series_Q(2, ONE, ONE, 4)


def test_q2_head_coefficients():
    series = q_series_Q(2, ONE, MINUS, 6)
    head = [series.coefficient(n).as_fraction() for n in range(4)]
    assert head == [Fraction(-1, 12), -2, -2, -8]


def _q_direct(k: int, mu: RootOfUnity, lam: RootOfUnity, tau: complex,
              terms: int = 60) -> complex:
    # float partial sums of the defining double series, no expansion tricks
    def qpow(x: float) -> complex:
        return cmath.exp(2j * math.pi * tau * x)

    lam_c = lam.evaluate()
    base = float(mu.exponent())
    total = 0j
    for n in range(terms):
        x = n + base
        total += lam_c * x ** (k - 1) * qpow(x) / (1 - lam_c * qpow(x))
    for n in range(1, terms):
        x = n - base
        total += (-1) ** k * x ** (k - 1) / lam_c * qpow(x) / (1 - qpow(x) / lam_c)
    total /= math.factorial(k - 1)
    return total - float(bernoulli_polynomial(k)(mu.exponent())) / math.factorial(k)


@pytest.mark.parametrize("mu,lam", PAIRS)
@pytest.mark.parametrize("k", [2, 3, 4])
def test_q_series_matches_direct_summation(k, mu, lam):
    tau = 2j
    series = q_series_Q(k, mu, lam, 40)
    via_series = series.evaluate(EvalPoint(tau)).value
    direct = _q_direct(k, mu, lam, tau)
    assert abs(via_series - direct) < 1e-12


def test_q1_vanishes_identically_on_order_two_pairs():
    # settles the open question: exact cancellation at weight one
    for mu, lam in PAIRS:
        series = q_series_Q(1, mu, lam, 30)
        assert series.is_zero()


def test_q_coefficients_live_in_the_joint_cyclotomic_field():
    mu = RootOfUnity(1, 3)
    lam = RootOfUnity(1, 4)
    series = q_series_Q(2, mu, lam, 6)
    assert series.level == 12
    # exactness: every coefficient is a reduced cyclotomic term map
    assert all(isinstance(v, Fraction) for c in series.coeffs for v in c.terms.values())


def test_q_transform_smoke_weight_four():
    mu, lam = MINUS, MINUS
    series = q_series_Q(4, mu, lam, 120)
    mu2, lam2 = act_pair(mu, lam, S)
    image = q_series_Q(4, mu2, lam2, 120)
    tau = 2j
    lhs = series.evaluate(EvalPoint(S.mobius_tau(tau))).value
    rhs = S.automorphy(tau) ** 4 * image.evaluate(EvalPoint(tau)).value
    assert abs(lhs - rhs) < 1e-8


# ---------------------------------------------------------------------------
# windowed kernel and the residue identity
# ---------------------------------------------------------------------------

def test_pbar_weight_zero_is_zero_object():
    window = pbar_window(0, ONE, MINUS, 6, 6)
    assert window.is_zero()


def test_pbar_z1_entry_is_alternating_geometric():
    window = pbar_window(1, ONE, MINUS, 4, 6)
    entry = window.entry(1)  # 1/(1 + q) = 1 - q + q**2 - ...
    expect = [Fraction((-1) ** s) for s in range(7)]
    assert [entry.coefficient(n).as_fraction() for n in range(7)] == expect


def test_pbar_negative_entry_uses_geometric_rewrite():
    window = pbar_window(1, ONE, MINUS, 4, 6)
    entry = window.entry(-1)  # q - q**2 + q**3 - ... after the rewrite
    values = [entry.coefficient(n).as_fraction() for n in range(5)]
    assert values == [0, 1, -1, 1, -1]


def test_pbar_trivial_pair_omits_zero_entry():
    window = pbar_window(1, ONE, ONE, 4, 6)
    assert Fraction(0) not in window.entries
    assert Fraction(1) in window.entries


def test_pbar_half_lattice_entries():
    window = pbar_window(2, MINUS, ONE, 4, 6)
    assert Fraction(1, 2) in window.entries
    assert Fraction(-1, 2) in window.entries
    assert Fraction(0) not in window.entries
    assert Fraction(1) not in window.entries


def test_residue_identity_weight_zero_forced():
    report = check_prop_2_3(0, 0, ONE, MINUS, 12, 8)
    assert report.passed and report.mode == "exact"


def test_residue_identity_weight_two():
    report = check_prop_2_3(2, 0, ONE, MINUS, 12, 8)
    assert report.passed


def test_residue_identity_rejects_trivial_pair():
    with pytest.raises(UndefinedAtTrivialPair):
        check_prop_2_3(2, 0, ONE, ONE, 12, 8)


def test_residue_identity_window_guard():
    with pytest.raises(WindowTooSmall):
        check_prop_2_3(2, 2, ONE, MINUS, 11, 8)


# ---------------------------------------------------------------------------
# the two-variable evaluator
# ---------------------------------------------------------------------------

def test_p_eval_region_guard():
    with pytest.raises(OutsideConvergenceRegion):
        p_eval(1, ONE, MINUS, 0.1 + 2.5j, EvalPoint(2j), 20)
    with pytest.raises(OutsideConvergenceRegion):
        p_eval(1, ONE, MINUS, 0.1 - 0.2j, EvalPoint(2j), 20)


def _p_direct_mpmath(k, mu, lam, z, tau, cutoff, dps=50):
    # independent summation order: the raw terms at high precision, where the
    # huge intermediate magnitudes at negative indices are harmless
    with mp.workdps(dps):
        lam_v = mp.e ** (2j * mp.pi * mp.mpf(lam.numerator) / lam.order)
        base = mp.mpf(mu.numerator) / mu.order
        total = mp.mpc(0)
        for step in range(-cutoff, cutoff + 1):
            n = base + step
            if n == 0:
                if mu.is_one and lam.is_one:
                    continue
                if k == 1:
                    total += 1 / (1 - lam_v)
                continue
            qz_n = mp.e ** (2j * mp.pi * mp.mpc(z) * n)
            qtau_n = mp.e ** (2j * mp.pi * mp.mpc(tau) * n)
            total += n ** (k - 1) * qz_n / (1 - lam_v * qtau_n)
        return complex(total / mp.factorial(k - 1))


@pytest.mark.parametrize("k", [1, 2])
def test_p_eval_against_independent_summation(k):
    z = 0.1 + 0.9j
    tau = 2j
    ours = p_eval(k, ONE, MINUS, z, EvalPoint(tau), 80)
    oracle = _p_direct_mpmath(k, ONE, MINUS, z, tau, 60)
    assert abs(ours - oracle) < 1e-10


def test_p_transformation_residual_under_inversion():
    k, mu, lam = 2, ONE, MINUS
    tau = 2j
    z = -0.3 + 0.9j  # inside both convergence regions
    lhs = p_eval(k, mu, lam, z / S.automorphy(tau), EvalPoint(S.mobius_tau(tau)), 80)
    mu2, lam2 = act_pair(mu, lam, S)
    rhs = p_eval(k, mu2, lam2, z, EvalPoint(tau), 80)
    assert abs(lhs - S.automorphy(tau) ** k * rhs) < 1e-6


# ---------------------------------------------------------------------------
# eta and eta-quotients
# ---------------------------------------------------------------------------

def test_eta_series_head():
    eta = eta_series(10)
    assert eta.offset == Fraction(1, 24)
    head = [eta.coefficient(Fraction(1, 24) + n).as_fraction() for n in range(6)]
    assert head == [1, -1, -1, 0, 0, 1]


def test_eta_quotient_distinct_parts():
    # eta(2 tau)/eta(tau) = q**(1/24) * prod (1 + q**n)
    from supertrace import product_expand

    spec = EtaQuotientSpec(((Fraction(2), 1), (Fraction(1), -1)))
    quotient = eta_quotient(spec, 10)
    direct = product_expand(((1, n) for n in range(1, 11)), 10).shifted(Fraction(1, 24))
    assert quotient == direct


def test_eta_quotient_identity_spec():
    spec = EtaQuotientSpec(((Fraction(1), 1),))
    assert eta_quotient(spec, 12) == eta_series(12)


def test_eta_quotient_rejects_nonpositive_scale():
    with pytest.raises(InvalidFactor):
        EtaQuotientSpec(((Fraction(0), 1),))
    with pytest.raises(InvalidFactor):
        EtaQuotientSpec(((Fraction(-1, 2), 2),))


def test_eta_quotient_offset_bookkeeping():
    spec = EtaQuotientSpec(((Fraction(1), 16), (Fraction(1, 2), -6), (Fraction(2), -10)))
    assert spec.offset == Fraction(16, 24) - Fraction(6, 48) - Fraction(20, 24)
    assert eta_quotient(spec, 8).offset == spec.offset


def test_eta_laws_inversion_and_translation():
    for tau in (2j, 3j):
        report = check_eta_laws(EvalPoint(tau))
        detail = dict(report.details)
        assert detail["inversion"] < 1e-10
        assert detail["translation-ratio"] < 1e-10


def test_eta_law_at_inversion_fixed_point():
    eta = eta_series(60)
    value = eta.evaluate(EvalPoint(1j)).value
    # tau = i is fixed by the inversion and the multiplier is exactly one
    assert abs(cmath.sqrt(complex(-1j * 1j)) - 1) == 0
    assert abs(value - eta.evaluate(EvalPoint(-1 / 1j)).value) == 0


def test_eta_half_shift_law_fails_by_a_root_of_unity():
    # the phaseless half-shift law misses exp(i*pi/24); both facts are pinned
    for tau in (2j, 3j):
        report = check_eta_laws(EvalPoint(tau))
        detail = dict(report.details)
        assert detail["half-shift"] > 1e-2
        assert detail["half-shift-phase-corrected"] < 1e-12
        assert not report.passed


def test_eta_half_shift_measured_phase_is_exp_i_pi_over_24():
    eta = eta_series(60)

    def ev(t):
        return eta.evaluate(EvalPoint(t)).value

    for tau in (2j, 1 + 2j, 3j):
        ratio = ev((tau + 1) / 2) / (ev(tau) ** 3 / (ev(tau / 2) * ev(2 * tau)))
        assert abs(ratio - cmath.exp(1j * math.pi / 24)) < 1e-12


def test_eta_laws_requires_enough_imaginary_part():
    with pytest.raises(ValueError):
        check_eta_laws(EvalPoint(0.5j))
