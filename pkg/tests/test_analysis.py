"""Tests for functionals, distribution reports, and trend diagnostics."""
import math

import numpy as np
import pytest

from gltkit import (
    LAPLACE_SYMBOL,
    TrigFactor,
    UnboundedSymbolError,
    coefficient_preset,
    default_suite,
    empirical_functional,
    fd_cdr_dirichlet,
    fd_cdr_neumann,
    fd_diffusion,
    get_case,
    hat,
    monomial,
    monotone_rearrangement,
    multiply,
    outlier_count,
    rearrangement_compare,
    symbol_functional,
    sym_eigvals,
    toeplitz,
    weyl_compare,
    zero_distribution_check,
)
from gltkit.builders import ZERO_COEFFICIENT, as_dense

ONE = coefficient_preset("one")
XEXP = coefficient_preset("xexp")
RECT = ((0.0, 1.0), (0.0, math.pi))
WIDE = monomial(1, (-1e9, 1e9))          # effectively unclipped t
WIDE2 = monomial(2, (-1e9, 1e9))


# ---------------------------------------------------------------------------
# functionals
# ---------------------------------------------------------------------------

def test_empirical_mean_is_normalized_trace():
    n = 40
    S = sym_eigvals(toeplitz(LAPLACE_SYMBOL, n))
    assert empirical_functional(S, WIDE) == pytest.approx(2.0, abs=1e-9)


def test_empirical_hat_outside_spectrum_is_zero():
    S = sym_eigvals(toeplitz(LAPLACE_SYMBOL, 12))
    assert empirical_functional(S, hat(100.0, 1.0)) == 0.0


def test_empirical_second_moment_closed_form():
    n = 35
    S = sym_eigvals(toeplitz(LAPLACE_SYMBOL, n))
    assert empirical_functional(S, WIDE2) == pytest.approx((6 * n - 2) / n, rel=1e-10)


def test_symbol_functional_first_and_second_moment():
    kappa = TrigFactor(LAPLACE_SYMBOL)
    assert symbol_functional(kappa, RECT, WIDE) == pytest.approx(2.0, abs=1e-8)
    assert symbol_functional(kappa, RECT, WIDE2) == pytest.approx(6.0, abs=1e-7)


def test_symbol_functional_separable_product():
    kappa = multiply(coefficient_preset("x"), LAPLACE_SYMBOL)
    assert symbol_functional(kappa, RECT, WIDE) == pytest.approx(1.0, abs=1e-8)


def test_symbol_functional_sigma_mode_uses_modulus():
    minus = TrigFactor(LAPLACE_SYMBOL)
    kappa = multiply(-1.0, minus)
    got = symbol_functional(kappa, RECT, WIDE, absolute=True)
    assert got == pytest.approx(2.0, abs=1e-8)


# ---------------------------------------------------------------------------
# Weyl comparison
# ---------------------------------------------------------------------------

def test_weyl_constant_coefficient_first_moment_gap_vanishes():
    rep = weyl_compare(fd_diffusion(ONE), 200, F_suite=[WIDE], quad_res=400)
    assert rep.functionals[0].gap < 1e-8
    assert "Hermitian" in rep.backing


def test_weyl_xexp_first_moment_matches_closed_form_and_decays():
    case = fd_diffusion(XEXP)
    target = 2 * (1 - 2 / math.e)
    gaps = {}
    for n in (100, 400):
        rep = weyl_compare(case, n, F_suite=[WIDE], quad_res=400)
        assert rep.functionals[0].symbol_value == pytest.approx(target, abs=1e-8)
        gaps[n] = rep.functionals[0].gap
    assert gaps[400] < gaps[100]


def test_weyl_default_suite_gaps_decay():
    case = fd_diffusion(XEXP)
    r100 = weyl_compare(case, 100, quad_res=200)
    r400 = weyl_compare(case, 400, quad_res=200)
    for g1, g4 in zip(r100.functionals, r400.functionals):
        assert g4.gap <= max(g1.gap, 1e-9)


def test_weyl_schur_gap_shrinks():
    case = get_case("schur", "one")
    g100 = weyl_compare(case, 100, quad_res=400).max_gap()
    g400 = weyl_compare(case, 400, quad_res=400).max_gap()
    assert g400 * 1.5 <= g100


def test_weyl_nonsymmetric_case_reports_split_backing():
    case = fd_cdr_dirichlet(XEXP, ONE, ONE)
    rep = weyl_compare(case, 80, quad_res=100)
    assert "split" in rep.backing


def test_weyl_sigma_mode_on_symmetric_case_matches_lambda():
    case = fd_diffusion(XEXP)  # nonnegative spectrum: sigma and lambda agree
    r_l = weyl_compare(case, 60, F_suite=[WIDE], quad_res=200)
    r_s = weyl_compare(case, 60, F_suite=[WIDE], mode="sigma", quad_res=200)
    assert r_s.functionals[0].empirical == pytest.approx(r_l.functionals[0].empirical, rel=1e-12)


def test_weyl_report_json_schema():
    rep = weyl_compare(fd_diffusion(ONE), 30, quad_res=100)
    doc = rep.to_json_dict()
    for key in ("case", "n", "alpha_n", "functionals", "rearrangement_gap", "outliers"):
        assert key in doc
    assert {"label", "empirical", "symbol", "gap"} <= set(doc["functionals"][0])


# ---------------------------------------------------------------------------
# rearrangement comparison
# ---------------------------------------------------------------------------

def test_rearrangement_compare_reference_row():
    rep = rearrangement_compare(fd_diffusion(XEXP), 50, r=5000)
    assert rep.rearrangement_gap == pytest.approx(0.0327, abs=5e-4)
    assert rep.outlier_count == 0


def test_rearrangement_compare_constant_coefficient_decay():
    case = fd_diffusion(ONE)
    R = monotone_rearrangement(case.predicted_symbol, RECT, 3000)
    g100 = rearrangement_compare(case, 100, rearr=R).rearrangement_gap
    g200 = rearrangement_compare(case, 200, rearr=R).rearrangement_gap
    g400 = rearrangement_compare(case, 400, rearr=R).rearrangement_gap
    assert g200 <= 0.75 * g100 and g400 <= 0.75 * g200


def test_rearrangement_compare_refuses_unbounded_symbol():
    case = get_case("fd_t7:q=2", "one")
    with pytest.raises(UnboundedSymbolError):
        rearrangement_compare(case, 30)


def test_rearrangement_overlay_shape():
    rep = rearrangement_compare(fd_diffusion(XEXP), 25, r=500)
    t, s, e = rep.overlay
    assert len(t) == len(s) == len(e) == 25
    assert np.all(np.diff(s) >= 0) and np.all(np.diff(e) >= -1e-12)


def test_dagger_functional_consistency():
    # the rearrangement preserves test functionals: mean F(kappa) over the
    # rectangle equals the line integral of F(rearranged kappa)
    kappa = multiply(XEXP, LAPLACE_SYMBOL)
    R = monotone_rearrangement(kappa, RECT, 2000)
    t = (np.arange(4000) + 0.5) / 4000
    for F in default_suite((0.0, 4 / math.e)):
        direct = symbol_functional(kappa, RECT, F, quad_res=400)
        via_dagger = float(np.mean(F(R(t))))
        assert direct == pytest.approx(via_dagger, abs=2e-3)


# ---------------------------------------------------------------------------
# outliers
# ---------------------------------------------------------------------------

def test_outlier_count_planted_value():
    values = np.sort(np.concatenate([np.linspace(0, 1, 20), [10.0]]))
    count, out = outlier_count(values, 0.0, 1.0, 1e-8)
    assert count == 1 and out == [10.0]
    count, _ = outlier_count(values, 0.0, 1.0, 100.0)
    assert count == 0


# ---------------------------------------------------------------------------
# zero-distribution trends
# ---------------------------------------------------------------------------

def test_zero_distribution_lower_order_terms_pass():
    case = fd_cdr_dirichlet(ONE, ONE, ONE)
    rep = zero_distribution_check(lambda n: case.companions["Z"](n), (100, 200, 400, 800), p=2)
    assert rep.passed and rep.overall_pass


def test_zero_distribution_identity_fails():
    for p in (2.0, np.inf):
        rep = zero_distribution_check(lambda n: np.eye(n), (50, 100, 200, 400), p=p)
        assert not rep.overall_pass


def test_zero_distribution_rank_one_passes_via_split():
    def build(n):
        Z = np.zeros((n, n))
        Z[0, 0] = 1.0
        return Z

    rep = zero_distribution_check(build, (50, 100, 200, 400), p=2,
                                  split=lambda n: (build(n), np.zeros((n, n))))
    assert rep.split_passed and rep.overall_pass


def test_zero_distribution_neumann_correction_passes():
    case = fd_cdr_neumann(ONE, ONE, ONE)

    def build(n):
        return as_dense(case.companions["Z"](n)) + as_dense(case.companions["R"](n))

    rep = zero_distribution_check(build, (100, 200, 400, 800), p=2)
    assert rep.overall_pass
