"""Tests for the finite-n proof-inequality certificates."""

import numpy as np
import pytest

from gltkit import (
    LAPLACE_SYMBOL,
    as_dense,
    arrow_sampling,
    certificate_families,
    coefficient_preset,
    diag_sampling,
    run_all_certificates,
    run_certificates,
    toeplitz,
    uniform_grid,
)
from gltkit.certificates import truncated_tail_l1, _tail_element_integrals


def test_every_family_passes_on_small_grid():
    results = run_all_certificates(ns=(50, 100, 200), ms=(2, 4, 8))
    for family, checks in results.items():
        assert checks, f"family {family} produced no checks"
        bad = [c for c in checks if not c.ok]
        assert not bad, f"violated: {[c.line() for c in bad]}"


def test_hadamard_bound_constant_coefficient_is_tight_zero():
    # constant a makes the arrow-shaped and diagonal sampling products equal
    n = 40
    a = coefficient_preset("one")
    g = uniform_grid(n)
    T = as_dense(toeplitz(LAPLACE_SYMBOL, n))
    S = arrow_sampling(a, g)
    D = as_dense(diag_sampling(a, g))
    assert np.linalg.norm(S * T - D @ T, "fro") == 0.0


def test_hadamard_family_includes_degree_three_polynomial():
    labels = {c.label for c in run_certificates("thm2", ns=(50,), ms=(2,))}
    assert any("2-2cos3" in lab for lab in labels)


def test_fd_t4_family_exact_linear_modulus():
    checks = [c for c in run_certificates("fd_t4", ns=(200,), ms=(2,)) if "a=x" in c.label]
    assert checks and all(c.ok for c in checks)
    n, h = 200, 1.0 / 201
    assert checks[0].rhs == pytest.approx((n - 1) * h * h, rel=1e-12)


def test_fe_t1_spec_point():
    checks = run_certificates("fe_t1", ns=(64,), ms=(8,))
    assert len(checks) == 1 and checks[0].ok
    # comfortable but not vacuous margin
    assert checks[0].lhs > 0.1 * checks[0].rhs


def test_truncated_tail_l1_matches_quadrature_oracle():
    for m in (2, 4, 8):
        radius = float(m) ** -4
        count = 2_000_000  # even, so no midpoint lands on the singularity
        x = 0.5 - radius + (np.arange(count) + 0.5) * (2 * radius / count)
        vals = np.abs(x - 0.5) ** -0.25 - m
        numeric = float(np.mean(np.clip(vals, 0, None)) * 2 * radius)
        assert truncated_tail_l1(m) == pytest.approx(numeric, rel=1e-3)


def test_tail_element_integrals_sum_to_l1_norm():
    for n, m in ((64, 8), (200, 4)):
        I = _tail_element_integrals(n, m)
        assert I.sum() == pytest.approx(truncated_tail_l1(m), rel=1e-12)
        assert np.all(I >= -1e-15)


def test_unknown_family_rejected():
    with pytest.raises(KeyError):
        run_certificates("nonsense")


def test_check_line_format():
    check = run_certificates("fd_t4", ns=(50,), ms=(2,))[0]
    line = check.line()
    assert line.startswith("[PASS]") and "lhs=" in line and "rhs=" in line


def test_families_listing():
    fams = certificate_families()
    for expected in ("thm2", "fd_t2", "fd_t3", "fd_t4", "fd_t5", "fd_t7", "fe_t1"):
        assert expected in fams
