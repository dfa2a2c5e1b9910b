"""Finite-n inequality certificates.

Each registered family evaluates, at every point of an (n, m) grid, an
inequality that is provable for the corresponding matrix construction.
These are exact statements, not asymptotic trends, so a single numerical
violation indicates a defect in the matrix builders (or in the bound's
ingredients such as a supplied modulus of continuity) and fails the build.

Registered families
-------------------
hadamard / "thm2"
    ||S(a) o T(f) - D(a) T(f)||_2 <= r^(1/2) ||f||_inf n^(1/2)
    omega_a(r/n + 2 m(G_n)) for trig polynomials of degree r and
    asymptotically uniform grids.
fd_t2
    ||Z_n||_2 <= 2^(1/2) (n-1)^(1/2) ||b||_inf h/2 + n^(1/2) ||c||_inf h^2
    for the centred convection plus reaction correction.
fd_t3
    ||R_n||_2^2 <= 2 (||a||_inf + (h/2) ||b||_inf)^2 for the Neumann
    boundary correction.
fd_t4
    ||K_n - K~_n||_2^2 <= (n-1) omega_a(h)^2 for the arrow-shaped
    symmetrization of the non-divergence diffusion matrix.
fd_t5
    ||R_n||_2^2 <= 7 ||a||_inf^2 and ||N_n||_2^2 <= 257 n omega_a(2h)^2 for
    the fourth-order scheme's boundary/interior split.
fd_t7
    For the mapped grid with s singularities of G': the rows meeting the
    1/m-balls around the singularities number at most 2 s (n+1)/m + s, and
    away from the balls the residual rows obey the explicit entry bound
    driven by omega_a, omega_G' and the off-ball minimum of G'.
fe_t1
    ||K_n(g) - K_n(g_m)||_1 <= 4 (n+1)^2 ||g - g_m||_L1 for the truncation
    g_m = min(g, m) of an unbounded integrable coefficient (trace norm via
    singular values; element integrals of the truncated tail are computed
    in closed form so the certificate tests the exact inequality).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .builders import (
    BandedMatrix,
    arrow_sampling,
    fd_cdr_dirichlet,
    fd_cdr_neumann,
    fd_fourth_order_scheme,
    fd_nondiv,
    fd_nonuniform_matrix,
    power_map,
    toeplitz,
    uniform_grid,
    fd_interior_grid,
    half_node_grid,
    diag_sampling,
)
from .linalg import as_dense, schatten_norm, spectral_norm
from .symbols import (
    Coefficient,
    FOURTH_DERIVATIVE_SYMBOL,
    LAPLACE_SYMBOL,
    TrigPoly,
    coefficient_preset,
    modulus_upper_bound,
)

DEFAULT_NS = (50, 100, 200, 500)
DEFAULT_MS = (2, 4, 8)

#: exact supremum norms of the preset coefficients on [0, 1]
_COEFF_SUP = {"one": 1.0, "x": 1.0, "xexp": math.exp(-1.0), "1+x": 2.0,
              "expx": math.e, "zero": 0.0}

#: trig polynomials used by the Hadamard-split family, with exact sup norms
_HADAMARD_POLYS = (
    ("2-2cos", LAPLACE_SYMBOL, 4.0),
    ("6-8cos+2cos2", FOURTH_DERIVATIVE_SYMBOL, 16.0),
    ("2-2cos3", TrigPoly.from_cosines([2.0, 0.0, 0.0, -2.0]), 4.0),
)


def _coeff_sup(coef: Coefficient) -> float:
    if coef.name in _COEFF_SUP:
        return _COEFF_SUP[coef.name]
    probes = np.linspace(0.0, 1.0, 4097)
    return float(np.max(np.abs(coef(probes))))


@dataclass(frozen=True)
class CertificateCheck:
    family: str
    label: str
    n: int
    m: int | None
    lhs: float
    rhs: float

    @property
    def ok(self):
        return self.lhs <= self.rhs * (1 + 1e-12)

    def line(self):
        mark = "PASS" if self.ok else "FAIL"
        mtxt = "" if self.m is None else f" m={self.m}"
        return (f"[{mark}] {self.family}: {self.label} (n={self.n}{mtxt}): "
                f"lhs={self.lhs:.6e} <= rhs={self.rhs:.6e}")


def _frobenius(A):
    return float(np.linalg.norm(as_dense(A), "fro"))


# ----------------------------------------------------------------------------
# family implementations
# ----------------------------------------------------------------------------

def _family_hadamard(ns, ms, seed=0):
    checks = []
    for a_name in ("x", "xexp"):
        a = coefficient_preset(a_name)
        for n in ns:
            grids = (("uniform", uniform_grid(n)), ("fd-nodes", fd_interior_grid(n)),
                     ("half-nodes", half_node_grid(n, 0.5)))
            for grid_name, grid in grids:
                for f_name, f, f_sup in _HADAMARD_POLYS:
                    r = f.degree
                    if r >= n:
                        continue
                    T = as_dense(toeplitz(f, n))
                    S = arrow_sampling(a, grid)
                    D = as_dense(diag_sampling(a, grid))
                    lhs = _frobenius(S * T - D @ T)
                    omega = modulus_upper_bound(a, r / n + 2 * grid.au_deviation)
                    rhs = math.sqrt(r) * f_sup * math.sqrt(n) * omega
                    checks.append(CertificateCheck(
                        "hadamard", f"a={a_name}, f={f_name}, grid={grid_name}", n, None, lhs, rhs))
    return checks


def _random_table_coefficient(seed, knots=33, lo=-1.0, hi=2.0):
    rng = np.random.default_rng(seed)
    xs = np.linspace(0.0, 1.0, knots)
    vals = rng.uniform(lo, hi, size=knots)
    return Coefficient.from_table(xs, vals, name=f"table-seed{seed}")


def _table_sup(coef: Coefficient) -> float:
    # piecewise-linear tables attain their sup at the knots
    return float(np.max(np.abs(coef(np.linspace(0.0, 1.0, 4097)))))


def _family_fd_t2(ns, ms, seed=0):
    checks = []
    rnd_b = _random_table_coefficient(seed)
    rnd_c = _random_table_coefficient(seed + 1)
    pairs = (("b=one,c=one", coefficient_preset("one"), coefficient_preset("one")),
             ("b=x,c=1+x", coefficient_preset("x"), coefficient_preset("1+x")),
             ("random tables", rnd_b, rnd_c))
    a = coefficient_preset("one")
    for label, b, c in pairs:
        b_sup = _coeff_sup(b) if b.name in _COEFF_SUP else _table_sup(b)
        c_sup = _coeff_sup(c) if c.name in _COEFF_SUP else _table_sup(c)
        case = fd_cdr_dirichlet(a, b, c)
        for n in ns:
            h = 1.0 / (n + 1)
            lhs = _frobenius(case.companions["Z"](n))
            rhs = math.sqrt(2.0 * (n - 1)) * b_sup * h / 2 + math.sqrt(n) * c_sup * h * h
            checks.append(CertificateCheck("fd_t2", f"lower-order bound, {label}", n, None, lhs, rhs))
    return checks


def _family_fd_t3(ns, ms, seed=0):
    checks = []
    rnd_b = _random_table_coefficient(seed + 2)
    combos = (("a=xexp,b=one", "xexp", coefficient_preset("one")),
              ("a=1+x,b=table", "1+x", rnd_b))
    c = coefficient_preset("one")
    for label, a_name, b in combos:
        a = coefficient_preset(a_name)
        b_sup = _coeff_sup(b) if b.name in _COEFF_SUP else _table_sup(b)
        case = fd_cdr_neumann(a, b, c)
        for n in ns:
            h = 1.0 / (n + 1)
            lhs = _frobenius(case.companions["R"](n)) ** 2
            rhs = 2.0 * (_coeff_sup(a) + (h / 2) * b_sup) ** 2
            checks.append(CertificateCheck("fd_t3", f"boundary rank-2 bound, {label}", n, None, lhs, rhs))
    return checks


def _family_fd_t4(ns, ms, seed=0):
    checks = []
    one = coefficient_preset("one")
    for a_name in ("x", "xexp"):
        a = coefficient_preset(a_name)
        case = fd_nondiv(a, one, one)
        for n in ns:
            h = 1.0 / (n + 1)
            K = as_dense(case.companions["K"](n))
            Kt = as_dense(case.companions["K_tilde"](n))
            lhs = _frobenius(K - Kt) ** 2
            rhs = (n - 1) * modulus_upper_bound(a, h) ** 2
            checks.append(CertificateCheck("fd_t4", f"symmetrization bound, a={a_name}", n, None, lhs, rhs))
    return checks


def _family_fd_t5(ns, ms, seed=0):
    checks = []
    one = coefficient_preset("one")
    for a_name in ("x", "xexp"):
        a = coefficient_preset(a_name)
        case = fd_fourth_order_scheme(a, one, one)
        for n in ns:
            h = 1.0 / (n + 1)
            R, N = case.companions["boundary_split"](n)
            checks.append(CertificateCheck(
                "fd_t5", f"boundary-row bound, a={a_name}", n, None,
                _frobenius(R) ** 2, 7.0 * _coeff_sup(a) ** 2))
            checks.append(CertificateCheck(
                "fd_t5", f"interior-difference bound, a={a_name}", n, None,
                _frobenius(N) ** 2, 257.0 * n * modulus_upper_bound(a, 2 * h) ** 2))
    return checks


def _family_fd_t7(ns, ms, seed=0, q=2.0):
    """Small-rank/small-norm split for G(x) = x^q (singularity at 0)."""
    checks = []
    gmap = power_map(q)
    s = len(gmap.singularities)
    g_sup = q                      # max of q x^(q-1) on [0,1]
    for a_name in ("one", "x"):
        a = coefficient_preset(a_name)
        a_sup = _coeff_sup(a)
        for n in ns:
            h = 1.0 / (n + 1)
            xhat = np.arange(1, n + 1) * h
            A = as_dense(fd_nonuniform_matrix(a, gmap, n)) * h
            ratio = a(np.asarray(gmap.G(xhat))) / np.asarray(gmap.dG(xhat))
            Z = A - as_dense(BandedMatrix.tridiagonal(2.0 * ratio, -ratio[1:], -ratio[:-1]))
            if q == 2.0:
                omega_dG = 2.0 * h  # G'' = 2 is constant, so omega is exact
            else:
                omega_dG = modulus_upper_bound(Coefficient("dG", gmap.dG, "continuous"), h)
            for m in ms:
                in_ball = np.zeros(n, dtype=bool)
                for sing in gmap.singularities:
                    in_ball |= np.abs(xhat - sing) < 1.0 / m
                count = int(np.sum(in_ball))
                checks.append(CertificateCheck(
                    "fd_t7", f"ball row count, a={a_name}", n, m,
                    float(count), 2.0 * s * (n + 1) / m + s))
                m_off = float(np.min(np.asarray(gmap.dG(np.linspace(1.0 / m, 1.0, 4097)))))
                if omega_dG >= m_off:
                    continue  # bound inapplicable at this (n, m); skip, do not fake
                N = Z.copy()
                N[in_ball, :] = 0.0
                entry_bound = (modulus_upper_bound(a, (h / 2) * g_sup) / (m_off - omega_dG)
                               + a_sup * omega_dG / (m_off * (m_off - omega_dG)))
                checks.append(CertificateCheck(
                    "fd_t7", f"off-ball residual bound, a={a_name}", n, m,
                    spectral_norm(N), 3.0 * entry_bound))
    return checks


# -- fe_t1: exact element integrals of the truncated singular tail -----------

_SING_CENTER = 0.5
_SING_EXPONENT = -0.25


def truncated_tail_l1(m) -> float:
    """||g - min(g, m)||_L1 for g = |x - 1/2|^(-1/4): equals (2/3) m^(-3)."""
    radius = float(m) ** (1.0 / _SING_EXPONENT)  # m^-4
    if radius >= _SING_CENTER:
        raise ValueError("truncation level too small for the closed form")
    return (2.0 / 3.0) * float(m) ** -3


def _tail_element_integrals(n, m):
    """Exact per-element integrals of (g - m)+ for g = |x - 1/2|^(-1/4)."""
    h = 1.0 / (n + 1)
    edges = np.arange(n + 2) * h
    radius = float(m) ** -4
    lo, hi = _SING_CENTER - radius, _SING_CENTER + radius

    def antiderivative(t):
        # integral of |t - c|^(-1/4): sign(t-c) * (4/3) |t-c|^(3/4)
        d = t - _SING_CENTER
        return np.sign(d) * (4.0 / 3.0) * np.abs(d) ** 0.75

    a = np.clip(edges[:-1], lo, hi)
    b = np.clip(edges[1:], lo, hi)
    return antiderivative(b) - antiderivative(a) - float(m) * (b - a)


def _family_fe_t1(ns, ms, seed=0):
    checks = []
    for n in ns:
        h = 1.0 / (n + 1)
        for m in ms:
            I = _tail_element_integrals(n, m)
            diag = (I[:-1] + I[1:]) / h**2
            off = -I[1:-1] / h**2
            K_diff = BandedMatrix.tridiagonal(diag, off, off)
            lhs = schatten_norm(K_diff, 1)  # trace norm, computed from singular values
            rhs = 4.0 * (n + 1) ** 2 * truncated_tail_l1(m)
            checks.append(CertificateCheck(
                "fe_t1", "stiffness truncation trace-norm bound", n, m, lhs, rhs))
    return checks


_FAMILIES = {
    "thm2": _family_hadamard,
    "hadamard": _family_hadamard,
    "fd_t2": _family_fd_t2,
    "fd_t3": _family_fd_t3,
    "fd_t4": _family_fd_t4,
    "fd_t5": _family_fd_t5,
    "fd_t7": _family_fd_t7,
    "fe_t1": _family_fe_t1,
}


def certificate_families():
    return sorted(set(_FAMILIES) - {"hadamard"})


def run_certificates(family: str, ns=None, ms=None, seed=0) -> list:
    """Evaluate every registered inequality of ``family`` on the (n, m) grid."""
    if family not in _FAMILIES:
        raise KeyError(f"unknown certificate family {family!r}; "
                       f"known: {', '.join(certificate_families())}")
    ns = tuple(ns) if ns else DEFAULT_NS
    ms = tuple(ms) if ms else DEFAULT_MS
    return _FAMILIES[family](ns, ms, seed=seed)


def run_all_certificates(ns=None, ms=None, seed=0) -> dict:
    return {fam: run_certificates(fam, ns, ms, seed=seed) for fam in certificate_families()}


def acs_certificate(family: str, ns=None, ms=None):
    """Spec-facing alias: (checks, all_pass) for one family."""
    checks = run_certificates(family, ns, ms)
    return checks, all(c.ok for c in checks)
