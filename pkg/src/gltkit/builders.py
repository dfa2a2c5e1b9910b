"""Matrix families from 1-D FD and FE discretizations, with their predicted
symbols and normalizations.

Each family is packaged as a :class:`DiscretizationCase` carrying the matrix
constructor ``build(n)``, the normalization ``alpha(n)`` applied before any
spectral comparison, the predicted symbol on [0,1] x [-pi,pi], and the
symmetry class that decides how spectra are computed.  Exact constructions:

* FD diffusion in divergence form on the uniform grid x_j = j h, h = 1/(n+1):
  tridiagonal with row j equal to (-a_{j-1/2}, a_{j-1/2} + a_{j+1/2}, -a_{j+1/2}).
* Lower-order convection/reaction corrections (h/2) tridiag(-b_j, 0, b_j)
  + h^2 diag(c_j), plus two-entry boundary corrections for Neumann data.
* Non-divergence form diag(a_j) T(2-2cos) with its arrow-shaped Hadamard
  symmetrization, the fourth-order scheme (1,-16,30,-16,1)/12 with (-1,2,-1)
  closures, the fourth-derivative scheme (1,-4,6,-4,1), and the mapped-grid
  diffusion matrix with steps h_j = G(j/(n+1)) - G((j-1)/(n+1)).
* FE stiffness/mass/convection matrices for hat functions on the uniform
  mesh, assembled with per-element Gauss-Legendre quadrature, the Schur
  complement rho M + H^T K^{-1} H of the saddle-point system, and the
  generalized eigenproblem pencil (K(a), M(c)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    BandedMatrix,
    SpectralSet,
    as_dense,
    generalized_sym_eigvals,
    nonsym_eigvals,
    singular_values,
    solve_spd_banded,
    spd_cholesky_banded,
    sym_eigvals,
)
from .symbols import (
    Coefficient,
    CoeffFactor,
    FOURTH_DERIVATIVE_SYMBOL,
    FOURTH_ORDER_LAPLACE_SYMBOL,
    LAPLACE_SYMBOL,
    MASS_SYMBOL,
    SIN_SYMBOL,
    SymbolExpr,
    TrigFactor,
    TrigPoly,
    coefficient_preset,
    divide,
    multiply,
    add,
)


class ComplexSpectrumError(ValueError):
    """Eigenvalues have genuine imaginary parts; use singular-value mode."""


ZERO_COEFFICIENT = Coefficient("zero", lambda x: np.zeros_like(x), "continuous", lambda d: 0.0)


# ----------------------------------------------------------------------------
# grids and grid maps
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Grid:
    """n points of [0,1] with their deviation from the reference {i/n}."""

    n: int
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (self.n,):
            raise ValueError("grid needs exactly n points")
        if np.any(np.diff(pts) < 0):
            raise ValueError("grid points must be nondecreasing")
        object.__setattr__(self, "points", pts)

    @property
    def au_deviation(self):
        """m(G_n) = max_i |x_i - i/n|, the asymptotic-uniformity defect."""
        i = np.arange(1, self.n + 1)
        return float(np.max(np.abs(self.points - i / self.n)))


def uniform_grid(n) -> Grid:
    return Grid(n, np.arange(1, n + 1) / n)


def fd_interior_grid(n) -> Grid:
    """The FD interior nodes {j/(n+1)}, j = 1..n."""
    return Grid(n, np.arange(1, n + 1) / (n + 1))


def half_node_grid(n, shift) -> Grid:
    """Half-integer FD nodes {(j + shift)/(n+1)} with shift = +-1/2."""
    return Grid(n, (np.arange(1, n + 1) + shift) / (n + 1))


@dataclass(frozen=True)
class GridMap:
    """Increasing bijection G of [0,1] used to map uniform grids."""

    name: str
    G: callable = field(repr=False)
    dG: callable = field(repr=False)
    singularities: tuple = ()

    def __post_init__(self):
        if abs(float(self.G(0.0))) > 1e-12 or abs(float(self.G(1.0)) - 1.0) > 1e-12:
            raise ValueError("grid map must satisfy G(0) = 0 and G(1) = 1")
        probes = np.linspace(0.0, 1.0, 257)
        if np.any(np.asarray(self.dG(probes)) < -1e-12):
            raise ValueError("grid map derivative must be nonnegative")


def power_map(q: float) -> GridMap:
    """G(x) = x^q; singular at 0 for q > 1 (local refinement near 0)."""
    if q <= 0:
        raise ValueError("power map needs q > 0")
    sing = (0.0,) if q > 1 else ()
    return GridMap(f"x^{q:g}", lambda x: np.asarray(x) ** q,
                   lambda x: q * np.asarray(x) ** (q - 1.0), sing)


def mapped_grid(gmap: GridMap, n) -> Grid:
    """Interior FD nodes G(j/(n+1)), j = 1..n."""
    return Grid(n, np.asarray(gmap.G(np.arange(1, n + 1) / (n + 1)), dtype=float))


# ----------------------------------------------------------------------------
# elementary constructors
# ----------------------------------------------------------------------------

def toeplitz(f: TrigPoly, n) -> BandedMatrix:
    """T_n(f) with entries f_{i-j}; banded with bandwidth 2 deg(f) + 1."""
    r = f.degree
    if r >= n:
        raise ValueError("trig polynomial degree must be < n")
    coeffs = f.coeffs
    if np.allclose(coeffs.imag, 0.0):
        coeffs = coeffs.real
    diags = {}
    for k in range(-r, r + 1):
        # superdiagonal k holds f_{-k}, subdiagonal |k| holds f_{|k|}
        diags[k] = np.full(n - abs(k), coeffs[r - k])
    return BandedMatrix.from_diagonals(n, diags)


def diag_sampling(a: Coefficient, grid: Grid) -> BandedMatrix:
    """Diagonal sampling matrix diag(a(x_i))."""
    return BandedMatrix.diagonal(np.asarray(a(grid.points), dtype=float))


def arrow_sampling(a: Coefficient, grid: Grid) -> np.ndarray:
    """Arrow-shaped sampling matrix S_ij = a(x_min(i,j))."""
    vals = np.asarray(a(grid.points), dtype=float)
    idx = np.arange(grid.n)
    return vals[np.minimum.outer(idx, idx)]


def _hadamard_with_toeplitz(a_vals: np.ndarray, f: TrigPoly) -> BandedMatrix:
    """Banded S(a) o T_n(f): entry (i,j) = a_min(i,j) * f_{i-j}."""
    n = a_vals.size
    r = f.degree
    c = f.coeffs.real if np.allclose(f.coeffs.imag, 0) else f.coeffs
    diags = {0: a_vals * c[r]}
    for k in range(1, r + 1):
        head = a_vals[: n - k]  # min(i, j) index along both k-offset diagonals
        diags[k] = head * c[r - k]
        diags[-k] = head * c[r + k]
    return BandedMatrix.from_diagonals(n, diags)


# ----------------------------------------------------------------------------
# the case container
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscretizationCase:
    """One matrix family with its predicted symbol and normalization."""

    name: str
    tag: str
    build: callable = field(repr=False)
    alpha: callable = field(repr=False)
    alpha_str: str = "1"
    predicted_symbol: SymbolExpr | None = None
    symbol_str: str = ""
    symmetry: str = "symmetric"  # symmetric | nonsymmetric | symmetrizable | pencil
    coefficients: dict = field(default_factory=dict)
    theta_even: bool = True
    symbol_unbounded: bool = False
    companions: dict = field(default_factory=dict, repr=False)
    notes: str = ""

    def matrix(self, n):
        return self.build(n)

    def normalized_dense(self, n):
        if self.symmetry == "pencil":
            raise ValueError(f"case {self.name} is a matrix pencil; use spectrum()")
        return self.alpha(n) * as_dense(self.build(n))

    def spectrum(self, n) -> SpectralSet:
        """Real eigenvalues of alpha_n A_n through the path fitting the
        symmetry class; complex spectra raise ComplexSpectrumError."""
        a_n = self.alpha(n)
        if self.symmetry == "symmetric":
            A = self.build(n)
            A = A.scaled(a_n) if isinstance(A, BandedMatrix) else a_n * as_dense(A)
            return sym_eigvals(A)
        if self.symmetry == "symmetrizable":
            S = self.companions["symmetrized"](n)
            vals = sym_eigvals(S).values * a_n
            return SpectralSet(np.sort(vals), "eigenvalues")
        if self.symmetry == "pencil":
            K, M = self.build(n)
            vals = generalized_sym_eigvals(K, M).values * a_n
            return SpectralSet(np.sort(vals), "eigenvalues")
        ev = self.complex_spectrum(n)
        scale = max(np.max(np.abs(ev)), np.finfo(float).tiny)
        if np.max(np.abs(ev.imag)) > 1e-7 * scale:
            raise ComplexSpectrumError(
                f"case {self.name} has genuinely complex eigenvalues at n={n}; "
                "run the singular-value mode instead"
            )
        return SpectralSet(np.sort(ev.real), "eigenvalues")

    def complex_spectrum(self, n) -> np.ndarray:
        if self.symmetry == "pencil":
            return self.spectrum(n).values.astype(complex)
        return nonsym_eigvals(self.normalized_dense(n)) if self.symmetry == "nonsymmetric" \
            else self.spectrum(n).values.astype(complex)

    def singular_spectrum(self, n) -> SpectralSet:
        """Singular values of alpha_n A_n (eigenvalue magnitudes on the
        symmetric paths, SVD otherwise)."""
        if self.symmetry in ("symmetric", "symmetrizable", "pencil"):
            vals = np.abs(self.spectrum(n).values)
            return SpectralSet(np.sort(vals), "singular_values")
        return singular_values(self.normalized_dense(n))


# ----------------------------------------------------------------------------
# FD families
# ----------------------------------------------------------------------------

def _require_bounded(coef: Coefficient, role: str):
    if not coef.bounded:
        raise ValueError(f"{role} coefficient {coef.name!r} must carry a bounded tag")


def _require_continuous(coef: Coefficient, role: str):
    if coef.regularity != "continuous":
        raise ValueError(f"{role} coefficient {coef.name!r} must carry the continuous tag")


def fd_diffusion_matrix(a: Coefficient, n) -> BandedMatrix:
    h = 1.0 / (n + 1)
    j = np.arange(1, n + 1)
    a_plus = np.asarray(a((j + 0.5) * h), dtype=float)   # a_{j+1/2}
    a_minus = np.asarray(a((j - 0.5) * h), dtype=float)  # a_{j-1/2}
    return BandedMatrix.tridiagonal(a_plus + a_minus, -a_plus[:-1], -a_plus[:-1])


def fd_lower_order_matrix(b: Coefficient, c: Coefficient, n) -> BandedMatrix:
    """(h/2) tridiag(-b_j, 0, b_j) + h^2 diag(c_j) on the nodes x_j = j h."""
    h = 1.0 / (n + 1)
    x = np.arange(1, n + 1) * h
    bv = np.asarray(b(x), dtype=float)
    cv = np.asarray(c(x), dtype=float)
    return BandedMatrix.tridiagonal(h * h * cv, -(h / 2) * bv[1:], (h / 2) * bv[:-1])


def fd_neumann_correction(a: Coefficient, b: Coefficient, n) -> BandedMatrix:
    h = 1.0 / (n + 1)
    x = np.arange(1, n + 1) * h
    bv = np.asarray(b(x), dtype=float)
    d = np.zeros(n)
    d[0] = -float(a(0.5 * h)) - (h / 2) * bv[0]
    d[-1] = -float(a((n + 0.5) * h)) + (h / 2) * bv[-1]
    return BandedMatrix.diagonal(d)


def _banded_sum(*mats: BandedMatrix) -> BandedMatrix:
    n = mats[0].n
    kl = max(m.lower_bw for m in mats)
    ku = max(m.upper_bw for m in mats)
    diags = {}
    for k in range(-kl, ku + 1):
        total = sum(m.diagonal_values(k) for m in mats)
        if np.any(total != 0) or k == 0:
            diags[k] = total
    return BandedMatrix.from_diagonals(n, diags)


def fd_diffusion(a: Coefficient) -> DiscretizationCase:
    case = DiscretizationCase(
        name="fd_t1",
        tag="FD diffusion, divergence form, Dirichlet",
        build=lambda n: fd_diffusion_matrix(a, n),
        alpha=lambda n: 1.0,
        alpha_str="1",
        predicted_symbol=multiply(a, LAPLACE_SYMBOL),
        symbol_str="a(x)(2-2cos(theta))",
        symmetry="symmetric",
        coefficients={"a": a},
    )
    return case


def fd_cdr_dirichlet(a: Coefficient, b: Coefficient, c: Coefficient) -> DiscretizationCase:
    _require_bounded(b, "convection")
    _require_bounded(c, "reaction")
    return DiscretizationCase(
        name="fd_t2",
        tag="FD convection-diffusion-reaction, Dirichlet",
        build=lambda n: _banded_sum(fd_diffusion_matrix(a, n), fd_lower_order_matrix(b, c, n)),
        alpha=lambda n: 1.0,
        alpha_str="1",
        predicted_symbol=multiply(a, LAPLACE_SYMBOL),
        symbol_str="a(x)(2-2cos(theta))",
        symmetry="nonsymmetric",
        coefficients={"a": a, "b": b, "c": c},
        companions={"Z": lambda n: fd_lower_order_matrix(b, c, n)},
        notes="lower-order terms are a vanishing Frobenius-scale perturbation",
    )


def fd_cdr_neumann(a: Coefficient, b: Coefficient, c: Coefficient) -> DiscretizationCase:
    _require_bounded(b, "convection")
    _require_bounded(c, "reaction")
    return DiscretizationCase(
        name="fd_t3",
        tag="FD convection-diffusion-reaction, Neumann",
        build=lambda n: _banded_sum(
            fd_diffusion_matrix(a, n),
            fd_lower_order_matrix(b, c, n),
            fd_neumann_correction(a, b, n),
        ),
        alpha=lambda n: 1.0,
        alpha_str="1",
        predicted_symbol=multiply(a, LAPLACE_SYMBOL),
        symbol_str="a(x)(2-2cos(theta))",
        symmetry="nonsymmetric",
        coefficients={"a": a, "b": b, "c": c},
        companions={
            "Z": lambda n: fd_lower_order_matrix(b, c, n),
            "R": lambda n: fd_neumann_correction(a, b, n),
        },
        notes="boundary handling is a rank <= 2 correction",
    )


def _nondiv_diffusion(a: Coefficient, n) -> BandedMatrix:
    """diag(a_j) T(2-2cos): row j equals a_j (-1, 2, -1)."""
    h = 1.0 / (n + 1)
    av = np.asarray(a(np.arange(1, n + 1) * h), dtype=float)
    return BandedMatrix.tridiagonal(2.0 * av, -av[1:], -av[:-1])


def _nondiv_hadamard(a: Coefficient, n) -> BandedMatrix:
    h = 1.0 / (n + 1)
    av = np.asarray(a(np.arange(1, n + 1) * h), dtype=float)
    return _hadamard_with_toeplitz(av, LAPLACE_SYMBOL)


def _diag_similarity_symmetrized(diag_vals, T: BandedMatrix) -> BandedMatrix:
    """D^{1/2} T D^{1/2} for positive diag_vals: shares the spectrum of D T."""
    if np.any(diag_vals <= 0):
        raise ValueError("diagonal similarity needs strictly positive sampling values")
    s = np.sqrt(diag_vals)
    n = s.size
    diags = {}
    for k in range(-T.lower_bw, T.upper_bw + 1):
        vals = T.diagonal_values(k)
        if k >= 0:
            diags[k] = vals * s[: n - k] * s[k:]
        else:
            diags[k] = vals * s[-k:] * s[: n + k]
    return BandedMatrix.from_diagonals(n, diags)


def fd_nondiv(a: Coefficient, b: Coefficient, c: Coefficient) -> DiscretizationCase:
    _require_continuous(a, "diffusion")
    _require_bounded(b, "convection")
    _require_bounded(c, "reaction")
    zero_lower = b.name == "zero" and c.name == "zero"

    def build(n):
        K = _nondiv_diffusion(a, n)
        return K if zero_lower else _banded_sum(K, fd_lower_order_matrix(b, c, n))

    companions = {
        "K": lambda n: _nondiv_diffusion(a, n),
        "K_tilde": lambda n: _nondiv_hadamard(a, n),
        "Z": lambda n: fd_lower_order_matrix(b, c, n),
    }
    if zero_lower:
        companions["symmetrized"] = lambda n: _diag_similarity_symmetrized(
            np.asarray(a(np.arange(1, n + 1) / (n + 1)), dtype=float), toeplitz(LAPLACE_SYMBOL, n)
        )
    return DiscretizationCase(
        name="fd_t4",
        tag="FD convection-diffusion-reaction, non-divergence form",
        build=build,
        alpha=lambda n: 1.0,
        alpha_str="1",
        predicted_symbol=multiply(a, LAPLACE_SYMBOL),
        symbol_str="a(x)(2-2cos(theta))",
        symmetry="symmetrizable" if zero_lower else "nonsymmetric",
        coefficients={"a": a, "b": b, "c": c},
        companions=companions,
        notes="eigenvalue distribution backed by the Hadamard symmetrization split",
    )


def _fourth_order_diffusion(a: Coefficient, n) -> BandedMatrix:
    """Interior rows a_j (1,-16,30,-16,1)/12; rows 1 and n use the (-1,2,-1)
    closure a_j (-12, 24, -12)/12 truncated at the boundary."""
    h = 1.0 / (n + 1)
    av = np.asarray(a(np.arange(1, n + 1) * h), dtype=float)
    diag = 30.0 * av
    diag[0], diag[-1] = 24.0 * av[0], 24.0 * av[-1]
    sup1 = -16.0 * av[:-1]
    sup1[0] = -12.0 * av[0]
    sub1 = -16.0 * av[1:]
    sub1[-1] = -12.0 * av[-1]
    sup2 = av[: n - 2].copy()
    sup2[0] = 0.0
    sub2 = av[2:].copy()
    sub2[-1] = 0.0
    return BandedMatrix.from_diagonals(
        n, {0: diag / 12, 1: sup1 / 12, -1: sub1 / 12, 2: sup2 / 12, -2: sub2 / 12}
    )


def _fourth_order_lower(b: Coefficient, c: Coefficient, n) -> BandedMatrix:
    """One-sided convection h bidiag(-b_j, b_j) plus the 3-point reaction
    (h^2/3) tridiag(c_j, c_j, c_j)."""
    h = 1.0 / (n + 1)
    x = np.arange(1, n + 1) * h
    bv = np.asarray(b(x), dtype=float)
    cv = np.asarray(c(x), dtype=float)
    return BandedMatrix.from_diagonals(
        n,
        {
            0: h * bv + (h * h / 3) * cv,
            -1: -h * bv[1:] + (h * h / 3) * cv[1:],
            1: (h * h / 3) * cv[:-1],
        },
    )


def _fourth_order_hadamard(a: Coefficient, n) -> BandedMatrix:
    h = 1.0 / (n + 1)
    av = np.asarray(a(np.arange(1, n + 1) * h), dtype=float)
    return _hadamard_with_toeplitz(av, FOURTH_ORDER_LAPLACE_SYMBOL)


def _fourth_order_boundary_split(a: Coefficient, n):
    """(R, N) with K - K_tilde = R + N; R holds the two boundary rows."""
    h = 1.0 / (n + 1)
    av = np.asarray(a(np.arange(1, n + 1) * h), dtype=float)
    R = np.zeros((n, n))
    R[0, :3] = np.array([-6.0 * av[0], 4.0 * av[0], -av[0]]) / 12
    R[-1, n - 3:] = np.array([-av[n - 3], -12.0 * av[-1] + 16.0 * av[-2], -6.0 * av[-1]]) / 12
    K = as_dense(_fourth_order_diffusion(a, n))
    Kt = as_dense(_fourth_order_hadamard(a, n))
    return R, K - Kt - R


def fd_fourth_order_scheme(a: Coefficient, b: Coefficient, c: Coefficient) -> DiscretizationCase:
    _require_continuous(a, "diffusion")

    def build(n):
        if n < 4:
            raise ValueError("fourth-order scheme needs n >= 4")
        return _banded_sum(_fourth_order_diffusion(a, n), _fourth_order_lower(b, c, n))

    return DiscretizationCase(
        name="fd_t5",
        tag="FD fourth-order scheme for the second derivative",
        build=build,
        alpha=lambda n: 1.0,
        alpha_str="1",
        predicted_symbol=multiply(a, FOURTH_ORDER_LAPLACE_SYMBOL),
        symbol_str="a(x)p(theta), p=(30-32cos+2cos2)/12",
        symmetry="nonsymmetric",
        coefficients={"a": a, "b": b, "c": c},
        companions={
            "K": lambda n: _fourth_order_diffusion(a, n),
            "K_tilde": lambda n: _fourth_order_hadamard(a, n),
            "Z": lambda n: _fourth_order_lower(b, c, n),
            "boundary_split": lambda n: _fourth_order_boundary_split(a, n),
        },
    )


def fd_fourth_derivative(a: Coefficient) -> DiscretizationCase:
    _require_continuous(a, "coefficient")

    def sampling(n):
        h = 1.0 / (n + 3)
        return np.asarray(a((np.arange(1, n + 1) + 1) * h), dtype=float)

    def build(n):
        if n < 5:
            raise ValueError("fourth-derivative stencil needs n >= 5")
        D = BandedMatrix.diagonal(sampling(n))
        T = toeplitz(FOURTH_DERIVATIVE_SYMBOL, n)
        av = D.diagonal_values(0)
        diags = {k: T.diagonal_values(k) * (av[: n - k] if k >= 0 else av[-k:])
                 for k in range(-2, 3)}
        return BandedMatrix.from_diagonals(n, diags)

    return DiscretizationCase(
        name="fd_t6",
        tag="FD fourth derivative",
        build=build,
        alpha=lambda n: 1.0,
        alpha_str="1",
        predicted_symbol=multiply(a, FOURTH_DERIVATIVE_SYMBOL),
        symbol_str="a(x)q(theta), q=6-8cos+2cos2",
        symmetry="symmetrizable",
        coefficients={"a": a},
        companions={
            "symmetrized": lambda n: _diag_similarity_symmetrized(
                sampling(n), toeplitz(FOURTH_DERIVATIVE_SYMBOL, n)
            ),
        },
    )


def fd_nonuniform_matrix(a: Coefficient, gmap: GridMap, n) -> BandedMatrix:
    h = 1.0 / (n + 1)
    xhat = np.arange(0, n + 2) * h
    x = np.asarray(gmap.G(xhat), dtype=float)
    steps = np.diff(x)  # h_1 .. h_{n+1}
    if np.any(steps <= 0):
        raise ValueError(f"grid map {gmap.name!r} is not increasing on the mesh")
    mids = (x[:-1] + x[1:]) / 2            # x_j - h_j/2 for j = 1..n+1
    ratio = np.asarray(a(mids), dtype=float) / steps
    diag = ratio[:-1] + ratio[1:]
    off = -ratio[1:-1]
    return BandedMatrix.tridiagonal(diag, off, off)


def fd_nonuniform(a: Coefficient, gmap: GridMap) -> DiscretizationCase:
    _require_continuous(a, "diffusion")
    a_of_G = Coefficient(f"{a.name}(G)", lambda x: a(np.asarray(gmap.G(x))), a.regularity)
    dG = Coefficient(f"{gmap.name}'", gmap.dG, "continuous")
    symbol = divide(multiply(a_of_G, LAPLACE_SYMBOL), CoeffFactor(dG), nonzero_ae=True)
    return DiscretizationCase(
        name="fd_t7",
        tag=f"FD diffusion on the mapped grid G = {gmap.name}",
        build=lambda n: fd_nonuniform_matrix(a, gmap, n),
        alpha=lambda n: 1.0 / (n + 1),
        alpha_str="1/(n+1)",
        predicted_symbol=symbol,
        symbol_str="a(G(x))/G'(x) (2-2cos(theta))",
        symmetry="symmetric",
        coefficients={"a": a},
        symbol_unbounded=bool(gmap.singularities),
        companions={"grid_map": lambda n=None: gmap},
    )


# ----------------------------------------------------------------------------
# FE families
# ----------------------------------------------------------------------------

def _element_quadrature(n, quad_order, singular_points=()):
    """Gauss-Legendre nodes/weights per element [x_{e-1}, x_e], e = 1..n+1."""
    if quad_order < 1:
        raise ValueError("quadrature order must be >= 1")
    h = 1.0 / (n + 1)
    gx, gw = np.polynomial.legendre.leggauss(quad_order)
    left = np.arange(n + 1)[:, None] * h
    nodes = left + (gx[None, :] + 1.0) * (h / 2)
    weights = np.broadcast_to(gw[None, :] * (h / 2), nodes.shape)
    for s in singular_points:
        hit = np.abs(nodes - s) < 1e-12
        if np.any(hit):
            nodes = np.where(hit, nodes + 1e-9 * h, nodes)
    return nodes, weights, h


def fe_stiffness(g: Coefficient, n, quad_order=5) -> BandedMatrix:
    """K_n(g): tridiagonal hat-function stiffness matrix for coefficient g.

    Entries are per-element integrals of g scaled by the constant slopes
    +-1/h, so the composite rule is exact for polynomial g of degree up to
    2 quad_order - 1.
    """
    nodes, weights, h = _element_quadrature(n, quad_order, g.singular_points)
    I = np.sum(weights * np.asarray(g(nodes), dtype=float), axis=1)  # integral of g per element
    diag = (I[:-1] + I[1:]) / h**2
    off = -I[1:-1] / h**2
    return BandedMatrix.tridiagonal(diag, off, off)


def fe_mass(g: Coefficient, n, quad_order=5) -> BandedMatrix:
    """M_n(g): tridiagonal hat-function mass matrix for coefficient g."""
    nodes, weights, h = _element_quadrature(n, quad_order, g.singular_points)
    gv = np.asarray(g(nodes), dtype=float)
    left = np.arange(n + 1)[:, None] * h
    asc = (nodes - left) / h       # rising hat on the element
    desc = 1.0 - asc               # falling hat
    s_aa = np.sum(weights * gv * asc * asc, axis=1)
    s_dd = np.sum(weights * gv * desc * desc, axis=1)
    s_ad = np.sum(weights * gv * asc * desc, axis=1)
    diag = s_aa[:-1] + s_dd[1:]
    off = s_ad[1:-1]
    return BandedMatrix.tridiagonal(diag, off, off)


def fe_convection(b: Coefficient, n, quad_order=5) -> BandedMatrix:
    """Matrix of integrals of b phi_j' phi_i (skew part of the FE system)."""
    nodes, weights, h = _element_quadrature(n, quad_order, b.singular_points)
    bv = np.asarray(b(nodes), dtype=float)
    left = np.arange(n + 1)[:, None] * h
    asc = (nodes - left) / h
    desc = 1.0 - asc
    s_a = np.sum(weights * bv * asc, axis=1) / h    # integral of b * rising / h
    s_d = np.sum(weights * bv * desc, axis=1) / h
    diag = s_a[:-1] - s_d[1:]
    sup = s_d[1:-1]        # (i, i+1): phi_{i+1}' = 1/h against falling phi_i
    sub = -s_a[1:-1]       # (i+1, i): phi_i' = -1/h against rising phi_{i+1}
    return BandedMatrix.from_diagonals(n, {0: diag, 1: sup, -1: sub})


def fe_gradient_coupling(n) -> BandedMatrix:
    """H_n = [integral of phi_j' phi_i] = (1/2) tridiag(-1, 0, 1), exactly."""
    half = np.full(n - 1, 0.5)
    return BandedMatrix.from_diagonals(n, {0: np.zeros(n), 1: half, -1: -half})


def fe_cdr(a: Coefficient, b: Coefficient, c: Coefficient, quad_order=5) -> DiscretizationCase:
    symmetric = b.name == "zero" and c.name == "zero"

    def lower_order(n):
        return _banded_sum(fe_convection(b, n, quad_order), fe_mass(c, n, quad_order))

    def build(n):
        K = fe_stiffness(a, n, quad_order)
        return K if symmetric else _banded_sum(K, lower_order(n))

    companions = {"K": lambda n: fe_stiffness(a, n, quad_order)}
    if not symmetric:
        companions["Z"] = lower_order
    return DiscretizationCase(
        name="fe_t1",
        tag="FE convection-diffusion-reaction (hat functions)",
        build=build,
        alpha=lambda n: 1.0 / (n + 1),
        alpha_str="1/(n+1)",
        predicted_symbol=multiply(a, LAPLACE_SYMBOL),
        symbol_str="a(x)(2-2cos(theta))",
        symmetry="symmetric" if symmetric else "nonsymmetric",
        coefficients={"a": a, "b": b, "c": c},
        companions=companions,
        notes=f"per-element Gauss-Legendre order {quad_order}",
    )


def fe_mass_case(g: Coefficient, quad_order=5) -> DiscretizationCase:
    return DiscretizationCase(
        name="fe_mass",
        tag="FE mass matrix (hat functions)",
        build=lambda n: fe_mass(g, n, quad_order),
        alpha=lambda n: float(n + 1),
        alpha_str="n+1",
        predicted_symbol=multiply(g, MASS_SYMBOL),
        symbol_str="g(x)(2+cos(theta))/3",
        symmetry="symmetric",
        coefficients={"g": g},
        notes=f"per-element Gauss-Legendre order {quad_order}",
    )


def fe_system_schur(a: Coefficient, rho: float, quad_order=5) -> DiscretizationCase:
    def build(n):
        K = fe_stiffness(a, n, quad_order)
        spd_cholesky_banded(K)  # K must be SPD for the Schur complement
        H = as_dense(fe_gradient_coupling(n))
        X = solve_spd_banded(K, H)
        M = as_dense(fe_mass(coefficient_preset("one"), n, quad_order))
        return rho * M + H.T @ X

    sigma = add(
        TrigFactor(TrigPoly.from_cosines([2 * rho / 3, rho / 3])),
        divide(multiply(SIN_SYMBOL, SIN_SYMBOL), multiply(a, LAPLACE_SYMBOL), nonzero_ae=True),
    )
    return DiscretizationCase(
        name="schur",
        tag=f"FE saddle-point Schur complement, rho={rho:g}",
        build=build,
        alpha=lambda n: float(n + 1),
        alpha_str="n+1",
        predicted_symbol=sigma,
        symbol_str="(rho/3)(2+cos) + sin^2/(a(x)(2-2cos))",
        symmetry="symmetric",
        coefficients={"a": a},
        notes="requires a > 0 a.e. so that the stiffness block is SPD",
    )


def fe_eigproblem(a: Coefficient, c: Coefficient, quad_order=5) -> DiscretizationCase:
    def build(n):
        K = fe_stiffness(a, n, quad_order)
        M = fe_mass(c, n, quad_order)
        spd_cholesky_banded(M)  # c > 0 a.e. makes the mass matrix SPD
        return K, M

    symbol = divide(
        multiply(a, TrigPoly.from_cosines([6.0, -6.0])),
        multiply(c, TrigPoly.from_cosines([2.0, 1.0])),
        nonzero_ae=True,
    )
    return DiscretizationCase(
        name="Ln",
        tag="FE generalized eigenproblem pencil (stiffness, mass)",
        build=build,
        alpha=lambda n: 1.0 / (n + 1) ** 2,
        alpha_str="(n+1)^-2",
        predicted_symbol=symbol,
        symbol_str="(a/c)(6-6cos)/(2+cos)",
        symmetry="pencil",
        coefficients={"a": a, "c": c},
        notes="spectra via Cholesky reduction of the pencil, never M^{-1}K",
    )


# ----------------------------------------------------------------------------
# registry
# ----------------------------------------------------------------------------

def _coef_param(params, key, default_name):
    name = params.get(key, default_name)
    if isinstance(name, Coefficient):
        return name
    if name == "zero":
        return ZERO_COEFFICIENT
    return coefficient_preset(name)


_CASE_FACTORIES = {
    "fd_t1": lambda a, p: fd_diffusion(a),
    "fd_t2": lambda a, p: fd_cdr_dirichlet(a, _coef_param(p, "b", "one"), _coef_param(p, "c", "one")),
    "fd_t3": lambda a, p: fd_cdr_neumann(a, _coef_param(p, "b", "one"), _coef_param(p, "c", "one")),
    "fd_t4": lambda a, p: fd_nondiv(a, _coef_param(p, "b", "one"), _coef_param(p, "c", "one")),
    "fd_t5": lambda a, p: fd_fourth_order_scheme(a, _coef_param(p, "b", "one"), _coef_param(p, "c", "one")),
    "fd_t6": lambda a, p: fd_fourth_derivative(a),
    "fd_t7": lambda a, p: fd_nonuniform(a, power_map(float(p.get("q", 2.0)))),
    "fe_t1": lambda a, p: fe_cdr(a, _coef_param(p, "b", "zero"), _coef_param(p, "c", "zero"),
                                 quad_order=int(p.get("quad", 5))),
    "fe_mass": lambda a, p: fe_mass_case(a, quad_order=int(p.get("quad", 5))),
    "schur": lambda a, p: fe_system_schur(a, rho=float(p.get("rho", 1.0)),
                                          quad_order=int(p.get("quad", 5))),
    "Ln": lambda a, p: fe_eigproblem(a, _coef_param(p, "c", "one"),
                                     quad_order=int(p.get("quad", 5))),
}


def case_names():
    return sorted(_CASE_FACTORIES)


def get_case(spec: str, coefficient=None) -> DiscretizationCase:
    """Resolve a registry spec like ``fd_t1``, ``fd_t7:q=2`` or
    ``schur:rho=0`` into a DiscretizationCase.

    ``coefficient`` (preset name, ``csv:PATH`` spec, or Coefficient) feeds
    the main diffusion coefficient; secondary coefficients default to the
    values documented in the factory table and can be overridden with
    ``key=value`` parameters in the spec string.
    """
    head, _, tail = spec.partition(":")
    if head not in _CASE_FACTORIES:
        raise KeyError(f"unknown case {head!r}; known cases: {', '.join(case_names())}")
    params = {}
    if tail:
        for item in tail.split(","):
            key, _, value = item.partition("=")
            if not value:
                raise ValueError(f"malformed case parameter {item!r}")
            params[key.strip()] = value.strip()
    if coefficient is None:
        coefficient = "xexp"
    if not isinstance(coefficient, Coefficient):
        coefficient = coefficient_preset(coefficient)
    return _CASE_FACTORIES[head](coefficient, params)


def registry_lines():
    """One formatted line per registered case for the listing command."""
    lines = []
    for name in case_names():
        case = get_case(name)
        lines.append(f"{name} | {case.symbol_str} | alpha={case.alpha_str} | {case.tag}")
    return lines
