"""Dense and banded real linear algebra used by the matrix builders.

Eigenvalues of symmetric matrices go through LAPACK's tridiagonal/banded
drivers when the band structure allows it (values-only QL/QR for the
tridiagonal path), nonsymmetric spectra through Hessenberg + shifted QR,
and SPD banded systems through banded Cholesky.  Everything works on
64-bit floats; iteration failures inside LAPACK surface as
``EigenConvergenceError``, never silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla


class SymmetryError(ValueError):
    """Input matrix is not symmetric to the requested tolerance."""


class SpdError(ValueError):
    """A Cholesky pivot was not positive: the matrix is not SPD."""


class EigenConvergenceError(RuntimeError):
    """The eigenvalue iteration hit its cap without converging."""


# ----------------------------------------------------------------------------
# matrix containers
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class BandedMatrix:
    """Square banded matrix in diagonal-ordered band storage.

    ``bands`` has shape ``(lower_bw + upper_bw + 1, n)`` with
    ``bands[upper_bw + i - j, j] == A[i, j]`` for ``-upper_bw <= i - j <=
    lower_bw`` (LAPACK convention).  Entries outside the band are zero by
    construction.
    """

    n: int
    lower_bw: int
    upper_bw: int
    bands: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("matrix size must be >= 1")
        if not (0 <= self.lower_bw < self.n and 0 <= self.upper_bw < self.n):
            raise ValueError("bandwidths must satisfy 0 <= bw < n")
        bands = np.asarray(self.bands)
        if bands.shape != (self.lower_bw + self.upper_bw + 1, self.n):
            raise ValueError("band storage has wrong shape")
        if not np.all(np.isfinite(bands)):
            raise ValueError("non-finite entries in band storage")
        object.__setattr__(self, "bands", bands)

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_diagonals(cls, n, diagonals):
        """Build from ``{offset: values}`` where offset ``k`` is the k-th
        diagonal (``k > 0`` above the main diagonal, length ``n - |k|``)."""
        diagonals = {k: v for k, v in diagonals.items() if n - abs(k) > 0}
        offsets = sorted(diagonals) or [0]
        ku = max(0, max(offsets))
        kl = max(0, -min(offsets))
        dtype = complex if any(np.iscomplexobj(np.asarray(v)) for v in diagonals.values()) else float
        bands = np.zeros((kl + ku + 1, n), dtype=dtype)
        for k, vals in diagonals.items():
            vals = np.asarray(vals, dtype=dtype)
            if vals.shape != (n - abs(k),):
                raise ValueError(f"diagonal {k} has wrong length")
            if k >= 0:
                bands[ku - k, k:] = vals
            else:
                bands[ku - k, : n + k] = vals
        return cls(n, kl, ku, bands)

    @classmethod
    def tridiagonal(cls, diag, lower, upper):
        diag = np.asarray(diag)
        n = diag.shape[0]
        return cls.from_diagonals(n, {0: diag, -1: np.asarray(lower), 1: np.asarray(upper)})

    @classmethod
    def diagonal(cls, values):
        values = np.asarray(values)
        return cls(values.shape[0], 0, 0, values[None, :].copy())

    # -- views ------------------------------------------------------------

    def diagonal_values(self, k=0):
        """Values on the k-th diagonal (zeros if outside the band)."""
        m = self.n - abs(k)
        if not (-self.lower_bw <= k <= self.upper_bw):
            return np.zeros(m, dtype=self.bands.dtype)
        if k >= 0:
            return self.bands[self.upper_bw - k, k:].copy()
        return self.bands[self.upper_bw - k, :m].copy()

    def toarray(self):
        A = np.zeros((self.n, self.n), dtype=self.bands.dtype)
        for k in range(-self.lower_bw, self.upper_bw + 1):
            vals = self.diagonal_values(k)
            idx = np.arange(self.n - abs(k))
            if k >= 0:
                A[idx, idx + k] = vals
            else:
                A[idx - k, idx] = vals
        return A

    def transpose(self):
        diags = {-k: self.diagonal_values(k) for k in range(-self.lower_bw, self.upper_bw + 1)}
        return BandedMatrix.from_diagonals(self.n, diags)

    def scaled(self, alpha):
        return BandedMatrix(self.n, self.lower_bw, self.upper_bw, alpha * self.bands)

    def is_symmetric(self, tol=1e-12):
        return _symmetry_defect(self) <= tol * max(_max_abs(self), np.finfo(float).tiny)


def as_dense(A):
    """Dense ndarray view of a BandedMatrix or array-like."""
    if isinstance(A, BandedMatrix):
        return A.toarray()
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    return A


def _max_abs(A):
    if isinstance(A, BandedMatrix):
        return float(np.max(np.abs(A.bands))) if A.bands.size else 0.0
    return float(np.max(np.abs(A))) if np.asarray(A).size else 0.0


def _symmetry_defect(A):
    if isinstance(A, BandedMatrix):
        ks = range(1, max(A.lower_bw, A.upper_bw) + 1)
        defects = [np.abs(A.diagonal_values(k) - A.diagonal_values(-k)).max(initial=0.0) for k in ks]
        return max(defects, default=0.0)
    A = as_dense(A)
    return float(np.max(np.abs(A - A.T))) if A.size else 0.0


def require_symmetric(A, tol=1e-12):
    defect = _symmetry_defect(A)
    scale = max(_max_abs(A), np.finfo(float).tiny)
    if defect > tol * scale:
        raise SymmetryError(
            f"matrix is not symmetric: max |A - A^T| = {defect:.3e} > {tol:g} * {scale:.3e}"
        )


@dataclass(frozen=True)
class SpectralSet:
    """Sorted spectrum or singular values of one matrix."""

    values: np.ndarray
    kind: str  # "eigenvalues" | "singular_values"

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if np.any(np.diff(values) < 0):
            raise ValueError("values must be sorted ascending")
        if self.kind == "singular_values" and values.size and values[0] < 0:
            raise ValueError("singular values must be nonnegative")
        if self.kind not in ("eigenvalues", "singular_values"):
            raise ValueError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)


# ----------------------------------------------------------------------------
# spectra
# ----------------------------------------------------------------------------

def sym_eigvals(A, sym_tol=1e-12) -> SpectralSet:
    """Eigenvalues of a symmetric matrix, sorted ascending.

    Dispatches to the LAPACK tridiagonal QL/QR path for tridiagonal band
    storage, the banded driver for wider bands, and the dense symmetric
    driver otherwise.
    """
    require_symmetric(A, sym_tol)
    try:
        if isinstance(A, BandedMatrix):
            if max(A.lower_bw, A.upper_bw) <= 1:
                d = A.diagonal_values(0).astype(float)
                if A.n == 1:
                    return SpectralSet(d, "eigenvalues")
                e = A.diagonal_values(-1).astype(float)
                vals = sla.eigvalsh_tridiagonal(d, e)
            else:
                vals = sla.eig_banded(_upper_band(A), lower=False, eigvals_only=True)
        else:
            vals = np.linalg.eigvalsh(as_dense(A))
    except (np.linalg.LinAlgError, sla.LinAlgError) as exc:  # pragma: no cover - rare
        raise EigenConvergenceError(str(exc)) from exc
    return SpectralSet(np.sort(vals), "eigenvalues")


def sym_eigpairs(A, sym_tol=1e-12):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix."""
    require_symmetric(A, sym_tol)
    vals, vecs = np.linalg.eigh(as_dense(A))
    return vals, vecs


def generalized_sym_eigvals(K, M, sym_tol=1e-12) -> SpectralSet:
    """Eigenvalues of the SPD pencil (K, M) via Cholesky reduction.

    Never forms ``M^{-1} K``: LAPACK reduces the pencil with the Cholesky
    factor of M, keeping the problem symmetric throughout.
    """
    require_symmetric(K, sym_tol)
    require_symmetric(M, sym_tol)
    try:
        vals = sla.eigh(as_dense(K), as_dense(M), eigvals_only=True)
    except sla.LinAlgError as exc:
        raise SpdError(f"mass matrix of the pencil is not SPD: {exc}") from exc
    return SpectralSet(np.sort(vals), "eigenvalues")


def singular_values(A) -> SpectralSet:
    vals = np.linalg.svd(as_dense(A), compute_uv=False)
    return SpectralSet(np.sort(vals), "singular_values")


def nonsym_eigvals(A) -> np.ndarray:
    """All eigenvalues of a real square matrix as a complex array.

    Uses Hessenberg reduction plus shifted QR (LAPACK).  Non-convergence
    raises ``EigenConvergenceError`` instead of returning partial output.
    """
    try:
        return np.linalg.eigvals(as_dense(A))
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(str(exc)) from exc


def schatten_norm(A, p) -> float:
    """Schatten p-norm: the vector p-norm of the singular values.

    ``p = 1`` is the trace norm, ``p = 2`` the Frobenius norm, ``p = inf``
    the spectral norm.
    """
    if p < 1:
        raise ValueError("Schatten norms need p >= 1")
    s = singular_values(A).values
    return float(np.linalg.norm(s, np.inf if np.isinf(p) else p))


def spectral_norm(A) -> float:
    return schatten_norm(A, np.inf)


# ----------------------------------------------------------------------------
# solves and elementwise products
# ----------------------------------------------------------------------------

def _upper_band(A: BandedMatrix):
    """Upper band storage ``ab[u + i - j, j] = A[i, j]`` for scipy's
    symmetric banded drivers (uses the upper triangle)."""
    u = A.upper_bw
    ab = np.zeros((u + 1, A.n), dtype=float)
    for k in range(u + 1):
        ab[u - k, k:] = A.diagonal_values(k).real
    return ab


def solve_spd_banded(A: BandedMatrix, B) -> np.ndarray:
    """Solve ``A X = B`` for SPD banded ``A`` via banded Cholesky."""
    if not isinstance(A, BandedMatrix):
        raise TypeError("solve_spd_banded expects a BandedMatrix")
    require_symmetric(A)
    B = np.asarray(B, dtype=float)
    squeeze = B.ndim == 1
    if squeeze:
        B = B[:, None]
    if B.shape[0] != A.n:
        raise ValueError("right-hand side size mismatch")
    try:
        X = sla.solveh_banded(_upper_band(A), B, lower=False)
    except sla.LinAlgError as exc:
        raise SpdError(f"banded Cholesky failed, matrix is not SPD: {exc}") from exc
    return X[:, 0] if squeeze else X


def spd_cholesky_banded(A: BandedMatrix):
    """Banded Cholesky factor of an SPD BandedMatrix (upper form).

    Raising ``SpdError`` here is the library's SPD test.
    """
    require_symmetric(A)
    try:
        return sla.cholesky_banded(_upper_band(A), lower=False)
    except sla.LinAlgError as exc:
        raise SpdError(f"matrix is not SPD: {exc}") from exc


def hadamard(A, B) -> np.ndarray:
    """Componentwise (Hadamard) product of two equally sized matrices."""
    Ad, Bd = as_dense(A), as_dense(B)
    if Ad.shape != Bd.shape:
        raise ValueError(f"size mismatch: {Ad.shape} vs {Bd.shape}")
    return Ad * Bd
