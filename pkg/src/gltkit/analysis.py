"""Quantitative agreement between computed spectra and predicted symbols.

Three complementary diagnostics:

* Weyl test functionals: compare the spectral average (1/n) sum F(lambda_i)
  against the symbol's domain average of F(kappa), for compactly supported
  test functions F.
* Monotone-rearrangement comparison: sort the spectrum ascending and match
  it against uniform samples of the rearranged symbol; report the sup-norm
  mismatch and outliers beyond the essential range.
* Zero-distribution trend checks: Schatten-norm decay of correction terms
  relative to n^(1/p), optionally with a small-rank plus small-norm split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .builders import DiscretizationCase
from .linalg import SpectralSet, schatten_norm, spectral_norm, as_dense
from .symbols import Rearrangement, SymbolExpr, monotone_rearrangement


class UnboundedSymbolError(ValueError):
    """Rearrangement comparison is disabled: the symbol is unbounded."""


# ----------------------------------------------------------------------------
# test functions
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class TestFunction:
    """Compactly supported test function: a clipped monomial or a hat.

    Monomials evaluate (t/scale)^degree inside ``window`` and 0 outside;
    ``scale`` keeps functional gaps comparable across symbols of very
    different magnitude.  Hats rise linearly to 1 at ``center`` over a
    support of length ``width``.
    """

    kind: str
    degree: int = 0
    window: tuple = (0.0, 1.0)
    scale: float = 1.0
    center: float = 0.0
    width: float = 1.0
    label: str = ""

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "monomial":
            lo, hi = self.window
            inside = (t >= lo) & (t <= hi)
            return np.where(inside, (t / self.scale) ** self.degree, 0.0)
        if self.kind == "hat":
            return np.maximum(0.0, 1.0 - np.abs(t - self.center) / (self.width / 2.0))
        raise ValueError(f"unknown test function kind {self.kind!r}")


def monomial(degree, window, scale=1.0) -> TestFunction:
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if not (window[0] <= window[1]):
        raise ValueError("window must be ordered")
    label = f"t^{degree}" if scale == 1.0 else f"(t/{scale:.4g})^{degree}"
    return TestFunction("monomial", degree=degree, window=tuple(window),
                        scale=float(scale), label=label)


def hat(center, width) -> TestFunction:
    if width <= 0:
        raise ValueError("hat width must be positive")
    return TestFunction("hat", center=float(center), width=float(width),
                        label=f"hat({center:g},{width:g})")


def default_suite(window, degrees=(0, 1, 2, 3)) -> list:
    """Normalized clipped monomials on ``window`` (inflate it beforehand).

    The normalization divides out max(|lo|, |hi|) so the functionals are
    dimensionless; with raw t^d the gaps of wide-range symbols would be
    dominated by the symbol magnitude cubed rather than by convergence.
    """
    lo, hi = window
    scale = max(abs(lo), abs(hi), np.finfo(float).tiny)
    return [monomial(d, window, scale) for d in degrees]


def inflate(lo, hi, fraction=0.05):
    m = fraction * max(hi - lo, np.finfo(float).tiny)
    return lo - m, hi + m


# ----------------------------------------------------------------------------
# functionals
# ----------------------------------------------------------------------------

def empirical_functional(spectrum, F) -> float:
    """(1/n) sum F(values): the empirical side of the distribution limit."""
    values = spectrum.values if isinstance(spectrum, SpectralSet) else np.asarray(spectrum)
    return float(np.mean(F(values)))


def _quadrature_samples(kappa: SymbolExpr, rect, quad_res, rule):
    """Symbol samples and the kept-point count on the 2-d quadrature grid.

    ``gauss`` is a composite Gauss-Legendre rule with ``quad_res`` panels and
    two nodes per panel per axis (equal weights, so plain means are exact
    averages); ``midpoint`` is the cell-center rule with singular cells
    excluded and the measure renormalized accordingly.
    """
    (x0, x1), (t0, t1) = rect
    if rule == "gauss":
        g = 1.0 / (2.0 * math.sqrt(3.0))  # 2-point Gauss offsets on a unit panel
        px = (np.arange(quad_res) + 0.5) / quad_res
        off = np.array([-g, g]) / quad_res
        xs = (px[:, None] + off[None, :]).ravel()
        ts = xs
        x = x0 + (x1 - x0) * xs
        th = t0 + (t1 - t0) * ts
    else:
        x = x0 + (x1 - x0) * (np.arange(quad_res) + 0.5) / quad_res
        th = t0 + (t1 - t0) * (np.arange(quad_res) + 0.5) / quad_res
    vals, invalid = kappa.eval_masked(x[:, None], th[None, :])
    vals = np.broadcast_to(vals, (x.size, th.size))
    if np.iscomplexobj(vals):
        vals = vals.real
    flat = np.ravel(vals)
    if invalid is not None:
        keep = ~np.ravel(np.broadcast_to(invalid, (x.size, th.size)))
        if not np.any(keep):
            raise ZeroDivisionError("symbol is singular on the whole quadrature grid")
        flat = flat[keep]
    return flat


def symbol_functional(kappa: SymbolExpr, rect, F, quad_res=400, rule="auto",
                      absolute=False) -> float:
    """Domain average of F(kappa) (or F(|kappa|)) over the rectangle.

    Singular points of quotient symbols are excluded with measure
    renormalization, matching the almost-everywhere definition of such
    symbols.
    """
    if rule == "auto":
        rule = "midpoint" if kappa.has_quotient else "gauss"
    flat = _quadrature_samples(kappa, rect, quad_res, rule)
    if absolute:
        flat = np.abs(flat)
    return float(np.mean(F(flat)))


# ----------------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class FunctionalGap:
    label: str
    empirical: float
    symbol_value: float

    @property
    def gap(self):
        return abs(self.empirical - self.symbol_value)


@dataclass(frozen=True)
class DistributionReport:
    """Agreement summary between one spectrum and its predicted symbol."""

    case: str
    n: int
    alpha_n: float
    mode: str
    functionals: tuple = ()
    rearrangement_gap: float | None = None
    rearrangement_gap_rel: float | None = None
    outlier_count: int | None = None
    outlier_values: tuple = ()
    spectrum: SpectralSet | None = field(default=None, repr=False)
    overlay: tuple = field(default=(), repr=False)  # (t_i, symbol sample, eigenvalue)
    quad_rule: str = ""
    quad_res: int = 0
    quad_refinement: float | None = None
    backing: str = ""

    def max_gap(self):
        return max((f.gap for f in self.functionals), default=0.0)

    def to_json_dict(self):
        doc = {
            "case": self.case,
            "n": self.n,
            "alpha_n": self.alpha_n,
            "mode": self.mode,
            "functionals": [
                {"label": f.label, "empirical": f.empirical,
                 "symbol": f.symbol_value, "gap": f.gap}
                for f in self.functionals
            ],
            "rearrangement_gap": self.rearrangement_gap,
            "rearrangement_gap_rel": self.rearrangement_gap_rel,
            "outliers": {"count": self.outlier_count, "values": list(self.outlier_values)},
            "quadrature": {"rule": self.quad_rule, "resolution": self.quad_res,
                           "refinement_gap": self.quad_refinement},
            "backing": self.backing,
        }
        return doc


def _case_rect(case: DiscretizationCase):
    return ((0.0, 1.0), (0.0, math.pi) if case.theta_even else (-math.pi, math.pi))


def _backing(case: DiscretizationCase, mode: str) -> str:
    if mode == "sigma":
        return "sigma distribution (symbol algebra)"
    if case.symmetry in ("symmetric", "pencil"):
        return "lambda distribution (Hermitian)"
    if case.symmetry == "symmetrizable":
        return "lambda distribution (similar to Hermitian)"
    if case.companions.get("Z") is not None or case.companions.get("K_tilde") is not None:
        return "lambda distribution (Hermitian + vanishing-norm split)"
    return "exploratory (no Hermitian split registered)"


def weyl_compare(case: DiscretizationCase, n, F_suite=None, mode="lambda",
                 quad_res=400, refine_check=True) -> DistributionReport:
    """Test-functional comparison of the spectrum of alpha_n A_n with the
    predicted symbol.

    ``mode`` selects eigenvalues ("lambda") or singular values ("sigma");
    sigma mode compares against F(|kappa|) as the distribution definition
    prescribes.
    """
    if mode not in ("lambda", "sigma"):
        raise ValueError("mode must be 'lambda' or 'sigma'")
    kappa = case.predicted_symbol
    rect = _case_rect(case)
    rule = "midpoint" if kappa.has_quotient else "gauss"
    samples = _quadrature_samples(kappa, rect, quad_res, rule)
    if mode == "sigma":
        samples = np.abs(samples)
    if F_suite is None:
        F_suite = default_suite(inflate(float(samples.min()), float(samples.max())))

    spectrum = case.singular_spectrum(n) if mode == "sigma" else case.spectrum(n)

    gaps = []
    refinement = None
    if refine_check:
        coarse = _quadrature_samples(kappa, rect, max(2, quad_res // 2), rule)
        if mode == "sigma":
            coarse = np.abs(coarse)
    for F in F_suite:
        emp = empirical_functional(spectrum, F)
        sym = float(np.mean(F(samples)))
        gaps.append(FunctionalGap(F.label, emp, sym))
        if refine_check:
            d = abs(sym - float(np.mean(F(coarse))))
            refinement = d if refinement is None else max(refinement, d)

    return DistributionReport(
        case=case.name, n=int(n), alpha_n=float(case.alpha(n)), mode=mode,
        functionals=tuple(gaps), spectrum=spectrum,
        quad_rule=rule, quad_res=int(quad_res), quad_refinement=refinement,
        backing=_backing(case, mode),
    )


def outlier_count(spectrum, lo, hi, eps):
    """Spectrum entries outside [lo - eps, hi + eps]; returns (count, values)."""
    values = spectrum.values if isinstance(spectrum, SpectralSet) else np.asarray(spectrum)
    mask = (values < lo - eps) | (values > hi + eps)
    out = values[mask]
    return int(out.size), [float(v) for v in out]


def rearrangement_compare(case: DiscretizationCase, n, r=5000, rearr=None,
                          outlier_eps=1e-8) -> DistributionReport:
    """Sorted-spectrum vs rearranged-symbol comparison.

    e_n: eigenvalues of alpha_n A_n ascending; s_n: rearrangement samples at
    i/n.  Reports the sup-norm gap, its scale-free version (divided by the
    magnitude of the essential range), and outliers beyond the essential
    range by more than ``outlier_eps``.  Pass a precomputed ``rearr`` to
    amortize the sampling across several n.
    """
    if case.symbol_unbounded:
        raise UnboundedSymbolError(
            f"case {case.name}: the symbol is unbounded (essential sup is infinite); "
            "use sigma-mode Weyl comparison on a bounded window instead"
        )
    if rearr is None:
        rearr = monotone_rearrangement(case.predicted_symbol, _case_rect(case), r)
    spectrum = case.spectrum(n)  # complex spectra surface as ComplexSpectrumError
    t = np.arange(1, n + 1) / n
    s = rearr(t)
    e = spectrum.values
    gap = float(np.max(np.abs(s - e)))
    scale = max(abs(rearr.ess_inf), abs(rearr.ess_sup), np.finfo(float).tiny)
    count, values = outlier_count(spectrum, rearr.ess_inf, rearr.ess_sup, outlier_eps)
    return DistributionReport(
        case=case.name, n=int(n), alpha_n=float(case.alpha(n)), mode="lambda",
        rearrangement_gap=gap, rearrangement_gap_rel=gap / scale,
        outlier_count=count, outlier_values=tuple(values),
        spectrum=spectrum, overlay=(t, s, e),
        backing=_backing(case, "lambda"),
    )


# ----------------------------------------------------------------------------
# zero-distribution diagnostics
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class TrendReport:
    """Schatten-norm decay check for a correction-term family."""

    p: float
    ns: tuple
    norms: tuple
    ratios: tuple          # ||Z_n||_p / n^(1/p)
    decay_threshold: float
    monotone: bool
    passed: bool
    split_rank_ratios: tuple = ()
    split_norms: tuple = ()
    split_passed: bool | None = None

    @property
    def overall_pass(self):
        return self.passed or bool(self.split_passed)

    def to_json_dict(self):
        return {
            "p": self.p, "n": list(self.ns), "norms": list(self.norms),
            "ratios": list(self.ratios), "decay_threshold": self.decay_threshold,
            "monotone": self.monotone, "trend_pass": self.passed,
            "split_rank_ratios": list(self.split_rank_ratios),
            "split_norms": list(self.split_norms), "split_pass": self.split_passed,
            "pass": self.overall_pass,
        }


def _numerical_rank(A):
    Ad = as_dense(A)
    s = np.linalg.svd(Ad, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > s[0] * max(Ad.shape) * np.finfo(float).eps))


def zero_distribution_check(build, ns, p=2.0, split=None, decay_threshold=2.0) -> TrendReport:
    """Check that ||Z_n||_p = o(n^(1/p)) holds in trend over ``ns``.

    PASS requires the ratios ||Z_n||_p / n^(1/p) to decrease monotonically
    with the last below the first divided by ``decay_threshold``.  When a
    ``split`` callable returning (R_n, N_n) is supplied, the small-rank plus
    small-norm route is evaluated as well and either route passing suffices.
    """
    ns = tuple(int(n) for n in ns)
    norms, ratios = [], []
    for n in ns:
        z = schatten_norm(build(n), p)
        norms.append(z)
        ratios.append(z / n ** (1.0 / p) if not np.isinf(p) else z)
    ratios = tuple(ratios)
    monotone = all(b <= a * (1 + 1e-12) for a, b in zip(ratios, ratios[1:]))
    decayed = ratios[-1] < ratios[0] / decay_threshold if ratios[0] > 0 else True
    passed = monotone and decayed

    rank_ratios, n_norms, split_passed = (), (), None
    if split is not None:
        rr, nn = [], []
        for n in ns:
            R, N = split(n)
            rr.append(_numerical_rank(R) / n)
            nn.append(spectral_norm(N))
        rank_ratios, n_norms = tuple(rr), tuple(nn)
        rank_ok = rr[-1] < max(rr[0] / decay_threshold, 1e-15) or all(v == 0 for v in rr)
        norm_ok = nn[-1] < max(nn[0] / decay_threshold, 1e-15) or all(v <= 1e-14 for v in nn)
        split_passed = rank_ok and norm_ok

    return TrendReport(
        p=float(p), ns=ns, norms=tuple(norms), ratios=ratios,
        decay_threshold=float(decay_threshold), monotone=monotone, passed=passed,
        split_rank_ratios=rank_ratios, split_norms=n_norms, split_passed=split_passed,
    )
