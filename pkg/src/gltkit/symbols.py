"""Symbols living on [0,1] x [-pi,pi]: trig polynomials in theta, coefficient
functions in x, and algebraic combinations kappa(x,theta) of the two.

The central numerical object is the monotone rearrangement of a real symbol:
sample kappa on a uniform lattice of the domain rectangle, sort the samples
ascending, and interpolate them piecewise linearly over equally spaced nodes
of [0,1].  The resulting nondecreasing function converges uniformly to the
rearranged symbol as the sampling parameter grows, with the endpoints
approaching the essential infimum and supremum.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

#: divisions with |denominator| below this guard count as singular points
DIV_GUARD = 1e-13


class SymbolSingularityError(ArithmeticError):
    """Symbol evaluation hit a division singularity."""


class ComplexSymbolError(TypeError):
    """A real-valued symbol was required (e.g. for rearrangement)."""


# ----------------------------------------------------------------------------
# trigonometric polynomials
# ----------------------------------------------------------------------------

class TrigPoly:
    """Trigonometric polynomial f(theta) = sum_{k=-r}^{r} c_k e^{i k theta}.

    ``coeffs`` holds (c_{-r}, ..., c_0, ..., c_r).  The polynomial is flagged
    real-valued when the coefficients are Hermitian, c_{-k} = conj(c_k).
    """

    def __init__(self, coeffs):
        coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if coeffs.size % 2 != 1:
            raise ValueError("need an odd number of coefficients c_{-r}..c_r")
        self.coeffs = coeffs
        self.degree = coeffs.size // 2
        self.real_valued = bool(np.allclose(coeffs, np.conj(coeffs[::-1]), atol=1e-15))

    @classmethod
    def from_cosines(cls, cosine_coeffs):
        """Build a0 + a1 cos(theta) + a2 cos(2 theta) + ... (always real-valued)."""
        a = np.asarray(cosine_coeffs, dtype=float)
        r = a.size - 1
        c = np.zeros(2 * r + 1, dtype=complex)
        c[r] = a[0]
        for k in range(1, r + 1):
            c[r + k] = c[r - k] = a[k] / 2.0
        return cls(c)

    @classmethod
    def sine(cls):
        """sin(theta) = (e^{i theta} - e^{-i theta}) / (2i)."""
        return cls([0.5j, 0.0, -0.5j])

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        r = self.degree
        if self.real_valued:
            # anchored form f(0) - 4 sum Re(c_k) sin^2(k theta/2) - 2 sum Im(c_k)
            # sin(k theta): analytically identical to the Fourier sum but free
            # of the O(1) cancellation at the stencil zeros near theta = 0
            at_zero = math.fsum([self.coeffs[r].real] + [2.0 * self.coeffs[r + k].real
                                                         for k in range(1, r + 1)])
            out = np.full(theta.shape, at_zero, dtype=float)
            for k in range(1, r + 1):
                ck = self.coeffs[r + k]
                out = out - 4.0 * ck.real * np.sin(k * theta / 2.0) ** 2 \
                          - 2.0 * ck.imag * np.sin(k * theta)
            return out
        out = np.full(theta.shape, self.coeffs[r], dtype=complex)
        for k in range(1, r + 1):
            out = out + self.coeffs[r + k] * np.exp(1j * k * theta) \
                      + self.coeffs[r - k] * np.exp(-1j * k * theta)
        return out

    def sup_norm(self, grid=100001):
        """max |f| on a fine theta grid (exact enough for certificates at
        the resolutions used here; known symbols pass their exact value)."""
        th = np.linspace(-np.pi, np.pi, grid)
        return float(np.max(np.abs(self(th))))

    def __repr__(self):
        return f"TrigPoly(degree={self.degree}, real_valued={self.real_valued})"


def trig_eval(f: TrigPoly, theta):
    """Evaluate the finite Fourier sum of ``f`` at ``theta``."""
    return f(theta)


#: symbols of the standard stencils used throughout the builders
LAPLACE_SYMBOL = TrigPoly.from_cosines([2.0, -2.0])            # 2 - 2 cos
FOURTH_DERIVATIVE_SYMBOL = TrigPoly.from_cosines([6.0, -8.0, 2.0])   # 6 - 8 cos + 2 cos 2t
FOURTH_ORDER_LAPLACE_SYMBOL = TrigPoly.from_cosines([30 / 12, -32 / 12, 2 / 12])
MASS_SYMBOL = TrigPoly.from_cosines([2 / 3, 1 / 3])            # (2 + cos)/3
SIN_SYMBOL = TrigPoly.sine()


# ----------------------------------------------------------------------------
# coefficient functions on [0, 1]
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Coefficient:
    """Real function a(x) on [0,1] with regularity metadata.

    ``regularity`` is one of "continuous", "ae_continuous", "L1"; only the
    last admits unbounded values.  ``exact_modulus`` optionally supplies the
    true modulus of continuity for certificate checks.
    """

    name: str
    fn: callable = field(repr=False)
    regularity: str = "continuous"
    exact_modulus: callable | None = field(default=None, repr=False)
    singular_points: tuple = ()

    def __post_init__(self):
        if self.regularity not in ("continuous", "ae_continuous", "L1"):
            raise ValueError(f"unknown regularity tag {self.regularity!r}")

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))

    @property
    def bounded(self):
        return self.regularity != "L1"

    @classmethod
    def from_table(cls, xs, values, name="table"):
        """Piecewise-linear coefficient through (xs, values), xs ascending in [0,1]."""
        xs = np.asarray(xs, dtype=float)
        values = np.asarray(values, dtype=float)
        if xs.ndim != 1 or xs.shape != values.shape or xs.size < 2:
            raise ValueError("need matching 1-d x/value columns with >= 2 rows")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("x column must be strictly ascending")
        if xs[0] < 0 or xs[-1] > 1:
            raise ValueError("x values must lie in [0, 1]")
        return cls(name, lambda x: np.interp(x, xs, values), "continuous")

    @classmethod
    def from_csv(cls, path):
        """Load a table coefficient from a CSV with header ``x,value``."""
        data = np.genfromtxt(path, delimiter=",", names=True)
        if data.dtype.names is None or tuple(data.dtype.names) != ("x", "value"):
            raise ValueError("coefficient CSV needs header 'x,value'")
        return cls.from_table(data["x"], data["value"], name=f"csv:{path}")


def _omega_linear(delta):
    return float(min(delta, 1.0))


def _omega_xexp(delta):
    # x e^{-x} is increasing on [0,1] with decreasing slope, so the largest
    # increment over a delta-window sits at the left endpoint.
    d = min(delta, 1.0)
    return float(d * np.exp(-d))


def _omega_expx(delta):
    d = min(delta, 1.0)
    return float(np.e - np.exp(1.0 - d))


COEFFICIENT_PRESETS = {
    "one": Coefficient("one", lambda x: np.ones_like(x), "continuous", lambda d: 0.0),
    "x": Coefficient("x", lambda x: x, "continuous", _omega_linear),
    "xexp": Coefficient("xexp", lambda x: x * np.exp(-x), "continuous", _omega_xexp),
    "1+x": Coefficient("1+x", lambda x: 1.0 + x, "continuous", _omega_linear),
    "expx": Coefficient("expx", np.exp, "continuous", _omega_expx),
}


def coefficient_preset(name: str) -> Coefficient:
    """Resolve a preset name or ``csv:PATH`` spec to a Coefficient."""
    if name in COEFFICIENT_PRESETS:
        return COEFFICIENT_PRESETS[name]
    if name.startswith("csv:"):
        return Coefficient.from_csv(name[4:])
    raise KeyError(
        f"unknown coefficient {name!r}; presets: {sorted(COEFFICIENT_PRESETS)} or csv:PATH"
    )


# ----------------------------------------------------------------------------
# symbol expression trees
# ----------------------------------------------------------------------------

class SymbolExpr:
    """Node of a symbol expression tree over (x, theta).

    Evaluation broadcasts numpy-style, so passing x with shape (m, 1) and
    theta with shape (1, n) evaluates the symbol on the full m-by-n grid
    while x-only and theta-only subtrees stay one-dimensional.
    """

    is_real: bool = True
    has_quotient: bool = False

    def _eval(self, x, theta, invalid):
        raise NotImplementedError

    def __call__(self, x, theta):
        """Evaluate without singularity tracking; NaN marks singular points."""
        vals, invalid = self.eval_masked(x, theta)
        if invalid is not None and np.any(invalid):
            vals = np.where(invalid, np.nan, vals)
        return vals

    def eval_masked(self, x, theta):
        """Evaluate on broadcastable arrays, returning (values, invalid_mask).

        ``invalid_mask`` is None when no division guard was tripped.
        """
        x = np.asarray(x, dtype=float)
        theta = np.asarray(theta, dtype=float)
        invalid = []
        vals = self._eval(x, theta, invalid)
        if not invalid:
            return vals, None
        mask = invalid[0]
        for m in invalid[1:]:
            mask = mask | m
        mask = np.broadcast_to(mask, np.broadcast_shapes(np.shape(vals), mask.shape))
        return vals, mask

    def __add__(self, other):
        return Sum((self, _as_symbol(other)))

    __radd__ = __add__

    def __mul__(self, other):
        return Prod((self, _as_symbol(other)))

    __rmul__ = __mul__

    # serialization -------------------------------------------------------

    def to_json_obj(self):
        raise NotImplementedError

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @staticmethod
    def from_json_obj(obj, coefficients=None):
        return _symbol_from_json(obj, coefficients or COEFFICIENT_PRESETS)

    @staticmethod
    def from_json(text, coefficients=None):
        return SymbolExpr.from_json_obj(json.loads(text), coefficients)


def _as_symbol(value):
    if isinstance(value, SymbolExpr):
        return value
    if isinstance(value, Coefficient):
        return CoeffFactor(value)
    if isinstance(value, TrigPoly):
        return TrigFactor(value)
    if np.isscalar(value):
        return TrigFactor(TrigPoly([complex(value)]))
    raise TypeError(f"cannot use {value!r} as a symbol factor")


class CoeffFactor(SymbolExpr):
    def __init__(self, coefficient: Coefficient):
        self.coefficient = coefficient
        self.is_real = True
        self.has_quotient = False

    def _eval(self, x, theta, invalid):
        return self.coefficient(x)

    def to_json_obj(self):
        return f"coeff:{self.coefficient.name}"

    def __str__(self):
        return f"{self.coefficient.name}(x)"


class TrigFactor(SymbolExpr):
    def __init__(self, poly: TrigPoly):
        self.poly = poly
        self.is_real = poly.real_valued
        self.has_quotient = False

    def _eval(self, x, theta, invalid):
        return self.poly(theta)

    def to_json_obj(self):
        c = self.poly.coeffs
        if np.allclose(c.imag, 0.0):
            payload = [float(v) for v in c.real]
        else:
            payload = [[float(v.real), float(v.imag)] for v in c]
        return "trig:" + json.dumps(payload)

    def __str__(self):
        return f"trig[deg {self.poly.degree}](theta)"


class Sum(SymbolExpr):
    def __init__(self, terms):
        self.terms = tuple(terms)
        self.is_real = all(t.is_real for t in self.terms)
        self.has_quotient = any(t.has_quotient for t in self.terms)

    def _eval(self, x, theta, invalid):
        out = self.terms[0]._eval(x, theta, invalid)
        for t in self.terms[1:]:
            out = out + t._eval(x, theta, invalid)
        return out

    def to_json_obj(self):
        return {"kind": "sum", "children": [t.to_json_obj() for t in self.terms]}

    def __str__(self):
        return " + ".join(str(t) for t in self.terms)


class Prod(SymbolExpr):
    def __init__(self, factors):
        self.factors = tuple(factors)
        self.is_real = all(f.is_real for f in self.factors)
        self.has_quotient = any(f.has_quotient for f in self.factors)

    def _eval(self, x, theta, invalid):
        out = self.factors[0]._eval(x, theta, invalid)
        for f in self.factors[1:]:
            out = out * f._eval(x, theta, invalid)
        return out

    def to_json_obj(self):
        return {"kind": "prod", "children": [f.to_json_obj() for f in self.factors]}

    def __str__(self):
        return " * ".join(f"({f})" for f in self.factors)


class Quot(SymbolExpr):
    """Quotient node; construct through :func:`divide` so that the a.e.
    nonzero declaration on the denominator is explicit."""

    def __init__(self, num, den):
        self.num = num
        self.den = den
        self.is_real = num.is_real and den.is_real
        self.has_quotient = True

    def _eval(self, x, theta, invalid):
        nv = self.num._eval(x, theta, invalid)
        dv = self.den._eval(x, theta, invalid)
        small = np.abs(dv) < DIV_GUARD
        if np.any(small):
            invalid.append(small)
            dv = np.where(small, 1.0, dv)
        return nv / dv

    def to_json_obj(self):
        return {"kind": "quot", "children": [self.num.to_json_obj(), self.den.to_json_obj()]}

    def __str__(self):
        return f"({self.num}) / ({self.den})"


class Conj(SymbolExpr):
    def __init__(self, arg):
        self.arg = arg
        self.is_real = arg.is_real
        self.has_quotient = arg.has_quotient

    def _eval(self, x, theta, invalid):
        return np.conj(self.arg._eval(x, theta, invalid))

    def to_json_obj(self):
        return {"kind": "conj", "children": [self.arg.to_json_obj()]}

    def __str__(self):
        return f"conj({self.arg})"


def add(*terms):
    return Sum(tuple(_as_symbol(t) for t in terms))


def multiply(*factors):
    return Prod(tuple(_as_symbol(f) for f in factors))


def divide(num, den, nonzero_ae=False):
    """Quotient of symbols.  The caller must declare the denominator nonzero
    almost everywhere; isolated zeros are then treated as excluded singular
    points at evaluation time."""
    if not nonzero_ae:
        raise ValueError("divide() requires the denominator's nonzero_ae declaration")
    return Quot(_as_symbol(num), _as_symbol(den))


def conjugate(arg):
    return Conj(_as_symbol(arg))


def _symbol_from_json(obj, coefficients):
    if isinstance(obj, str):
        if obj.startswith("coeff:"):
            name = obj[6:]
            if name not in coefficients:
                raise KeyError(f"unknown coefficient name {name!r} in symbol JSON")
            return CoeffFactor(coefficients[name])
        if obj.startswith("trig:"):
            payload = json.loads(obj[5:])
            coeffs = [complex(v[0], v[1]) if isinstance(v, list) else complex(v) for v in payload]
            return TrigFactor(TrigPoly(coeffs))
        raise ValueError(f"unknown symbol leaf {obj!r}")
    kind = obj["kind"]
    children = [_symbol_from_json(c, coefficients) for c in obj["children"]]
    if kind == "sum":
        return Sum(children)
    if kind == "prod":
        return Prod(children)
    if kind == "quot":
        if len(children) != 2:
            raise ValueError("quot node needs exactly two children")
        return Quot(children[0], children[1])  # declaration was made when built
    if kind == "conj":
        if len(children) != 1:
            raise ValueError("conj node needs exactly one child")
        return Conj(children[0])
    raise ValueError(f"unknown symbol node kind {kind!r}")


def symbol_eval(kappa: SymbolExpr, x: float, theta: float):
    """Evaluate one point of a symbol; singular division raises."""
    vals, invalid = kappa.eval_masked(np.asarray(x, dtype=float), np.asarray(theta, dtype=float))
    if invalid is not None and np.any(invalid):
        raise SymbolSingularityError(f"symbol is singular at (x, theta) = ({x}, {theta})")
    v = complex(np.asarray(vals).reshape(-1)[0]) if np.ndim(vals) else complex(vals)
    return v.real if kappa.is_real else v


# ----------------------------------------------------------------------------
# monotone rearrangement
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Rearrangement:
    """Piecewise-linear nondecreasing interpolant of sorted symbol samples.

    ``samples`` has one more entry than the number of kept lattice samples:
    the first node at t = 0 carries a duplicate of the smallest sample so
    that the nodes are exactly (0, 1/N, ..., 1).  The endpoints approximate
    the essential infimum and supremum of the symbol on the rectangle.
    """

    samples: np.ndarray = field(repr=False)
    rect: tuple
    r: int
    excluded: int = 0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        if samples.size < 2:
            raise ValueError("need at least two interpolation samples")
        if np.any(np.diff(samples) < 0):
            raise ValueError("rearrangement samples must be nondecreasing")
        object.__setattr__(self, "samples", samples)

    @property
    def node_count(self):
        return self.samples.size

    @property
    def ess_inf(self):
        return float(self.samples[0])

    @property
    def ess_sup(self):
        return float(self.samples[-1])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0.0) or np.any(t > 1.0):
            raise ValueError("rearrangement is defined on [0, 1]")
        N = self.samples.size - 1
        return np.interp(t * N, np.arange(N + 1), self.samples)


def rearrangement_eval(R: Rearrangement, t):
    return R(t)


def _lattice(rect, r):
    return [lo + np.arange(1, r + 1) * (hi - lo) / r for lo, hi in rect]


def monotone_rearrangement(kappa, rect, r) -> Rearrangement:
    """Uniform-lattice monotone rearrangement of a real symbol on ``rect``.

    ``rect`` is a sequence of (lo, hi) intervals, one per variable; a
    SymbolExpr uses two, ([x_lo, x_hi], [theta_lo, theta_hi]).  Lattice
    points where a division guard trips are excluded and the node count
    shrinks accordingly (recorded in ``excluded``).
    """
    if r < 1:
        raise ValueError("sampling parameter r must be >= 1")
    rect = tuple((float(lo), float(hi)) for lo, hi in rect)
    axes = _lattice(rect, r)

    if isinstance(kappa, SymbolExpr):
        if len(rect) != 2:
            raise ValueError("a SymbolExpr needs a two-interval rectangle")
        if not kappa.is_real:
            raise ComplexSymbolError("monotone rearrangement needs a real-valued symbol")
        vals, invalid = kappa.eval_masked(axes[0][:, None], axes[1][None, :])
        vals = np.broadcast_to(vals, (r, r))
        if np.iscomplexobj(vals):
            vals = vals.real
        flat = np.ravel(vals)
        if invalid is not None:
            flat = flat[~np.ravel(np.broadcast_to(invalid, (r, r)))]
    else:
        fn = kappa.fn if isinstance(kappa, Coefficient) else kappa
        grids = np.meshgrid(*axes, indexing="ij") if len(rect) > 1 else [axes[0]]
        vals = np.asarray(fn(*grids), dtype=float)
        flat = np.ravel(np.broadcast_to(vals, tuple([r] * len(rect))))
        flat = flat[np.isfinite(flat)]

    excluded = r ** len(rect) - flat.size
    if flat.size == 0:
        raise SymbolSingularityError("all lattice points of the rearrangement are singular")
    flat = np.sort(flat)
    samples = np.concatenate(([flat[0]], flat))
    return Rearrangement(samples=samples, rect=rect, r=int(r), excluded=int(excluded))


# ----------------------------------------------------------------------------
# moduli of continuity
# ----------------------------------------------------------------------------

def _sliding_window_spread(values, width):
    """max over windows of ``width`` consecutive entries of (max - min)."""
    n = values.size
    width = min(width, n)
    if width <= 1:
        return 0.0
    maxd, mind = deque(), deque()
    best = 0.0
    for i in range(n):
        while maxd and values[maxd[-1]] <= values[i]:
            maxd.pop()
        maxd.append(i)
        while mind and values[mind[-1]] >= values[i]:
            mind.pop()
        mind.append(i)
        lo = i - width + 1
        if maxd[0] < lo:
            maxd.popleft()
        if mind[0] < lo:
            mind.popleft()
        if i >= width - 1:
            best = max(best, values[maxd[0]] - values[mind[0]])
    return float(best)


def modulus_of_continuity(a: Coefficient, delta, probe_count=4097):
    """Lattice lower estimate of omega_a(delta) = sup_{|x-y|<=delta} |a(x)-a(y)|.

    Probes a uniform lattice of [0,1]; exact for piecewise-linear data when
    delta is a multiple of the lattice step.  Nondecreasing in delta for a
    fixed lattice.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    x = np.linspace(0.0, 1.0, probe_count)
    vals = np.asarray(a(x), dtype=float)
    step = 1.0 / (probe_count - 1)
    width = int(np.floor(delta / step + 1e-12)) + 1
    return _sliding_window_spread(vals, width)


def modulus_upper_bound(a: Coefficient, delta, probe_count=4097, safety=1.05):
    """Upper bound on omega_a(delta) for certificate right-hand sides.

    Uses the coefficient's exact modulus when it is known; otherwise the
    lattice estimate inflated by ``safety``.
    """
    if a.exact_modulus is not None:
        return float(a.exact_modulus(delta))
    return safety * modulus_of_continuity(a, delta, probe_count)


def modulus_of_integral_continuity(f: Coefficient, delta, sample_count=100001):
    """Estimate of sup over |E| <= delta of the integral of |f| on E.

    The supremum is attained on the superlevel set of |f| of measure delta,
    so: sample |f| at midpoints, sort descending, and add up the top
    delta-fraction of cells (with a fractional last cell).
    """
    if not (0 < delta <= 1):
        raise ValueError("delta must lie in (0, 1]")
    mid = (np.arange(sample_count) + 0.5) / sample_count
    vals = np.sort(np.abs(np.asarray(f(mid), dtype=float)))[::-1]
    vals = vals[np.isfinite(vals)]
    m = vals.size
    k = int(np.floor(delta * m + 1e-12))
    total = vals[:k].sum() / m
    if k < m:
        total += (delta - k / m) * vals[k]
    return float(total)
