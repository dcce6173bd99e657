"""Discretized positive-momentum one-particle space.

Momentum representation is primary: every operator built downstream
(translations, inner-function multipliers) is diagonal here.  The continuum
measure is absorbed into the amplitudes at embed time, so inner products
are plain weighted sums over the grid.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GridMismatchError, SupportError, ValidationError
from .innerfun import eval_boundary, limit_at_zero
from .serialize import complex_pairs, doc_hash, dump_doc, from_complex_pairs, load_doc

# Below this multiple of the smallest grid point, singular factors are
# rejected rather than evaluated (catastrophic oscillation near p = 0).
SINGULAR_EVAL_FLOOR = 1e-3

EMBED_QUADRATURE_POINTS = 2048


@dataclass(frozen=True)
class MomentumGrid:
    points: np.ndarray
    weights: np.ndarray
    scheme: str

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        wts = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)
        if pts.ndim != 1 or pts.size < 2:
            raise ValidationError("grid needs at least two points")
        if pts[0] <= 0:
            raise ValidationError("grid momenta must be positive")
        if np.any(np.diff(pts) <= 0):
            raise ValidationError("grid momenta must be strictly increasing")
        if wts.shape != pts.shape or np.any(wts <= 0):
            raise ValidationError("weights must be positive and match the points")
        if self.scheme not in ("uniform", "geometric"):
            raise ValidationError(f"unknown scheme {self.scheme!r}")

    @property
    def size(self):
        return self.points.size

    @property
    def p_min(self):
        return float(self.points[0])

    @property
    def p_max(self):
        return float(self.points[-1])

    @staticmethod
    def _trapezoid_weights(pts):
        w = np.empty_like(pts)
        w[0] = (pts[1] - pts[0]) / 2
        w[-1] = (pts[-1] - pts[-2]) / 2
        w[1:-1] = (pts[2:] - pts[:-2]) / 2
        return w

    @classmethod
    def geometric(cls, size=64, p_min=1e-2, p_max=1e2):
        pts = np.geomspace(p_min, p_max, size)
        return cls(pts, cls._trapezoid_weights(pts), "geometric")

    @classmethod
    def uniform(cls, size=64, p_min=1e-2, p_max=1e2):
        pts = np.linspace(p_min, p_max, size)
        return cls(pts, cls._trapezoid_weights(pts), "uniform")

    def refined(self, factor=2):
        """Same scheme and cutoffs with `factor` times the point count."""
        ctor = MomentumGrid.geometric if self.scheme == "geometric" else MomentumGrid.uniform
        return ctor(self.size * factor, self.p_min, self.p_max)

    def as_doc(self):
        return {
            "points": [float(p) for p in self.points],
            "weights": [float(w) for w in self.weights],
            "scheme": self.scheme,
        }

    @classmethod
    def from_doc(cls, doc):
        return cls(np.asarray(doc["points"]), np.asarray(doc["weights"]), doc["scheme"])

    def save(self, path):
        return dump_doc(self.as_doc(), path)

    @classmethod
    def load(cls, path):
        return cls.from_doc(load_doc(path))

    def grid_hash(self):
        return doc_hash(self.as_doc())


@dataclass(frozen=True)
class OneParticleVector:
    amplitudes: np.ndarray
    grid: MomentumGrid

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amp)
        if amp.shape != self.grid.points.shape:
            raise ValidationError("amplitude count must match the grid size")
        if not np.all(np.isfinite(amp)):
            raise ValidationError("amplitudes must be finite")

    def as_doc(self):
        return {"amplitudes": complex_pairs(self.amplitudes), "grid": self.grid.as_doc()}

    @classmethod
    def from_doc(cls, doc):
        return cls(from_complex_pairs(doc["amplitudes"]), MomentumGrid.from_doc(doc["grid"]))

    def save(self, path):
        return dump_doc(self.as_doc(), path)

    @classmethod
    def load(cls, path):
        return cls.from_doc(load_doc(path))


@dataclass(frozen=True)
class TestFunctionSpec:
    """Real smooth test function on the line.

    gaussian_window: exp(-(x-c)^2/(2 width^2)) * cos(modulation*(x-c)),
    nominal support c +/- 5 width (tails logged, not exactly zero).
    smooth_bump: exp(1 - 1/(1-u^2)) * cos(modulation*(x-c)) with
    u = (x-c)/width, exactly supported on c +/- width.
    """

    family: str
    center: float
    width: float
    modulation: float = 0.0

    def __post_init__(self):
        if self.family not in ("gaussian_window", "smooth_bump"):
            raise ValidationError(f"unknown test-function family {self.family!r}")
        if self.width <= 0:
            raise ValidationError("width must be positive")

    @property
    def nominal_support(self):
        if self.family == "smooth_bump":
            return (self.center - self.width, self.center + self.width)
        return (self.center - 5 * self.width, self.center + 5 * self.width)

    def shifted(self, t):
        return TestFunctionSpec(self.family, self.center + t, self.width, self.modulation)

    def mirrored(self):
        return TestFunctionSpec(self.family, -self.center, self.width, self.modulation)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        u = (x - self.center) / self.width
        if self.family == "gaussian_window":
            env = np.exp(-0.5 * u * u)
        else:
            env = np.zeros_like(u)
            inside = np.abs(u) < 1
            env[inside] = np.exp(1.0 - 1.0 / (1.0 - u[inside] ** 2))
        if self.modulation:
            env = env * np.cos(self.modulation * (x - self.center))
        return env

    def fourier(self, p):
        """Positive-frequency datum fhat(p) = int f(x) e^{ipx} dx."""
        p = np.asarray(p, dtype=float)
        if self.family == "gaussian_window":
            s, w = self.width, self.modulation
            gauss = np.exp(-0.5 * s * s * (p - w) ** 2) + np.exp(-0.5 * s * s * (p + w) ** 2)
            return np.exp(1j * p * self.center) * s * math.sqrt(2 * math.pi) / 2 * gauss
        lo, hi = self.nominal_support
        x = np.linspace(lo, hi, EMBED_QUADRATURE_POINTS)
        fx = self(x)
        dx = x[1] - x[0]
        # trapezoid; the bump vanishes at both endpoints
        phases = np.exp(1j * np.outer(p, x))
        vals = phases @ fx * dx
        vals -= 0.5 * dx * (fx[0] * np.exp(1j * p * lo) + fx[-1] * np.exp(1j * p * hi))
        return vals

    def tail_mass(self):
        """L2 mass of the function outside its nominal support, relative to its total."""
        if self.family == "smooth_bump":
            return 0.0
        lo, hi = self.nominal_support
        span = hi - lo
        xs_in = np.linspace(lo, hi, 4096)
        xs_out = np.concatenate(
            [np.linspace(lo - 3 * span, lo, 4096), np.linspace(hi, hi + 3 * span, 4096)]
        )
        inside = np.trapezoid(self(xs_in) ** 2, xs_in)
        outside = np.trapezoid(self(xs_out) ** 2, xs_out)
        return float(math.sqrt(outside / (inside + outside)))


def embed(tf, grid):
    """Embed a test function: amplitudes sqrt(p_k) * fhat(p_k).

    The sqrt(p) factor absorbs the one-particle measure p dp into the
    amplitudes, so that sum_k w_k conj(f_k) g_k approximates the continuum
    inner product.
    """
    amps = np.sqrt(grid.points) * tf.fourier(grid.points)
    return OneParticleVector(amps, grid)


def reconstruct(vec, xs):
    """Position-space reconstruction from positive-frequency grid data.

    Uses the conjugate-symmetric extension to negative momenta, so the
    result is real up to rounding for any grid data coming from embed.
    """
    xs = np.asarray(xs, dtype=float)
    fhat = vec.amplitudes / np.sqrt(vec.grid.points)
    w = vec.grid.weights
    pos = np.exp(-1j * np.outer(xs, vec.grid.points)) @ (w * fhat)
    return (pos + np.conj(pos)) / (2 * math.pi)


def _same_grid(f, g):
    if f.grid is g.grid:
        return
    if f.grid.points.shape != g.grid.points.shape or not (
        np.array_equal(f.grid.points, g.grid.points) and np.array_equal(f.grid.weights, g.grid.weights)
    ):
        raise GridMismatchError("vectors live on different momentum grids")


def inner(f, g):
    """Grid inner product sum_k w_k conj(f_k) g_k."""
    _same_grid(f, g)
    return complex(np.sum(f.grid.weights * np.conj(f.amplitudes) * g.amplitudes))


def norm(f):
    return math.sqrt(max(inner(f, f).real, 0.0))


def symplectic_form(f, g):
    """Im of the inner product; the commutation datum of Weyl operators."""
    return inner(f, g).imag


def translate(f, t):
    """Multiply amplitudes by e^{i p t}; moves the support right by t >= 0."""
    return OneParticleVector(f.amplitudes * np.exp(1j * f.grid.points * t), f.grid)


def inner_function_multiplier(phi, s, grid):
    """The diagonal values phi(s * p_k) on the grid; s >= 0."""
    if s < 0:
        raise DomainError("the endomorphism parameter s must be >= 0")
    if s == 0:
        return np.full(grid.size, limit_at_zero(phi), dtype=complex)
    if phi.singular_mass > 0 and s < SINGULAR_EVAL_FLOOR:
        raise DomainError(
            f"s={s} pushes the singular factor below {SINGULAR_EVAL_FLOOR} x the grid floor"
        )
    return np.asarray(eval_boundary(phi, s * grid.points), dtype=complex)


def apply_inner_function(phi, s, f):
    """Apply the one-particle fiber operator phi(s P1); unitary."""
    return OneParticleVector(f.amplitudes * inner_function_multiplier(phi, s, f.grid), f.grid)


def require_left_localized(tf):
    if tf.nominal_support[1] > 0:
        raise SupportError(f"support {tf.nominal_support} is not contained in the left half-line")


def require_right_localized(tf):
    if tf.nominal_support[0] < 0:
        raise SupportError(f"support {tf.nominal_support} is not contained in the right half-line")


def one_particle_locality_defect(f_tf, g_tf, phi, s, grid):
    """|Im <f, phi(s P1) g>| for left-localized f and right-localized g.

    Zero in the continuum; the returned value is the grid-truncation
    residual of that statement.
    """
    require_left_localized(f_tf)
    require_right_localized(g_tf)
    f = embed(f_tf, grid)
    g = embed(g_tf, grid)
    return abs(symplectic_form(f, apply_inner_function(phi, s, g)))
