"""Truncated symmetric Fock space over a momentum grid.

The basis is the set of occupation multisets of grid indices with total
particle number <= n_max, ordered by particle number and then
lexicographically by the sorted index tuple.  Amplitude conventions are
fixed by the coherent-vector inner product

    <e^eta, e^xi> = sum_{n<=n_max} <eta, xi>^n / n!

realized with plain Euclidean dot products on the amplitude arrays: the
scaled mode variable a_k = sqrt(w_k) xi_k gives the multiset amplitude
prod_k a_k^{m_k} / sqrt(prod_k m_k!).
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    ConditioningError,
    GridMismatchError,
    OverflowGuardError,
    ValidationError,
)

# Coherent norms beyond this make the truncation tail meaningless and the
# amplitude products overflow-prone.
COHERENT_NORM_SQ_GUARD = 60.0

WEYL_FRAME_RADII = (0.5, 0.45, 0.4, 0.35, 0.3)
WEYL_FRAME_SEED = 20170927
WEYL_FRAME_MAX_COND = 1e9


class FockTruncation:
    """Occupation-multiset basis over a grid, with n <= n_max particles."""

    def __init__(self, grid, n_max):
        if n_max < 0:
            raise ValidationError("n_max must be >= 0")
        self.grid = grid
        self.n_max = int(n_max)
        m = grid.size
        basis = []
        for n in range(self.n_max + 1):
            basis.extend(itertools.combinations_with_replacement(range(m), n))
        self.basis = tuple(basis)
        self.index = {mult: i for i, mult in enumerate(self.basis)}
        occ = np.zeros((len(basis), m), dtype=np.int64)
        for i, mult in enumerate(basis):
            for k in mult:
                occ[i, k] += 1
        self.occupations = occ
        self.numbers = occ.sum(axis=1)
        self.energies = occ @ grid.points
        fact = np.array([math.prod(math.factorial(int(c)) for c in row) for row in occ], dtype=float)
        self.inv_sqrt_fact = 1.0 / np.sqrt(fact)
        self._weyl_frame = None

    @property
    def dim(self):
        return len(self.basis)

    def scaled_amplitudes(self, vec):
        """Mode variable a_k = sqrt(w_k) * xi_k for a OneParticleVector."""
        if vec.grid is not self.grid and not np.array_equal(vec.grid.points, self.grid.points):
            raise GridMismatchError("vector grid does not match the truncation grid")
        return np.sqrt(self.grid.weights) * vec.amplitudes

    def describe(self):
        return {"grid": self.grid.as_doc(), "n_max": self.n_max, "dim": self.dim}


@dataclass(frozen=True)
class FockVector:
    amplitudes: np.ndarray
    truncation: FockTruncation

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amp)
        if amp.shape != (self.truncation.dim,):
            raise ValidationError("amplitude count must equal the truncation dimension")

    def inner(self, other):
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


def vacuum(tr):
    amp = np.zeros(tr.dim, dtype=complex)
    amp[0] = 1.0
    return FockVector(amp, tr)


@dataclass(frozen=True)
class FockOperator:
    """Operator on a truncation; representation in {diagonal, sparse, dense}."""

    rep: str
    data: object
    truncation: FockTruncation

    def __post_init__(self):
        tr = self.truncation
        if self.rep == "diagonal":
            d = np.asarray(self.data, dtype=complex)
            if d.shape != (tr.dim,):
                raise ValidationError("diagonal length must equal dim")
            object.__setattr__(self, "data", d)
        elif self.rep == "dense":
            m = np.asarray(self.data, dtype=complex)
            if m.shape != (tr.dim, tr.dim):
                raise ValidationError("dense shape must be (dim, dim)")
            object.__setattr__(self, "data", m)
        elif self.rep == "sparse":
            rows, cols, vals = self.data
            rows = np.asarray(rows, dtype=np.int64)
            cols = np.asarray(cols, dtype=np.int64)
            vals = np.asarray(vals, dtype=complex)
            if not (rows.shape == cols.shape == vals.shape):
                raise ValidationError("sparse triplet arrays must share a shape")
            if rows.size and (rows.min() < 0 or rows.max() >= tr.dim or cols.min() < 0 or cols.max() >= tr.dim):
                raise ValidationError("sparse indices out of range")
            object.__setattr__(self, "data", (rows, cols, vals))
        else:
            raise ValidationError(f"unknown representation {self.rep!r}")

    def to_dense(self):
        if self.rep == "dense":
            return self.data
        if self.rep == "diagonal":
            return np.diag(self.data)
        rows, cols, vals = self.data
        out = np.zeros((self.truncation.dim, self.truncation.dim), dtype=complex)
        np.add.at(out, (rows, cols), vals)
        return out

    def apply(self, vec):
        if self.rep == "diagonal":
            return FockVector(self.data * vec.amplitudes, self.truncation)
        return FockVector(self.to_dense() @ vec.amplitudes, self.truncation)

    def compose(self, other):
        """self @ other."""
        if self.truncation is not other.truncation:
            raise GridMismatchError("operators live on different truncations")
        if self.rep == "diagonal" and other.rep == "diagonal":
            return FockOperator("diagonal", self.data * other.data, self.truncation)
        if self.rep == "diagonal":
            return FockOperator("dense", self.data[:, None] * other.to_dense(), self.truncation)
        if other.rep == "diagonal":
            return FockOperator("dense", self.to_dense() * other.data[None, :], self.truncation)
        return FockOperator("dense", self.to_dense() @ other.to_dense(), self.truncation)

    def adjoint(self):
        if self.rep == "diagonal":
            return FockOperator("diagonal", np.conj(self.data), self.truncation)
        return FockOperator("dense", self.to_dense().conj().T, self.truncation)

    def serializable(self):
        """(representation tag, flat data) per the on-disk contract."""
        if self.rep == "diagonal":
            return {"rep": "diagonal", "data": [[z.real, z.imag] for z in self.data]}
        if self.rep == "dense":
            return {"rep": "dense", "data": [[z.real, z.imag] for z in self.data.ravel()]}
        rows, cols, vals = self.data
        return {
            "rep": "sparse",
            "data": [[int(r), int(c), v.real, v.imag] for r, c, v in zip(rows, cols, vals)],
        }


def identity_operator(tr):
    return FockOperator("diagonal", np.ones(tr.dim, dtype=complex), tr)


def coherent_tail_bound(norm_sq, n_max):
    """Discarded-tail bound e^{x} - sum_{n<=n_max} x^n/n!, summed stably."""
    x = float(norm_sq)
    term = x ** (n_max + 1) / math.factorial(n_max + 1)
    total = 0.0
    n = n_max + 1
    while term > total * 1e-18 + 5e-324 and n < n_max + 400:
        total += term
        n += 1
        term *= x / n
    return total


def coherent_vector(xi, tr):
    """Truncated exponential vector e^xi."""
    a = tr.scaled_amplitudes(xi)
    nsq = float(np.sum(np.abs(a) ** 2))
    if nsq > COHERENT_NORM_SQ_GUARD:
        raise OverflowGuardError(
            f"||xi||^2 = {nsq:.3g} exceeds the guard {COHERENT_NORM_SQ_GUARD}; "
            "use a larger n_max or a smaller vector"
        )
    amps = kernels.occ_product(tr.occupations, np.ascontiguousarray(a, dtype=complex))
    return FockVector(amps * tr.inv_sqrt_fact, tr)


def second_quantization(values, tr):
    """Diagonal lift Gamma(v) of unit-modulus one-particle multipliers."""
    v = np.ascontiguousarray(values, dtype=complex)
    if v.shape != (tr.grid.size,):
        raise ValidationError("need one multiplier per grid point")
    if np.max(np.abs(np.abs(v) - 1.0)) > 1e-12:
        raise ValidationError("only unitary second quantization is supported (|v_k| = 1)")
    return FockOperator("diagonal", kernels.occ_product(tr.occupations, v), tr)


def dGamma(values, tr):
    """Additive lift: diagonal value sum over the multiset of values(p_k)."""
    if callable(values):
        q = np.asarray(values(tr.grid.points), dtype=float)
    else:
        q = np.asarray(values, dtype=float)
    if q.shape != (tr.grid.size,):
        raise ValidationError("need one value per grid point")
    if not np.all(np.isfinite(q)):
        raise ValidationError("dGamma values must be finite")
    return FockOperator("diagonal", (tr.occupations @ q).astype(complex), tr)


def number_operator(tr):
    """dGamma(1): the canonical vacuum-zero integer charge of the parity symmetry."""
    return FockOperator("diagonal", tr.numbers.astype(complex), tr)


def parity_generator(tr):
    """The self-adjoint unitary with +1 on even and -1 on odd particle number."""
    return FockOperator("diagonal", np.where(tr.numbers % 2 == 0, 1.0, -1.0).astype(complex), tr)


def _weyl_frame(tr):
    """Real coherent frame (directions, radii) plus the inverse frame matrix.

    Frame vectors are eta_j = r_j * u_j with fixed radii <= 0.5 and seeded
    real unit directions; the frame is part of the deterministic
    construction attached to the truncation.
    """
    if tr._weyl_frame is not None:
        return tr._weyl_frame
    rng = np.random.default_rng(WEYL_FRAME_SEED + 31 * tr.dim + tr.grid.size)
    m, dim = tr.grid.size, tr.dim
    dirs = rng.standard_normal((m, dim))
    dirs /= np.linalg.norm(dirs, axis=0, keepdims=True)
    radii = np.array([WEYL_FRAME_RADII[j % len(WEYL_FRAME_RADII)] for j in range(dim)])
    frame = dirs * radii[None, :]
    amps = kernels.occ_product_real_batch(tr.occupations, np.ascontiguousarray(frame))
    frame_matrix = amps * tr.inv_sqrt_fact[:, None]
    cond = np.linalg.cond(frame_matrix)
    if cond > WEYL_FRAME_MAX_COND:
        raise ConditioningError(f"coherent frame condition {cond:.3g} exceeds {WEYL_FRAME_MAX_COND:.0e}")
    inv = np.linalg.inv(frame_matrix)
    tr._weyl_frame = (frame, frame_matrix, inv, float(cond))
    return tr._weyl_frame


def _real_weyl(radial, tr):
    """Weyl operator of a componentwise-nonnegative real displacement.

    Built by solving the defining relation against the coherent frame:
    W e^{eta_j} = exp(-||r||^2/2 - <r, eta_j>) e^{r + eta_j}.
    """
    frame, _, inv, _ = _weyl_frame(tr)
    overlaps = radial @ frame
    nsq = float(radial @ radial)
    shifted = radial[:, None] + frame
    cols = kernels.occ_product_real_batch(tr.occupations, np.ascontiguousarray(shifted))
    cols = cols * tr.inv_sqrt_fact[:, None]
    cols = cols * np.exp(-0.5 * nsq - overlaps)[None, :]
    return cols @ inv


def weyl_operator(xi, tr):
    """Dense truncated Weyl operator W(xi).

    The displacement is split into phases and radial part, W(xi) =
    Gamma(u) W(|a|) Gamma(u)*, so the construction commutes exactly with
    every diagonal unitary second quantization; translation covariance of
    Weyl generators then holds at rounding level.
    """
    a = tr.scaled_amplitudes(xi)
    nsq = float(np.sum(np.abs(a) ** 2))
    if nsq > COHERENT_NORM_SQ_GUARD:
        raise OverflowGuardError(
            f"||xi||^2 = {nsq:.3g} exceeds the guard {COHERENT_NORM_SQ_GUARD}"
        )
    if nsq == 0.0:
        return FockOperator("dense", np.eye(tr.dim, dtype=complex), tr)
    radial = np.abs(a)
    safe = np.where(radial > 0, radial, 1.0)
    phases = np.where(radial > 0, a / safe, 1.0)
    w0 = _real_weyl(radial, tr)
    gu = kernels.occ_product(tr.occupations, np.ascontiguousarray(phases, dtype=complex))
    dense = gu[:, None] * w0 * np.conj(gu)[None, :]
    return FockOperator("dense", dense, tr)


def weyl_phase(f, g, tr):
    """The Weyl relation phase e^{-i Im<f,g>} in the scaled inner product."""
    af = tr.scaled_amplitudes(f)
    ag = tr.scaled_amplitudes(g)
    return complex(np.exp(-1j * np.vdot(af, ag).imag))


def unitary_defect(op):
    """||W* W - 1|| in the matrix 2-norm."""
    dense = op.to_dense()
    gram = dense.conj().T @ dense
    gram[np.diag_indices_from(gram)] -= 1.0
    return float(np.linalg.norm(gram, 2))


def weyl_frame_condition(tr):
    return _weyl_frame(tr)[3]
