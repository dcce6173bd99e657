"""NumPy implementations of the occupancy-product kernels.

Mirror of the compiled `_core` module; `chiralwedge.kernels` picks one of
the two at import time.
"""

import numpy as np


def occ_product(occ, base):
    """prod_k base[k]**occ[b, k] for every basis row b."""
    base = np.asarray(base, dtype=complex)
    return np.prod(base[np.newaxis, :] ** occ, axis=1)


def occ_product_batch(occ, bases):
    """Column j of the result is occ_product(occ, bases[:, j])."""
    bases = np.asarray(bases, dtype=complex)
    if bases.shape[0] != occ.shape[1]:
        raise ValueError("bases must have one row per mode")
    out = np.empty((occ.shape[0], bases.shape[1]), dtype=complex)
    for j in range(bases.shape[1]):
        out[:, j] = np.prod(bases[np.newaxis, :, j] ** occ, axis=1)
    return out


def occ_product_real_batch(occ, bases):
    """Real-argument variant of occ_product_batch (coherent frames are real)."""
    bases = np.asarray(bases, dtype=float)
    if bases.shape[0] != occ.shape[1]:
        raise ValueError("bases must have one row per mode")
    out = np.empty((occ.shape[0], bases.shape[1]), dtype=float)
    for j in range(bases.shape[1]):
        out[:, j] = np.prod(bases[np.newaxis, :, j] ** occ, axis=1)
    return out


def phase_table(occ_left, occ_right, theta):
    """exp(i * a^T theta b) over all (left row a, right row b) pairs."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (occ_left.shape[1], occ_right.shape[1]):
        raise ValueError("theta must be (left modes, right modes)")
    angles = occ_left.astype(float) @ theta @ occ_right.astype(float).T
    return np.exp(1j * angles)
