# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled occupancy-product kernels.

These inner loops dominate coherent-vector and diagonal-operator
construction; `chiralwedge.kernels` falls back to the NumPy versions in
`_kernels_np` when this module is not built.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()


def occ_product(cnp.int64_t[:, ::1] occ, double complex[::1] base):
    """prod_k base[k]**occ[b, k] for every basis row b."""
    cdef Py_ssize_t nbasis = occ.shape[0]
    cdef Py_ssize_t nmodes = occ.shape[1]
    out = np.empty(nbasis, dtype=np.complex128)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t b, k
    cdef cnp.int64_t e, n
    cdef double complex acc, z
    for b in range(nbasis):
        acc = 1.0
        for k in range(nmodes):
            e = occ[b, k]
            if e == 0:
                continue
            z = base[k]
            for n in range(e):
                acc = acc * z
        ov[b] = acc
    return out


def occ_product_batch(cnp.int64_t[:, ::1] occ, double complex[:, ::1] bases):
    """Column j of the result is occ_product(occ, bases[:, j])."""
    cdef Py_ssize_t nbasis = occ.shape[0]
    cdef Py_ssize_t nmodes = occ.shape[1]
    cdef Py_ssize_t ncols = bases.shape[1]
    if bases.shape[0] != nmodes:
        raise ValueError("bases must have one row per mode")
    out = np.empty((nbasis, ncols), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    cdef Py_ssize_t b, k, j
    cdef cnp.int64_t e, n
    cdef double complex acc, z
    for j in range(ncols):
        for b in range(nbasis):
            acc = 1.0
            for k in range(nmodes):
                e = occ[b, k]
                if e == 0:
                    continue
                z = bases[k, j]
                for n in range(e):
                    acc = acc * z
            ov[b, j] = acc
    return out


def occ_product_real_batch(cnp.int64_t[:, ::1] occ, double[:, ::1] bases):
    """Real-argument variant of occ_product_batch (coherent frames are real)."""
    cdef Py_ssize_t nbasis = occ.shape[0]
    cdef Py_ssize_t nmodes = occ.shape[1]
    cdef Py_ssize_t ncols = bases.shape[1]
    if bases.shape[0] != nmodes:
        raise ValueError("bases must have one row per mode")
    out = np.empty((nbasis, ncols), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t b, k, j
    cdef cnp.int64_t e, n
    cdef double acc, z
    for j in range(ncols):
        for b in range(nbasis):
            acc = 1.0
            for k in range(nmodes):
                e = occ[b, k]
                if e == 0:
                    continue
                z = bases[k, j]
                for n in range(e):
                    acc = acc * z
            ov[b, j] = acc
    return out


def phase_table(cnp.int64_t[:, ::1] occ_left, cnp.int64_t[:, ::1] occ_right,
                double[:, ::1] theta):
    """exp(i * a^T theta b) over all (left row a, right row b) pairs.

    theta[k, l] is the phase of the two-particle factor at momenta
    (p_k, q_l); integer occupancies make the power product exact as a
    single accumulated angle.
    """
    cdef Py_ssize_t nl = occ_left.shape[0]
    cdef Py_ssize_t nr = occ_right.shape[0]
    cdef Py_ssize_t m = occ_left.shape[1]
    if occ_right.shape[1] != theta.shape[1] or theta.shape[0] != m:
        raise ValueError("theta must be (left modes, right modes)")
    out = np.empty((nl, nr), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    cdef Py_ssize_t a, b, k, l
    cdef double ang, row
    for a in range(nl):
        for b in range(nr):
            ang = 0.0
            for k in range(m):
                if occ_left[a, k] == 0:
                    continue
                row = 0.0
                for l in range(theta.shape[1]):
                    if occ_right[b, l] != 0:
                        row += occ_right[b, l] * theta[k, l]
                ang += occ_left[a, k] * row
            ov[a, b] = cos(ang) + 1j * sin(ang)
    return out
