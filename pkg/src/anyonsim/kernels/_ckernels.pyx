# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled combinatorial kernels.

``immanant_sum`` enumerates permutations in Steinhaus-Johnson-Trotter order,
where consecutive permutations differ by one adjacent transposition, so the
inversion count tau changes by exactly +-1 per step and the phase weight
e^{i*phi*tau} is updated by one complex multiplication.  The accumulated
phase is resynchronised from the integer tau every 2^16 permutations to
bound rounding drift.  The term product is recomputed in O(N) per
permutation.

``ryser_permanent`` walks column subsets in Gray-code order, updating the
row-sum vector by one signed column per step.
"""

import numpy as np

from libc.math cimport cos, sin, M_PI
from libc.stdlib cimport free, malloc

__all__ = ["immanant_sum", "ryser_permanent"]

cdef enum:
    RESYNC_INTERVAL = 65536


cdef inline double complex _cis(double x) noexcept nogil:
    return cos(x) + 1j * sin(x)


def immanant_sum(a, double phi):
    """sum over permutations s of e^{i*phi*tau(s)} * prod_j a[j, s(j)]."""
    cdef double complex[:, ::1] mat = np.ascontiguousarray(a, dtype=np.complex128)
    cdef Py_ssize_t n = mat.shape[0]
    if mat.shape[1] != n:
        raise ValueError("immanant_sum requires a square matrix")
    if n == 0:
        return 1.0 + 0.0j

    cdef Py_ssize_t *val = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t *pos = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef int *direction = <int *> malloc(n * sizeof(int))
    if val == NULL or pos == NULL or direction == NULL:
        free(val); free(pos); free(direction)
        raise MemoryError()

    cdef double complex total = 0
    cdef double complex phase = 1
    cdef double complex prod
    cdef double complex step_fwd, step_bwd
    cdef bint fermionic = phi == M_PI
    cdef bint bosonic = phi == 0.0
    cdef long long tau = 0, since_resync = 0
    cdef Py_ssize_t j, mover, i_lo, neighbour, biggest, candidate_pos
    cdef int d

    if fermionic:
        step_fwd = -1.0
        step_bwd = -1.0
    else:
        step_fwd = _cis(phi)
        step_bwd = _cis(-phi)

    with nogil:
        for j in range(n):
            val[j] = j
            pos[j] = j
            direction[j] = -1  # all elements initially look left

        while True:
            prod = phase
            for j in range(n):
                prod = prod * mat[j, val[j]]
            total = total + prod

            # largest mobile element (direction neighbour exists and is smaller)
            biggest = -1
            for j in range(n - 1, -1, -1):
                candidate_pos = pos[j]
                neighbour = candidate_pos + direction[j]
                if 0 <= neighbour < n and val[neighbour] < j:
                    biggest = j
                    break
            if biggest < 0:
                break

            # swap it one step along its direction
            mover = biggest
            candidate_pos = pos[mover]
            neighbour = candidate_pos + direction[mover]
            j = val[neighbour]
            val[candidate_pos] = j
            val[neighbour] = mover
            pos[j] = candidate_pos
            pos[mover] = neighbour

            # adjacent swap changes the inversion count by exactly +-1
            i_lo = candidate_pos if candidate_pos < neighbour else neighbour
            if val[i_lo] > val[i_lo + 1]:
                tau = tau + 1
                if not bosonic:
                    phase = phase * step_fwd
            else:
                tau = tau - 1
                if not bosonic:
                    phase = phase * step_bwd

            for j in range(mover + 1, n):
                direction[j] = -direction[j]

            since_resync = since_resync + 1
            if since_resync == RESYNC_INTERVAL:
                since_resync = 0
                if fermionic:
                    phase = -1.0 if tau % 2 else 1.0
                elif not bosonic:
                    phase = _cis(phi * tau)

    free(val); free(pos); free(direction)
    return complex(total)


def ryser_permanent(a):
    """Permanent via Ryser's formula with Gray-code subset enumeration."""
    cdef double complex[:, ::1] mat = np.ascontiguousarray(a, dtype=np.complex128)
    cdef Py_ssize_t n = mat.shape[0]
    if mat.shape[1] != n:
        raise ValueError("ryser_permanent requires a square matrix")
    if n == 0:
        return 1.0 + 0.0j
    if n > 62:
        raise ValueError("subset enumeration limited to N <= 62")

    cdef double complex *rowsum = <double complex *> malloc(n * sizeof(double complex))
    if rowsum == NULL:
        raise MemoryError()

    cdef double complex total = 0
    cdef double complex prod
    cdef unsigned long long k, gray, bit
    cdef Py_ssize_t col, j
    cdef double subset_sign = 1.0

    with nogil:
        for j in range(n):
            rowsum[j] = 0
        for k in range(1, (<unsigned long long> 1) << n):
            col = 0
            while not (k >> col) & 1:
                col = col + 1
            gray = k ^ (k >> 1)
            bit = (gray >> col) & 1
            if bit:
                for j in range(n):
                    rowsum[j] = rowsum[j] + mat[j, col]
            else:
                for j in range(n):
                    rowsum[j] = rowsum[j] - mat[j, col]
            subset_sign = -subset_sign  # (-1)^{|S|}, |S| parity flips each step
            prod = subset_sign
            for j in range(n):
                prod = prod * rowsum[j]
            total = total + prod

    free(rowsum)
    if n % 2:
        return complex(-total)
    return complex(total)
