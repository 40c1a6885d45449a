# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled slot-local kernels on dense n-particle state tensors.

A state of n slots over a d-dimensional space is stored flat, row-major, with
slot 0 the most significant digit. ``psi`` arrays passed to :func:`apply_local`
carry a trailing batch axis so whole operator columns can be pushed at once.
"""

import numpy as np


cdef inline Py_ssize_t _ipow(Py_ssize_t base, Py_ssize_t exp) nogil:
    cdef Py_ssize_t r = 1
    while exp > 0:
        r *= base
        exp -= 1
    return r


cdef void _apply_into(const double complex[:, ::1] psi,
                      const double complex[:, ::1] mat,
                      double complex[:, ::1] out,
                      Py_ssize_t slot, Py_ssize_t n, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t N = psi.shape[0]
    cdef Py_ssize_t B = psi.shape[1]
    cdef Py_ssize_t stride = _ipow(d, n - 1 - slot)
    cdef Py_ssize_t block = stride * d
    cdef Py_ssize_t base, a, b, inner, c, row, src
    cdef double complex m
    for row in range(N):
        for c in range(B):
            out[row, c] = 0
    base = 0
    while base < N:
        for a in range(d):
            for b in range(d):
                m = mat[a, b]
                if m.real == 0 and m.imag == 0:
                    continue
                row = base + a * stride
                src = base + b * stride
                if B == 1:
                    for inner in range(stride):
                        out[row + inner, 0] = out[row + inner, 0] + m * psi[src + inner, 0]
                else:
                    for inner in range(stride):
                        for c in range(B):
                            out[row + inner, c] = out[row + inner, c] + m * psi[src + inner, c]
        base += block


def apply_local(const double complex[:, ::1] psi, const double complex[:, ::1] mat,
                Py_ssize_t slot, Py_ssize_t n, Py_ssize_t d):
    """Return ``(I x .. x mat x .. x I) psi`` with ``mat`` acting on ``slot`` (0-based)."""
    if psi.shape[0] != _ipow(d, n) or mat.shape[0] != d or mat.shape[1] != d:
        raise ValueError("shape mismatch")
    if slot < 0 or slot >= n:
        raise ValueError("slot out of range")
    out = np.empty((psi.shape[0], psi.shape[1]), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    with nogil:
        _apply_into(psi, mat, o, slot, n, d)
    return out


def expect_chain(const double complex[::1] psi, const double complex[:, :, ::1] mats,
                 const long[::1] slots, Py_ssize_t n, Py_ssize_t d):
    """Return ``<psi| M_0 M_1 ... M_{k-1} |psi>``, applying the rightmost factor first."""
    cdef Py_ssize_t N = psi.shape[0]
    cdef Py_ssize_t k = mats.shape[0]
    if N != _ipow(d, n) or slots.shape[0] != k:
        raise ValueError("shape mismatch")
    cdef Py_ssize_t t
    for t in range(k):
        if slots[t] < 0 or slots[t] >= n:
            raise ValueError("slot out of range")
    buf_a = np.empty((N, 1), dtype=np.complex128)
    buf_b = np.empty((N, 1), dtype=np.complex128)
    cdef double complex[:, ::1] va = buf_a
    cdef double complex[:, ::1] vb = buf_b
    cdef double complex[:, ::1] tmp
    cdef double complex acc = 0
    cdef Py_ssize_t r
    with nogil:
        for r in range(N):
            va[r, 0] = psi[r]
        t = k - 1
        while t >= 0:
            _apply_into(va, mats[t], vb, slots[t], n, d)
            tmp = va
            va = vb
            vb = tmp
            t -= 1
        for r in range(N):
            acc = acc + (psi[r].real - 1j * psi[r].imag) * va[r, 0]
    return complex(acc)
