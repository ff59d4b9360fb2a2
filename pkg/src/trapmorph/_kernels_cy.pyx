# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled phase kernels for the split-operator propagator.

The complex wavefunction is viewed as interleaved (re, im) float64 pairs so
the loops need no complex lvalue support; everything runs nogil in a single
pass over the array.
"""

from libc.math cimport cos, sin


def apply_quartic_phase(double[::1] psi_ri, double[::1] x, double[::1] x2,
                        double[::1] x4, double A, double B, double C,
                        double dt):
    """In-place psi *= exp(-i dt (A x^2 + B x^4 + C x)).

    psi_ri is the complex array reinterpreted as 2n float64 values.
    """
    cdef Py_ssize_t i, n = psi_ri.shape[0] // 2
    cdef double th, cs, sn, re, im
    if x.shape[0] != n or x2.shape[0] != n or x4.shape[0] != n:
        raise ValueError("coordinate arrays do not match psi length")
    with nogil:
        for i in range(n):
            th = -dt * (A * x2[i] + B * x4[i] + C * x[i])
            cs = cos(th)
            sn = sin(th)
            re = psi_ri[2 * i]
            im = psi_ri[2 * i + 1]
            psi_ri[2 * i] = re * cs - im * sn
            psi_ri[2 * i + 1] = re * sn + im * cs


def apply_phase_table(double[::1] psi_ri, double[::1] table_ri):
    """In-place psi *= table for a precomputed complex factor table."""
    cdef Py_ssize_t i, n = psi_ri.shape[0] // 2
    cdef double re, im, tr, ti
    if table_ri.shape[0] != psi_ri.shape[0]:
        raise ValueError("table length does not match psi")
    with nogil:
        for i in range(n):
            re = psi_ri[2 * i]
            im = psi_ri[2 * i + 1]
            tr = table_ri[2 * i]
            ti = table_ri[2 * i + 1]
            psi_ri[2 * i] = re * tr - im * ti
            psi_ri[2 * i + 1] = re * ti + im * tr
