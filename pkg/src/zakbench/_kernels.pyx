# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping kernels.

Same contracts and operation order as _kernels_py; compiled with
-ffp-contract=off so both backends produce identical samples.
"""

from libc.math cimport sqrt

BACKEND = "cython"

SQRT2 = sqrt(2.0)
cdef double _SQRT2 = sqrt(2.0)


def evolve_c2(double[::1] cs, double[::1] sx, double[::1] sy,
              double complex[:, ::1] out):
    cdef Py_ssize_t i, n = cs.shape[0]
    cdef double c, a, b
    cdef double u1r = out[0, 0].real, u1i = out[0, 0].imag
    cdef double u2r = out[0, 1].real, u2i = out[0, 1].imag
    cdef double n1r, n1i, n2r, n2i
    cdef double complex I = 1j
    with nogil:
        for i in range(n):
            c = cs[i]
            a = sx[i]
            b = sy[i]
            n1r = c * u1r - b * u2r + a * u2i
            n1i = c * u1i - b * u2i - a * u2r
            n2r = b * u1r + a * u1i + c * u2r
            n2i = b * u1i - a * u1r + c * u2i
            u1r = n1r; u1i = n1i; u2r = n2r; u2i = n2i
            out[i + 1, 0] = u1r + I * u1i
            out[i + 1, 1] = u2r + I * u2i


def evolve_r4(double[::1] cs, double[::1] sx, double[::1] sy,
              double complex[:, ::1] out):
    cdef Py_ssize_t i, n = cs.shape[0]
    cdef double c, a, b
    cdef double p1r = out[0, 0].real, p1i = out[0, 0].imag
    cdef double p2r = out[0, 1].real, p2i = out[0, 1].imag
    cdef double p3r = out[0, 2].real, p3i = out[0, 2].imag
    cdef double p4r = out[0, 3].real, p4i = out[0, 3].imag
    cdef double n1r, n1i, n2r, n2i, n3r, n3i, n4r, n4i
    cdef double complex I = 1j
    with nogil:
        for i in range(n):
            c = cs[i]
            a = sx[i]
            b = sy[i]
            n1r = c * p1r + a * p3i + b * p4i
            n1i = c * p1i - a * p3r - b * p4r
            n2r = c * p2r - b * p3i + a * p4i
            n2i = c * p2i + b * p3r - a * p4r
            n3r = c * p3r + a * p1i - b * p2i
            n3i = c * p3i - a * p1r + b * p2r
            n4r = c * p4r + b * p1i + a * p2i
            n4i = c * p4i - b * p1r - a * p2r
            p1r = n1r; p1i = n1i; p2r = n2r; p2i = n2i
            p3r = n3r; p3i = n3i; p4r = n4r; p4i = n4i
            out[i + 1, 0] = p1r + I * p1i
            out[i + 1, 1] = p2r + I * p2i
            out[i + 1, 2] = p3r + I * p3i
            out[i + 1, 3] = p4r + I * p4i


def apply_steps(double complex[:, :, ::1] U, double complex[:, ::1] out):
    cdef Py_ssize_t i, r, s, n = U.shape[0], d = U.shape[1]
    cdef double complex acc
    cdef double complex cur[8]
    cdef double complex nxt[8]
    with nogil:
        for r in range(d):
            cur[r] = out[0, r]
        for i in range(n):
            for r in range(d):
                acc = 0
                for s in range(d):
                    acc = acc + U[i, r, s] * cur[s]
                nxt[r] = acc
            for r in range(d):
                cur[r] = nxt[r]
                out[i + 1, r] = nxt[r]


def lab_evolve(double[::1] ct, double[::1] st,
               double[::1] c1p, double[::1] c2p, double[::1] c3p, double[::1] c4p,
               double[::1] c1m, double[::1] c2m, double[::1] c3m, double[::1] c4m,
               double[:, ::1] out_p, double[:, ::1] out_v):
    cdef Py_ssize_t i, n = ct.shape[0]
    cdef double c, s
    cdef double p0 = out_p[0, 0], p1 = out_p[0, 1], p2 = out_p[0, 2], p3 = out_p[0, 3]
    cdef double v0 = out_v[0, 0], v1 = out_v[0, 1], v2 = out_v[0, 2], v3 = out_v[0, 3]
    cdef double y0, y1, y2, y3, z0, z1, z2, z3
    cdef double a1, a2, a3, a4, b1, b2, b3, b4
    cdef double ny0, ny1, ny2, ny3, nz0, nz1, nz2, nz3
    cdef double d02, d13, e02, e13
    with nogil:
        for i in range(n):
            c = ct[i]
            s = st[i]
            y0 = (c * p0 - s * p1 + p2) / _SQRT2
            y1 = (s * p0 + c * p1 + p3) / _SQRT2
            y2 = (-c * p0 + s * p1 + p2) / _SQRT2
            y3 = (-s * p0 - c * p1 + p3) / _SQRT2
            z0 = (c * v0 - s * v1 + v2) / _SQRT2
            z1 = (s * v0 + c * v1 + v3) / _SQRT2
            z2 = (-c * v0 + s * v1 + v2) / _SQRT2
            z3 = (-s * v0 - c * v1 + v3) / _SQRT2
            a1 = c1p[i]; a2 = c2p[i]; a3 = c3p[i]; a4 = c4p[i]
            b1 = c1m[i]; b2 = c2m[i]; b3 = c3m[i]; b4 = c4m[i]
            ny0 = a1 * y0 + a2 * z0; nz0 = a3 * y0 + a4 * z0
            ny1 = a1 * y1 + a2 * z1; nz1 = a3 * y1 + a4 * z1
            ny2 = b1 * y2 + b2 * z2; nz2 = b3 * y2 + b4 * z2
            ny3 = b1 * y3 + b2 * z3; nz3 = b3 * y3 + b4 * z3
            d02 = ny0 - ny2
            d13 = ny1 - ny3
            p0 = (c * d02 + s * d13) / _SQRT2
            p1 = (-s * d02 + c * d13) / _SQRT2
            p2 = (ny0 + ny2) / _SQRT2
            p3 = (ny1 + ny3) / _SQRT2
            e02 = nz0 - nz2
            e13 = nz1 - nz3
            v0 = (c * e02 + s * e13) / _SQRT2
            v1 = (-s * e02 + c * e13) / _SQRT2
            v2 = (nz0 + nz2) / _SQRT2
            v3 = (nz1 + nz3) / _SQRT2
            out_p[i + 1, 0] = p0; out_p[i + 1, 1] = p1
            out_p[i + 1, 2] = p2; out_p[i + 1, 3] = p3
            out_v[i + 1, 0] = v0; out_v[i + 1, 1] = v1
            out_v[i + 1, 2] = v2; out_v[i + 1, 3] = v3
