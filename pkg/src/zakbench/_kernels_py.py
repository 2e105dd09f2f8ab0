"""Pure-Python stepping kernels (fallback for the compiled extension).

Each function fills a preallocated output whose row 0 holds the initial
state.  The arithmetic is written out in real components in exactly the same
order as the compiled versions so both backends produce identical samples.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def evolve_c2(cs, sx, sy, out):
    """Apply n two-level steps u -> U_i u with U_i = c_i I - i (sx_i sig_x + sy_i sig_y).

    cs, sx, sy: per-step cos(E dt) and sin(E dt)*(dx, dy)/E; out: complex (n+1, 2).
    """
    n = cs.shape[0]
    u1r = float(out[0, 0].real)
    u1i = float(out[0, 0].imag)
    u2r = float(out[0, 1].real)
    u2i = float(out[0, 1].imag)
    for i in range(n):
        c = cs[i]
        a = sx[i]
        b = sy[i]
        n1r = c * u1r - b * u2r + a * u2i
        n1i = c * u1i - b * u2i - a * u2r
        n2r = b * u1r + a * u1i + c * u2r
        n2i = b * u1i - a * u1r + c * u2i
        u1r, u1i, u2r, u2i = n1r, n1i, n2r, n2i
        out[i + 1, 0] = complex(u1r, u1i)
        out[i + 1, 1] = complex(u2r, u2i)


def evolve_r4(cs, sx, sy, out):
    """Same stepping in the real 4x4 representation on a complex 4-vector."""
    n = cs.shape[0]
    p1r = float(out[0, 0].real); p1i = float(out[0, 0].imag)
    p2r = float(out[0, 1].real); p2i = float(out[0, 1].imag)
    p3r = float(out[0, 2].real); p3i = float(out[0, 2].imag)
    p4r = float(out[0, 3].real); p4i = float(out[0, 3].imag)
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
        p1r, p1i, p2r, p2i = n1r, n1i, n2r, n2i
        p3r, p3i, p4r, p4i = n3r, n3i, n4r, n4i
        out[i + 1, 0] = complex(p1r, p1i)
        out[i + 1, 1] = complex(p2r, p2i)
        out[i + 1, 2] = complex(p3r, p3i)
        out[i + 1, 3] = complex(p4r, p4i)


def apply_steps(U, out):
    """Sequentially apply the step matrices U[i] (n, d, d) to out[0] (d,)."""
    n = U.shape[0]
    state = out[0].copy()
    for i in range(n):
        state = U[i] @ state
        out[i + 1] = state


SQRT2 = np.sqrt(2.0)


def lab_evolve(ct, st, c1p, c2p, c3p, c4p, c1m, c2m, c3m, c4m, out_p, out_v):
    """Step the four coupled oscillators through their instantaneous normal modes.

    ct, st: cos/sin of the Bloch angle at each midpoint; c1..c4 p/m: exact
    damped-oscillator propagator entries for the upper (+) and lower (-)
    stiffness branches; out_p/out_v: (n+1, 4) positions and velocities with
    row 0 set to the initial conditions.
    """
    n = ct.shape[0]
    p0 = float(out_p[0, 0]); p1 = float(out_p[0, 1])
    p2 = float(out_p[0, 2]); p3 = float(out_p[0, 3])
    v0 = float(out_v[0, 0]); v1 = float(out_v[0, 1])
    v2 = float(out_v[0, 2]); v3 = float(out_v[0, 3])
    for i in range(n):
        c = ct[i]
        s = st[i]
        # rotate into the instantaneous eigenbasis
        y0 = (c * p0 - s * p1 + p2) / SQRT2
        y1 = (s * p0 + c * p1 + p3) / SQRT2
        y2 = (-c * p0 + s * p1 + p2) / SQRT2
        y3 = (-s * p0 - c * p1 + p3) / SQRT2
        z0 = (c * v0 - s * v1 + v2) / SQRT2
        z1 = (s * v0 + c * v1 + v3) / SQRT2
        z2 = (-c * v0 + s * v1 + v2) / SQRT2
        z3 = (-s * v0 - c * v1 + v3) / SQRT2
        # exact damped-oscillator step per mode
        a1 = c1p[i]; a2 = c2p[i]; a3 = c3p[i]; a4 = c4p[i]
        b1 = c1m[i]; b2 = c2m[i]; b3 = c3m[i]; b4 = c4m[i]
        ny0 = a1 * y0 + a2 * z0; nz0 = a3 * y0 + a4 * z0
        ny1 = a1 * y1 + a2 * z1; nz1 = a3 * y1 + a4 * z1
        ny2 = b1 * y2 + b2 * z2; nz2 = b3 * y2 + b4 * z2
        ny3 = b1 * y3 + b2 * z3; nz3 = b3 * y3 + b4 * z3
        # rotate back
        d02 = ny0 - ny2
        d13 = ny1 - ny3
        p0 = (c * d02 + s * d13) / SQRT2
        p1 = (-s * d02 + c * d13) / SQRT2
        p2 = (ny0 + ny2) / SQRT2
        p3 = (ny1 + ny3) / SQRT2
        e02 = nz0 - nz2
        e13 = nz1 - nz3
        v0 = (c * e02 + s * e13) / SQRT2
        v1 = (-s * e02 + c * e13) / SQRT2
        v2 = (nz0 + nz2) / SQRT2
        v3 = (nz1 + nz3) / SQRT2
        out_p[i + 1, 0] = p0; out_p[i + 1, 1] = p1
        out_p[i + 1, 2] = p2; out_p[i + 1, 3] = p3
        out_v[i + 1, 0] = v0; out_v[i + 1, 1] = v1
        out_v[i + 1, 2] = v2; out_v[i + 1, 3] = v3
