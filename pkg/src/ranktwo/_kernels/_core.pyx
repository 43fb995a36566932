# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel backend.

Same algorithms and same SplitMix64 streams as the pure NumPy fallback;
restarts run sequentially here instead of in lockstep, so per-restart
random sequences match the fallback draw for draw (including draws that
are immediately overwritten, e.g. the identity frame of restart 0).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, log, sin, sqrt
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

BACKEND = "compiled"

cdef double U53 = 2.0 ** -53
cdef double PI = 3.14159265358979323846
cdef uint64_t GOLD = 0x9E3779B97F4A7C15
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9
cdef uint64_t MIX2 = 0x94D049BB133111EB


cdef inline uint64_t _mix(uint64_t z) nogil:
    z ^= z >> 30
    z *= MIX1
    z ^= z >> 27
    z *= MIX2
    z ^= z >> 31
    return z


cdef inline double _uniform(uint64_t *state) nogil:
    state[0] += GOLD
    return <double> (_mix(state[0]) >> 11) * U53


cdef inline double _gauss(uint64_t *state) nogil:
    cdef double u1 = _uniform(state)
    cdef double u2 = _uniform(state)
    if u1 == 0.0:
        u1 = U53
    return sqrt(-2.0 * log(u1)) * cos(2.0 * PI * u2)


cdef inline double _eta(double y) nogil:
    if y <= 0.0:
        return 0.0
    return -y * log(y)


cdef double _leaf_from_w(double complex[:, ::1] w, int m, int leaf,
                         double inv_log_base) nogil:
    """Leaf value of one member from its Kraus images w (m, 2)."""
    cdef int j, k
    cdef double det = 0.0, tr = 0.0, disc, root, yp, ym
    cdef double complex cr
    for j in range(m):
        tr += w[j, 0].real * w[j, 0].real + w[j, 0].imag * w[j, 0].imag
        tr += w[j, 1].real * w[j, 1].real + w[j, 1].imag * w[j, 1].imag
        for k in range(j + 1, m):
            cr = w[j, 0] * w[k, 1] - w[j, 1] * w[k, 0]
            det += cr.real * cr.real + cr.imag * cr.imag
    if leaf == 0:
        if det < 0.0:
            det = 0.0
        return 2.0 * sqrt(det)
    disc = tr * tr - 4.0 * det
    if disc < 0.0:
        disc = 0.0
    root = sqrt(disc)
    yp = 0.5 * (tr + root)
    ym = 0.5 * (tr - root)
    return (_eta(yp) + _eta(ym) - _eta(tr)) * inv_log_base


def roof_anneal(av_in, int n, int restarts, int steps, seed, int leaf,
                double log_base):
    """Simulated annealing over n-member decompositions; see the fallback
    backend for the parametrization.  Returns (best value, best U)."""
    av_arr = np.ascontiguousarray(av_in, dtype=complex)
    cdef double complex[:, :, ::1] av = av_arr
    cdef int m = av.shape[0]
    cdef int r = av.shape[2]
    cdef double inv_log_base = 1.0 / log_base
    cdef uint64_t seed64 = <uint64_t> (int(seed) & ((1 << 64) - 1))

    cdef int nrp = n * (n - 1) // 2
    rp0_arr = np.empty(nrp, dtype=np.int64)
    rp1_arr = np.empty(nrp, dtype=np.int64)
    cdef int64_t[::1] rp0 = rp0_arr
    cdef int64_t[::1] rp1 = rp1_arr
    cdef int i, j, k
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            rp0[k] = i
            rp1[k] = j
            k += 1

    sched_arr = np.empty((steps, 2), dtype=float)
    cdef double[:, ::1] sched = sched_arr
    cdef double frac
    for i in range(steps):
        frac = i / (steps - 1.0) if steps > 1 else 0.0
        sched[i, 0] = 0.5 * (1e-4 / 0.5) ** frac
        sched[i, 1] = 1e-8 ** frac

    u_arr = np.empty((n, r), dtype=complex)
    w_arr = np.empty((n, m, 2), dtype=complex)
    wp_arr = np.empty((m, 2), dtype=complex)
    wq_arr = np.empty((m, 2), dtype=complex)
    newp_arr = np.empty(r, dtype=complex)
    newq_arr = np.empty(r, dtype=complex)
    leaf_arr = np.empty(n, dtype=float)
    bestu_arr = np.empty((n, r), dtype=complex)
    globalu_arr = np.empty((n, r), dtype=complex)
    cdef double complex[:, ::1] u = u_arr
    cdef double complex[:, :, ::1] w = w_arr
    cdef double complex[:, ::1] wp = wp_arr
    cdef double complex[:, ::1] wq = wq_arr
    cdef double complex[::1] newp = newp_arr
    cdef double complex[::1] newq = newq_arr
    cdef double[::1] leaf_vals = leaf_arr
    cdef double complex[:, ::1] bestu = bestu_arr
    cdef double complex[:, ::1] globalu = globalu_arr

    cdef uint64_t state
    cdef int rs, t, a, b, p, q, pi
    cdef double re, im, nrm, t0, temp, alpha, phi, ca, sa
    cdef double u1, u2, u3, u4, lp, lq, dv, value, best_value
    cdef double global_best = np.inf
    cdef double complex c, ph, acc

    for rs in range(restarts):
        state = _mix(seed64 + (<uint64_t> (rs + 1)) * GOLD)

        for a in range(n):
            for b in range(r):
                re = _gauss(&state)
                im = _gauss(&state)
                u[a, b] = re + 1j * im
        if rs == 0:
            for a in range(n):
                for b in range(r):
                    u[a, b] = 1.0 if a == b else 0.0
        for b in range(r):
            nrm = 0.0
            for a in range(n):
                nrm += u[a, b].real * u[a, b].real + u[a, b].imag * u[a, b].imag
            nrm = sqrt(nrm)
            for a in range(n):
                u[a, b] = u[a, b] / nrm
            for j in range(b + 1, r):
                c = 0.0
                for a in range(n):
                    c = c + u[a, b].conjugate() * u[a, j]
                for a in range(n):
                    u[a, j] = u[a, j] - c * u[a, b]

        value = 0.0
        for a in range(n):
            for i in range(m):
                for j in range(2):
                    acc = 0.0
                    for b in range(r):
                        acc = acc + av[i, j, b] * u[a, b]
                    w[a, i, j] = acc
            leaf_vals[a] = _leaf_from_w(w[a], m, leaf, inv_log_base)
            value += leaf_vals[a]

        best_value = value
        bestu[:, :] = u
        t0 = 0.05 * (value if value > 1e-9 else 1e-9)

        for t in range(steps):
            u1 = _uniform(&state)
            u2 = _uniform(&state)
            u3 = _uniform(&state)
            u4 = _uniform(&state)
            pi = <int> (u1 * nrp)
            if pi > nrp - 1:
                pi = nrp - 1
            p = <int> rp0[pi]
            q = <int> rp1[pi]
            alpha = (2.0 * u2 - 1.0) * PI * sched[t, 0]
            phi = 2.0 * PI * u3
            ca = cos(alpha)
            sa = sin(alpha)
            ph = cos(phi) + 1j * sin(phi)

            for b in range(r):
                newp[b] = ca * u[p, b] - sa * ph * u[q, b]
                newq[b] = sa * ph.conjugate() * u[p, b] + ca * u[q, b]
            for i in range(m):
                for j in range(2):
                    acc = 0.0
                    for b in range(r):
                        acc = acc + av[i, j, b] * newp[b]
                    wp[i, j] = acc
                    acc = 0.0
                    for b in range(r):
                        acc = acc + av[i, j, b] * newq[b]
                    wq[i, j] = acc
            lp = _leaf_from_w(wp, m, leaf, inv_log_base)
            lq = _leaf_from_w(wq, m, leaf, inv_log_base)
            dv = lp + lq - leaf_vals[p] - leaf_vals[q]

            temp = t0 * sched[t, 1]
            if dv <= 0.0 or u4 < exp(-dv / temp):
                for b in range(r):
                    u[p, b] = newp[b]
                    u[q, b] = newq[b]
                for i in range(m):
                    for j in range(2):
                        w[p, i, j] = wp[i, j]
                        w[q, i, j] = wq[i, j]
                leaf_vals[p] = lp
                leaf_vals[q] = lq
                value += dv
                if value < best_value:
                    best_value = value
                    bestu[:, :] = u

        value = 0.0
        for a in range(n):
            for i in range(m):
                for j in range(2):
                    acc = 0.0
                    for b in range(r):
                        acc = acc + av[i, j, b] * bestu[a, b]
                    w[a, i, j] = acc
            value += _leaf_from_w(w[a], m, leaf, inv_log_base)
        if value < global_best:
            global_best = value
            globalu[:, :] = bestu

    return float(global_best), globalu_arr.copy()


def grid_scan(mb_in, tb_in, theta_in, double absdet, int res, double log_base):
    """Exhaustive Holevo scan over a res^3 Bloch lattice; ties keep the
    first point in row-major (ix, iy, iz) order."""
    mb_arr = np.ascontiguousarray(mb_in, dtype=float)
    tb_arr = np.ascontiguousarray(tb_in, dtype=float)
    theta_arr = np.ascontiguousarray(theta_in, dtype=complex)
    cdef double[:, ::1] mb = mb_arr
    cdef double[::1] tb = tb_arr
    cdef double complex m0 = theta_arr[0, 0]
    cdef double complex m1 = theta_arr[0, 1]
    cdef double complex m2 = theta_arr[1, 1]
    cdef double complex cm0 = m0.conjugate()
    cdef double complex cm1 = m1.conjugate()
    cdef double complex cm2 = m2.conjugate()
    cdef double inv_log_base = 1.0 / log_base

    cdef double best = -np.inf
    cdef int bx = 0, by = 0, bz = 0
    cdef int ix, iy, iz
    cdef double rx, ry, rz, rho2, x00, x11, trxy, detx, csq, root, yp, ym
    cdef double ent, sx, sy, sz, ns, sout, chi, step
    cdef double complex x01, x10, t0c, t1c, u0c, u1c, y00, y01, y10, y11

    step = 2.0 / (res - 1.0) if res > 1 else 0.0
    with nogil:
        for ix in range(res):
            rx = -1.0 + step * ix
            for iy in range(res):
                ry = -1.0 + step * iy
                for iz in range(res):
                    rz = -1.0 + step * iz
                    rho2 = rx * rx + ry * ry + rz * rz
                    if rho2 > 1.0:
                        continue
                    x00 = (1.0 + rz) / 2.0
                    x11 = (1.0 - rz) / 2.0
                    x01 = (rx - 1j * ry) / 2.0
                    x10 = x01.conjugate()
                    t0c = m0 * x00 + m1 * x01
                    t1c = m0 * x10 + m1 * x11
                    u0c = m1 * x00 + m2 * x01
                    u1c = m1 * x10 + m2 * x11
                    y00 = t0c * cm0 + t1c * cm1
                    y01 = t0c * cm1 + t1c * cm2
                    y10 = u0c * cm0 + u1c * cm1
                    y11 = u0c * cm1 + u1c * cm2
                    trxy = (x00 * y00 + x01 * y10 + x10 * y01 + x11 * y11).real
                    detx = (1.0 - rho2) / 4.0
                    csq = 4.0 * (trxy - 2.0 * absdet * detx)
                    if csq < 0.0:
                        csq = 0.0
                    if csq > 1.0:
                        csq = 1.0
                    root = sqrt(1.0 - csq)
                    yp = (1.0 + root) / 2.0
                    ym = (1.0 - root) / 2.0
                    ent = (_eta(yp) + _eta(ym)) * inv_log_base
                    sx = mb[0, 0] * rx + mb[0, 1] * ry + mb[0, 2] * rz + tb[0]
                    sy = mb[1, 0] * rx + mb[1, 1] * ry + mb[1, 2] * rz + tb[1]
                    sz = mb[2, 0] * rx + mb[2, 1] * ry + mb[2, 2] * rz + tb[2]
                    ns = sqrt(sx * sx + sy * sy + sz * sz)
                    if ns > 1.0:
                        ns = 1.0
                    sout = (_eta((1.0 + ns) / 2.0) + _eta((1.0 - ns) / 2.0)) * inv_log_base
                    chi = sout - ent
                    if chi > best:
                        best = chi
                        bx = ix
                        by = iy
                        bz = iz
    return best, bx, by, bz
