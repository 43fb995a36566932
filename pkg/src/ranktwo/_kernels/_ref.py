"""Pure NumPy kernel backend.

Implements the two hot loops (convex-roof annealing and the Bloch-ball
capacity scan) with the same algorithm and the same SplitMix64 random
stream as the compiled backend, vectorized across restarts in lockstep.
Bit-for-bit determinism holds per backend; across backends the summation
order differs, so agreement is only to rounding.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_MASK = (1 << 64) - 1
_GOLD = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_U53 = 2.0**-53

_G64 = np.uint64(_GOLD)
_M64 = np.uint64(_MIX1)
_N64 = np.uint64(_MIX2)


def _mix_int(z: int) -> int:
    z &= _MASK
    z ^= z >> 30
    z = (z * _MIX1) & _MASK
    z ^= z >> 27
    z = (z * _MIX2) & _MASK
    z ^= z >> 31
    return z


def stream_states(seed: int, count: int) -> np.ndarray:
    """Initial SplitMix64 states for `count` independent restart streams."""
    vals = [_mix_int((seed + (i + 1) * _GOLD) & _MASK) for i in range(count)]
    return np.array(vals, dtype=np.uint64)


def _next(state: np.ndarray) -> np.ndarray:
    state += _G64
    z = state.copy()
    z ^= z >> np.uint64(30)
    z *= _M64
    z ^= z >> np.uint64(27)
    z *= _N64
    z ^= z >> np.uint64(31)
    return z


def _uniform(state: np.ndarray) -> np.ndarray:
    return (_next(state) >> np.uint64(11)).astype(np.float64) * _U53


def _gauss(state: np.ndarray) -> np.ndarray:
    u1 = _uniform(state)
    u2 = _uniform(state)
    u1 = np.where(u1 == 0.0, _U53, u1)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


def _init_frames(state: np.ndarray, restarts: int, n: int, r: int) -> np.ndarray:
    """Random isometry frames: Gaussian matrix, then modified Gram-Schmidt
    over columns.  Restart 0 is the deterministic identity-padded frame."""
    g = np.empty((restarts, n, r), dtype=complex)
    for j in range(n):
        for k in range(r):
            re = _gauss(state)
            im = _gauss(state)
            g[:, j, k] = re + 1j * im
    g[0] = 0.0
    g[0, :r, :r] = np.eye(r)
    for k in range(r):
        nrm = np.sqrt(np.sum(np.abs(g[:, :, k]) ** 2, axis=1))
        g[:, :, k] /= nrm[:, None]
        for l in range(k + 1, r):
            c = np.sum(g[:, :, k].conj() * g[:, :, l], axis=1)
            g[:, :, l] -= c[:, None] * g[:, :, k]
    return g


def _eta(y: np.ndarray) -> np.ndarray:
    out = np.zeros_like(y)
    pos = y > 0.0
    out[pos] = -y[pos] * np.log(y[pos])
    return out


def _member_leaf(w, pairs, leaf: int, inv_log_base: float):
    """Leaf values of ensemble members from their Kraus images w[..., m, 2]."""
    j0, j1 = pairs
    cross = w[..., j0, 0] * w[..., j1, 1] - w[..., j0, 1] * w[..., j1, 0]
    det = np.sum(np.abs(cross) ** 2, axis=-1)
    if leaf == 0:
        return 2.0 * np.sqrt(np.clip(det, 0.0, None))
    tr = np.sum(np.abs(w) ** 2, axis=(-2, -1))
    disc = np.clip(tr * tr - 4.0 * det, 0.0, None)
    root = np.sqrt(disc)
    yp = 0.5 * (tr + root)
    ym = 0.5 * (tr - root)
    return (_eta(yp) + _eta(ym) - _eta(tr)) * inv_log_base


def roof_anneal(
    av: np.ndarray,
    n: int,
    restarts: int,
    steps: int,
    seed: int,
    leaf: int,
    log_base: float,
) -> tuple[float, np.ndarray]:
    """Simulated annealing over n-member decompositions.

    av is the stack of Kraus matrices applied to the rank factor of the
    input, shape (m, 2, r).  The decomposition is parametrized by an n x r
    matrix U with orthonormal columns; moves are Givens rotations mixing
    two of its rows.  Returns the best objective and the U attaining it.
    """
    av = np.ascontiguousarray(av, dtype=complex)
    m, _, r = av.shape
    inv_log_base = 1.0 / log_base
    pairs = np.triu_indices(m, k=1)
    rp0, rp1 = np.triu_indices(n, k=1)
    nrp = len(rp0)

    state = stream_states(seed, restarts)
    u = _init_frames(state, restarts, n, r)
    w = np.einsum("mar,inr->inma", av, u)
    leaf_vals = _member_leaf(w, pairs, leaf, inv_log_base)
    value = leaf_vals.sum(axis=1)

    best_value = value.copy()
    best_u = u.copy()
    t0 = 0.05 * np.maximum(value, 1e-9)
    ar = np.arange(restarts)

    if steps > 1:
        frac = np.arange(steps) / (steps - 1)
    else:
        frac = np.zeros(steps)
    s_sched = 0.5 * (1e-4 / 0.5) ** frac
    t_frac = (1e-8) ** frac

    for t in range(steps):
        u1 = _uniform(state)
        u2 = _uniform(state)
        u3 = _uniform(state)
        u4 = _uniform(state)
        pi = np.minimum((u1 * nrp).astype(np.int64), nrp - 1)
        p = rp0[pi]
        q = rp1[pi]
        alpha = (2.0 * u2 - 1.0) * np.pi * s_sched[t]
        phi = 2.0 * np.pi * u3
        ca = np.cos(alpha)
        sa = np.sin(alpha)
        ph = np.cos(phi) + 1j * np.sin(phi)

        up = u[ar, p, :]
        uq = u[ar, q, :]
        new_p = ca[:, None] * up - (sa * ph)[:, None] * uq
        new_q = (sa * ph.conj())[:, None] * up + ca[:, None] * uq
        wp = np.einsum("mar,ir->ima", av, new_p)
        wq = np.einsum("mar,ir->ima", av, new_q)
        lp = _member_leaf(wp, pairs, leaf, inv_log_base)
        lq = _member_leaf(wq, pairs, leaf, inv_log_base)
        dv = lp + lq - leaf_vals[ar, p] - leaf_vals[ar, q]

        temp = t0 * t_frac[t]
        accept = (dv <= 0.0) | (u4 < np.exp(-np.clip(dv, 0.0, None) / temp))
        idx = ar[accept]
        u[idx, p[accept], :] = new_p[accept]
        u[idx, q[accept], :] = new_q[accept]
        w[idx, p[accept]] = wp[accept]
        w[idx, q[accept]] = wq[accept]
        leaf_vals[idx, p[accept]] = lp[accept]
        leaf_vals[idx, q[accept]] = lq[accept]
        value[accept] += dv[accept]

        improved = value < best_value
        best_value[improved] = value[improved]
        best_u[improved] = u[improved]

    w_best = np.einsum("mar,inr->inma", av, best_u)
    final = _member_leaf(w_best, pairs, leaf, inv_log_base).sum(axis=1)
    k = int(np.argmin(final))
    return float(final[k]), best_u[k].copy()


def grid_scan(
    mb: np.ndarray,
    tb: np.ndarray,
    theta_m: np.ndarray,
    absdet: float,
    res: int,
    log_base: float,
) -> tuple[float, int, int, int]:
    """Exhaustive Holevo scan over a res^3 Bloch lattice.

    Lattice points outside the closed unit ball are skipped; ties keep the
    first point in row-major (ix, iy, iz) order.  Returns the best value
    and its lattice indices.
    """
    step = 2.0 / (res - 1.0) if res > 1 else 0.0
    axis = -1.0 + step * np.arange(res)
    ry = axis[:, None]
    rz = axis[None, :]
    m0, m1, m2 = theta_m[0, 0], theta_m[0, 1], theta_m[1, 1]
    cm0, cm1, cm2 = np.conj(m0), np.conj(m1), np.conj(m2)
    inv_log_base = 1.0 / log_base

    best = -np.inf
    best_idx = (0, 0, 0)
    x00 = (1.0 + rz) / 2.0 + 0.0 * ry
    x11 = (1.0 - rz) / 2.0 + 0.0 * ry
    rho2_yz = ry * ry + rz * rz
    for ix in range(res):
        rx = axis[ix]
        inball = rx * rx + rho2_yz <= 1.0
        if not inball.any():
            continue
        x01 = (rx - 1j * ry) / 2.0 + 0.0 * rz
        x10 = np.conj(x01)
        t0 = m0 * x00 + m1 * x01
        t1 = m0 * x10 + m1 * x11
        u0 = m1 * x00 + m2 * x01
        u1 = m1 * x10 + m2 * x11
        y00 = t0 * cm0 + t1 * cm1
        y01 = t0 * cm1 + t1 * cm2
        y10 = u0 * cm0 + u1 * cm1
        y11 = u0 * cm1 + u1 * cm2
        trxy = (x00 * y00 + x01 * y10 + x10 * y01 + x11 * y11).real
        detx = (1.0 - rx * rx - rho2_yz) / 4.0
        csq = np.clip(4.0 * (trxy - 2.0 * absdet * detx), 0.0, 1.0)
        root = np.sqrt(1.0 - csq)
        yp = (1.0 + root) / 2.0
        ym = (1.0 - root) / 2.0
        ent = (_eta(yp) + _eta(ym)) * inv_log_base

        sx = mb[0, 0] * rx + mb[0, 1] * ry + mb[0, 2] * rz + tb[0]
        sy = mb[1, 0] * rx + mb[1, 1] * ry + mb[1, 2] * rz + tb[1]
        sz = mb[2, 0] * rx + mb[2, 1] * ry + mb[2, 2] * rz + tb[2]
        ns = np.minimum(np.sqrt(sx * sx + sy * sy + sz * sz), 1.0)
        sout = (_eta((1.0 + ns) / 2.0) + _eta((1.0 - ns) / 2.0)) * inv_log_base

        chi = np.where(inball, sout - ent, -np.inf)
        k = int(np.argmax(chi))
        if chi.flat[k] > best:
            best = float(chi.flat[k])
            best_idx = (ix, k // res, k % res)
    return best, best_idx[0], best_idx[1], best_idx[2]
