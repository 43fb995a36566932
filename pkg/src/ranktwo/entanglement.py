"""Entanglement and Holevo quantities of rank-two channels.

The entanglement E(Phi; X) is the convex-roof extension of the scaled
output entropy.  For trace-preserving length-2 channels it collapses to a
closed form in the concurrence:

    2 y_pm = tr Phi(X) +- sqrt((tr Phi(X))^2 - C(Phi; X)^2)
    E = eta(y_plus) + eta(y_minus) - eta(y_plus + y_minus)

The Holevo quantity chi*(Phi; X) = S_sc(Phi(X)) - E(Phi; X) is maximized
three ways: a two-angle search over pure states pi with the average
(pi + theta pi theta)/2 (non-degenerate channels), a one-dimensional
search along the concurrence gradient (degenerate channels), and an
exhaustive Bloch-lattice scan used as the independent cross-check.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from ._kernels import grid_scan
from .antilinear import conj_sandwich, polar_conjugation, takagi
from .channel import RankTwoChannel
from .concurrence import concurrence
from .errors import NotTracePreservingError, WrongLengthError
from .geometry import input_conjugation
from .linalg import bloch_split, eig_psd, eta, pauli, state_from_bloch

log = logging.getLogger("ranktwo.capacity")


def scaled_entropy(y, base: float = 2.0) -> float:
    """Scaled von Neumann entropy eta(Y) - eta(tr Y) of a PSD operator;
    homogeneous of degree one, equal to S on states."""
    w, _ = eig_psd(y)
    return float(sum(eta(v, base) for v in w) - eta(float(w.sum()), base))


@dataclass(frozen=True)
class EntanglementReport:
    """Closed-form entanglement with its spectral split."""

    value: float
    y_plus: float
    y_minus: float
    concurrence: float
    trace_out: float
    base: float


def entanglement(channel: RankTwoChannel, x, base: float = 2.0) -> EntanglementReport:
    """E(Phi; X) for a trace-preserving length-2 channel on PSD input."""
    if channel.length != 2:
        raise WrongLengthError("the entanglement closed form needs length two")
    if not channel.is_trace_preserving():
        raise NotTracePreservingError("entanglement closed form needs a TP channel")
    c = concurrence(channel, x).value
    t = float(np.trace(channel.apply(x)).real)
    disc = t * t - c * c
    if disc < -1e-8 * max(1.0, t * t):
        raise ArithmeticError(f"concurrence {c} exceeds output trace {t}")
    root = np.sqrt(max(0.0, disc))
    y_plus = (t + root) / 2.0
    y_minus = (t - root) / 2.0
    value = eta(y_plus, base) + eta(y_minus, base) - eta(t, base)
    return EntanglementReport(
        value=value,
        y_plus=y_plus,
        y_minus=y_minus,
        concurrence=c,
        trace_out=t,
        base=base,
    )


def holevo_star(channel: RankTwoChannel, x, base: float = 2.0) -> float:
    """One-shot Holevo quantity chi*(Phi; X) = S_sc(Phi(X)) - E(Phi; X)."""
    return scaled_entropy(channel.apply(x), base) - entanglement(channel, x, base).value


@dataclass(frozen=True)
class CapacityResult:
    """A Holevo maximum with the state attaining it."""

    value: float
    bloch: np.ndarray
    state: np.ndarray
    method: str


class _QubitChannelData:
    """Precomputed Bloch affine action and derived-Kraus scalars of a TP
    qubit channel, for fast closed-form chi evaluations."""

    def __init__(self, channel: RankTwoChannel, base: float):
        self.base = base
        tb = bloch_split(channel.apply(np.eye(2) / 2.0))[1]
        cols = [bloch_split(channel.apply(pauli(j) / 2.0))[1] for j in range(3)]
        self.mb = np.column_stack(cols)
        self.tb = tb
        self.theta_m = channel.theta.matrix
        self.absdet = abs(np.linalg.det(self.theta_m))

    def _eta2(self, y: float) -> float:
        return eta(y, self.base)

    def output_entropy(self, r: np.ndarray) -> float:
        s = min(1.0, float(np.linalg.norm(self.mb @ r + self.tb)))
        return self._eta2((1.0 + s) / 2.0) + self._eta2((1.0 - s) / 2.0)

    def concurrence_sq(self, r: np.ndarray) -> float:
        x = state_from_bloch(r)
        y = self.theta_m @ x.conj() @ self.theta_m.conj()
        tr = float(np.trace(x @ y).real)
        detx = float((1.0 - r @ r) / 4.0)
        return min(1.0, max(0.0, 4.0 * (tr - 2.0 * self.absdet * detx)))

    def entanglement_of(self, csq: float) -> float:
        root = np.sqrt(max(0.0, 1.0 - csq))
        return self._eta2((1.0 + root) / 2.0) + self._eta2((1.0 - root) / 2.0)

    def chi(self, r: np.ndarray) -> float:
        r = np.asarray(r, dtype=float)
        nr = np.linalg.norm(r)
        if nr > 1.0:
            r = r / nr
        return self.output_entropy(r) - self.entanglement_of(self.concurrence_sq(r))


def _require_tp_qubit(channel: RankTwoChannel) -> None:
    if channel.length != 2 or channel.dim_in != 2:
        raise WrongLengthError("capacity search needs a length-2 qubit channel")
    if not channel.is_trace_preserving():
        raise NotTracePreservingError("capacity needs a trace-preserving channel")


def _pure_bloch(a: float, b: float) -> np.ndarray:
    sa = np.sin(a)
    return np.array([sa * np.cos(b), sa * np.sin(b), np.cos(a)])


def holevo_capacity(
    channel: RankTwoChannel, base: float = 2.0, grid: int = 64
) -> CapacityResult:
    """Maximal one-shot Holevo quantity over input states.

    Non-degenerate channels: the maximizer is theta-invariant, so chi* is
    searched over omega = (pi + theta pi theta)/2 with pi pure, via a
    grid x grid angle scan plus Nelder-Mead polish.  Degenerate channels:
    the concurrence is affine in the Bloch vector, so a bounded scalar
    search runs along its gradient with the output entropy maximized
    exactly on each transverse disk.
    """
    _require_tp_qubit(channel)
    data = _QubitChannelData(channel, base)
    if channel.is_degenerate():
        return _degenerate_capacity(channel, data)
    return _restricted_capacity(channel, data, grid)


def _ball(r: np.ndarray) -> np.ndarray:
    nr = np.linalg.norm(r)
    return r / nr if nr > 1.0 else r


def _restricted_capacity(
    channel: RankTwoChannel, data: _QubitChannelData, grid: int
) -> CapacityResult:
    theta = input_conjugation(channel)
    rtheta = np.column_stack(
        [bloch_split(conj_sandwich(theta, pauli(j) / 2.0))[1] for j in range(3)]
    )

    def omega_bloch(r_pi: np.ndarray) -> np.ndarray:
        return (r_pi + rtheta @ r_pi) / 2.0

    def objective(ang) -> float:
        p = _pure_bloch(ang[0], ang[1])
        return data.output_entropy(omega_bloch(p)) - data.output_entropy(p)

    angles_a = np.linspace(0.0, np.pi, grid)
    angles_b = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    best, best_ang = -np.inf, (0.0, 0.0)
    for a in angles_a:
        for b in angles_b:
            v = objective((a, b))
            if v > best:
                best, best_ang = v, (a, b)
    res = optimize.minimize(
        lambda ang: -objective(ang),
        x0=np.array(best_ang),
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 600},
    )
    a, b = res.x
    log.info("restricted capacity polish: %d evals, objective %.12f", res.nfev, -res.fun)
    r_omega = _ball(omega_bloch(_pure_bloch(a, b)))
    return CapacityResult(
        value=data.chi(r_omega),
        bloch=r_omega,
        state=state_from_bloch(r_omega),
        method="restricted",
    )


def _min_norm_in_disk(a: np.ndarray, c: np.ndarray, radius: float) -> np.ndarray:
    """argmin |a v + c| over ||v|| <= radius (v real, small dimension).

    Ridge path via SVD: v(lam) = -V diag(s/(s^2+lam)) U^T c, with |v(lam)|
    strictly decreasing, so the active constraint pins lam by bisection.
    """
    if radius <= 0.0:
        return np.zeros(a.shape[1])
    uu, sv, vt = np.linalg.svd(a, full_matrices=False)
    keep = sv > 1e-14 * max(sv[0], 1e-300)
    uu, sv, vt = uu[:, keep], sv[keep], vt[keep]
    if sv.size == 0:
        return np.zeros(a.shape[1])
    d = uu.T @ (-c)

    def v_at(lam: float) -> np.ndarray:
        return vt.T @ (sv * d / (sv * sv + lam))

    if np.linalg.norm(v_at(0.0)) <= radius:
        return v_at(0.0)
    hi = 1.0
    while np.linalg.norm(v_at(hi)) > radius:
        hi *= 4.0
        if hi > 1e18:
            break
    lam = optimize.brentq(
        lambda t: float(np.linalg.norm(v_at(t))) - radius, 0.0, hi,
        xtol=1e-15, rtol=8.9e-16,
    )
    return v_at(lam)


def _degenerate_capacity(
    channel: RankTwoChannel, data: _QubitChannelData
) -> CapacityResult:
    s, uvecs = takagi(data.theta_m)
    sigma0 = float(s[0])
    if sigma0 <= 1e-12:
        v = _min_norm_in_disk(data.mb, data.tb, 1.0)
        return CapacityResult(
            value=data.chi(v), bloch=v, state=state_from_bloch(v), method="degenerate"
        )
    u0 = uvecs[:, 0]
    nhat = bloch_split(np.outer(u0, u0.conj()))[1]
    nhat = nhat / np.linalg.norm(nhat)
    basis = [v for v in np.eye(3)]
    basis.sort(key=lambda e: abs(e @ nhat))
    q1 = basis[0] - (basis[0] @ nhat) * nhat
    q1 = q1 / np.linalg.norm(q1)
    q2 = np.cross(nhat, q1)
    q = np.column_stack([q1, q2])
    aq = data.mb @ q

    def point_at(h: float) -> np.ndarray:
        radius = np.sqrt(max(0.0, 1.0 - h * h))
        c = data.mb @ (h * nhat) + data.tb
        v = _min_norm_in_disk(aq, c, radius)
        return h * nhat + q @ v

    def chi_at(h: float) -> float:
        csq = min(1.0, (sigma0 * (1.0 + h)) ** 2)
        return data.output_entropy(point_at(h)) - data.entanglement_of(csq)

    hs = np.linspace(-1.0, 1.0, 41)
    vals = [chi_at(h) for h in hs]
    k = int(np.argmax(vals))
    lo = hs[max(0, k - 1)]
    hi = hs[min(len(hs) - 1, k + 1)]
    res = optimize.minimize_scalar(
        lambda h: -chi_at(h), bounds=(lo, hi), method="bounded",
        options={"xatol": 1e-12},
    )
    h_best = float(res.x) if -res.fun >= vals[k] else float(hs[k])
    r_best = point_at(h_best)
    log.info("degenerate capacity: h = %.12f, chi = %.12f", h_best, chi_at(h_best))
    return CapacityResult(
        value=chi_at(h_best),
        bloch=r_best,
        state=state_from_bloch(r_best),
        method="degenerate",
    )


def capacity_grid(
    channel: RankTwoChannel,
    resolution: int = 200,
    base: float = 2.0,
    refine: bool = True,
) -> CapacityResult:
    """Independent capacity oracle: exhaustive chi* scan over a cubic
    Bloch lattice, then (by default) a Nelder-Mead polish from the best
    lattice point to reach the grid-free optimum."""
    _require_tp_qubit(channel)
    data = _QubitChannelData(channel, base)
    value, ix, iy, iz = grid_scan(
        data.mb, data.tb, data.theta_m, data.absdet, resolution, float(np.log(base))
    )
    step = 2.0 / (resolution - 1.0) if resolution > 1 else 0.0
    r0 = np.array([-1.0 + step * ix, -1.0 + step * iy, -1.0 + step * iz])
    log.info("grid scan best %.12f at %s", value, r0)
    if refine:
        res = optimize.minimize(
            lambda r: -data.chi(r),
            x0=r0,
            method="Nelder-Mead",
            options={"xatol": 1e-11, "fatol": 1e-14, "maxiter": 800},
        )
        r1 = np.asarray(res.x, dtype=float)
        if np.linalg.norm(r1) > 1.0:
            r1 = r1 / np.linalg.norm(r1)
        if data.chi(r1) >= value:
            r0, value = r1, data.chi(r1)
    return CapacityResult(
        value=value, bloch=r0, state=state_from_bloch(r0), method="grid"
    )


def bloch_affine(channel: RankTwoChannel) -> tuple[np.ndarray, np.ndarray]:
    """Affine Bloch action (M, t) of a TP qubit channel: r -> M r + t."""
    _require_tp_qubit(channel)
    data = _QubitChannelData(channel, 2.0)
    return data.mb, data.tb
