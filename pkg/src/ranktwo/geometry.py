"""Bloch-space geometry of constant-concurrence sets.

For a non-degenerate length-2 qubit channel the states of fixed
concurrence c > 0 form a cylinder around a distinguished line, the states
of concurrence zero form that line itself, and two anti-unitary
conjugations organize the picture: an input conjugation theta (the polar
part of the derived Kraus operator) reflecting Bloch space across the
line, and an output conjugation theta' doing the same for the image
lines.  Degenerate channels flatten the cylinders into planes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .antilinear import AntilinearOp, conj_sandwich, polar_conjugation
from .channel import RankTwoChannel
from .concurrence import (
    concurrence,
    max_concurrence,
    pair_concurrence,
    separable_vectors,
)
from .errors import DegenerateChannelError, OutOfRangeError, WrongLengthError
from .linalg import bloch_join, bloch_split, ensure_hermitian, state_from_bloch

TOL_LEVEL = 1e-8


def input_conjugation(channel: RankTwoChannel) -> AntilinearOp:
    """Conjugation theta with derived Kraus = theta * modulus (polar part).

    Reflects the Bloch ball across the channel's constant-concurrence
    line; in canonical layout theta = diag(z0/z0*, -z1/z1*) acting
    anti-linearly.
    """
    return polar_conjugation(channel.theta)


def output_conjugation(channel: RankTwoChannel) -> AntilinearOp:
    """Conjugation theta' on output space with theta' Phi(theta X theta)
    theta' = Phi(X); defined for non-degenerate canonical channels."""
    p = channel.require_canonical()
    if p.degenerate:
        raise DegenerateChannelError("output conjugation needs a non-degenerate channel")
    e0 = p.a00 * p.b01
    e1 = p.a11 * p.b10
    m = np.diag([e0 / abs(e0), -e1 / abs(e1)])
    return AntilinearOp(m)


def reflect(t: AntilinearOp, x) -> np.ndarray:
    """The linear map X -> T X^dag T for an anti-linear T.

    For the canonical input conjugation this fixes the diagonal of X and
    multiplies x10 by -(z0 z1*)/(z0* z1): the Bloch reflection across the
    constant-concurrence axis.
    """
    x = np.asarray(x, dtype=complex)
    return t.matrix @ x.T @ t.matrix.conj()


@dataclass(frozen=True)
class ConstantConcurrenceLine:
    """A line X + t*direction on which the channel concurrence is constant."""

    base: np.ndarray
    direction: np.ndarray
    bloch_base: np.ndarray
    bloch_direction: np.ndarray
    concurrence: float
    endpoints: Optional[tuple[np.ndarray, np.ndarray]]
    t_range: Optional[tuple[float, float]]

    def state_at(self, t: float) -> np.ndarray:
        return self.base + t * self.direction


def constant_line(channel: RankTwoChannel, x) -> ConstantConcurrenceLine:
    """Constant-concurrence line through the state x.

    The direction is the traceless difference of projectors onto the two
    separable vectors; when x is a state the two intersections with the
    pure-state sphere are returned as endpoints.
    """
    psi1, psi2 = separable_vectors(channel)
    d = np.outer(psi1, psi1.conj()) - np.outer(psi2, psi2.conj())
    _, rd = bloch_split(d / 2.0)
    rd = rd / np.linalg.norm(rd)
    direction = bloch_join(0.0, rd)

    x = ensure_hermitian(x)
    value = concurrence(channel, x).value
    t0, r0 = bloch_split(x)

    endpoints = None
    t_range = None
    if abs(t0 - 1.0) <= 1e-9 and np.linalg.norm(r0) <= 1.0 + 1e-9:
        b = float(r0 @ rd)
        disc = b * b + 1.0 - float(r0 @ r0)
        root = np.sqrt(max(0.0, disc))
        t_minus, t_plus = -b - root, -b + root
        endpoints = (
            state_from_bloch(r0 + t_plus * rd),
            state_from_bloch(r0 + t_minus * rd),
        )
        t_range = (t_minus, t_plus)

    return ConstantConcurrenceLine(
        base=x,
        direction=direction,
        bloch_base=r0,
        bloch_direction=rd,
        concurrence=value,
        endpoints=endpoints,
        t_range=t_range,
    )


def _level_rows(channel, blochs, level):
    """Stack (rx, ry, rz, C) rows, re-verifying C via the eigenvalue route."""
    theta = channel.theta
    rows = []
    for r in blochs:
        x = state_from_bloch(np.asarray(r, dtype=float))
        c = 2.0 * pair_concurrence(x, conj_sandwich(theta, x))
        if abs(c - level) > TOL_LEVEL:
            raise ArithmeticError(
                f"sample point missed the level set: C = {c}, wanted {level}"
            )
        rows.append((r[0], r[1], r[2], c))
    return np.array(rows, dtype=float)


def cylinder_samples(
    channel: RankTwoChannel,
    level: float,
    n_angles: int = 24,
    n_sweeps: int = 9,
) -> tuple[np.ndarray, dict]:
    """Sample the constant-concurrence set {omega : C(Phi; omega) = level}.

    Non-degenerate canonical channels give a cylinder around the zero
    line (a line for level 0); degenerate ones give plane sheets.  Points
    come back as an (N, 4) array of rows (rx, ry, rz, C), each re-checked
    against the eigenvalue route within 1e-8.
    """
    p = channel.require_canonical()
    cmax = max_concurrence(channel)
    if level < 0.0 or level > cmax * (1.0 + 1e-12):
        raise OutOfRangeError(
            f"level {level} outside [0, {cmax}] attainable on states"
        )
    angles = np.linspace(0.0, 2.0 * np.pi, n_angles, endpoint=False)

    if p.degenerate:
        blochs, kind = _degenerate_sheet(p, level, angles, n_sweeps)
        meta = {
            "kind": kind,
            "level": level,
            "max_concurrence": cmax,
            "degenerate": True,
        }
        return _level_rows(channel, blochs, level), meta

    a = abs(p.z0sq)
    b = abs(p.z1sq)
    alpha, beta = a - b, a + b
    w = p.z0 * np.conj(p.z1)
    gamma, delta = -2.0 * w.imag, -2.0 * w.real
    g = np.hypot(gamma, delta)
    nhat = np.array([gamma, delta]) / g
    ehat = np.array([-delta, gamma]) / g

    blochs = []
    if level <= 1e-12 * cmax:
        rz = -alpha / beta
        smax = np.sqrt(max(0.0, 1.0 - rz * rz))
        for s in np.linspace(-smax, smax, n_angles * n_sweeps):
            blochs.append((s * ehat[0], s * ehat[1], rz))
        kind = "line"
    else:
        for phi in angles:
            l1 = level * np.cos(phi)
            l2 = level * np.sin(phi)
            rz = (l1 - alpha) / beta
            if abs(rz) > 1.0:
                continue
            q = l2 / g
            s2 = 1.0 - rz * rz - q * q
            if s2 < 0.0:
                continue
            smax = np.sqrt(s2)
            for s in np.linspace(-smax, smax, n_sweeps):
                xy = q * nhat + s * ehat
                blochs.append((xy[0], xy[1], rz))
        kind = "cylinder"
    meta = {
        "kind": kind,
        "level": level,
        "max_concurrence": cmax,
        "degenerate": False,
        "axis_bloch": [ehat[0], ehat[1], 0.0],
    }
    return _level_rows(channel, blochs, level), meta


def _degenerate_sheet(p, level, angles, n_sweeps):
    """Bloch points of a degenerate channel's level set (planes or ball)."""
    if p.both_zero:
        if level > 0.0:
            raise OutOfRangeError("concurrence vanishes identically; only level 0")
        radii = np.linspace(0.0, 1.0, n_sweeps)
        return [
            (rad * np.cos(t), rad * np.sin(t), 0.0) for t in angles for rad in radii
        ], "ball"
    a = abs(p.z0sq)
    b = abs(p.z1sq)
    if a >= b:
        rz = level / a - 1.0
    else:
        rz = 1.0 - level / b
    rz = min(1.0, max(-1.0, rz))
    rmax = np.sqrt(max(0.0, 1.0 - rz * rz))
    radii = np.linspace(0.0, rmax, n_sweeps)
    return [
        (rad * np.cos(t), rad * np.sin(t), rz) for t in angles for rad in radii
    ], "plane"


def separable_images(
    channel: RankTwoChannel,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rank-one output vectors phi_1, phi_2 of the separable inputs, plus
    the 2x2 PSD coupling r with Phi(|psi_j><psi_k|) = r_jk |phi_j><phi_k|.

    phi_{1,2} = sqrt(a00 b01)|0> +- sqrt(a11 b10)|1> with square-root
    branches tied so that A psi_i and B psi_i land exactly on phi_i.  The
    off-diagonal coupling is |a00 a11| - |b01 b10|; the A and B
    contributions to the j != k images carry opposite signs, so the naive
    sum |a00 a11| + |b01 b10| appears on the diagonal only.
    """
    p = channel.require_canonical()
    if p.degenerate:
        raise DegenerateChannelError("separable images need a non-degenerate channel")
    w = np.sqrt(complex(p.a00 * p.b01))
    v = w * p.a11 * np.conj(p.z0) / (p.a00 * np.conj(p.z1))
    phi1 = np.array([w, v])
    phi2 = np.array([w, -v])
    pa = abs(p.a00 * p.a11)
    pb = abs(p.b01 * p.b10)
    r = np.array([[pa + pb, pa - pb], [pa - pb, pa + pb]], dtype=float)

    psi1 = np.array([np.conj(p.z1), np.conj(p.z0)])
    psi2 = np.array([np.conj(p.z1), -np.conj(p.z0)])
    scale = max(abs(pa + pb), 1e-30)
    for j, pj in enumerate((psi1, psi2)):
        for k, pk in enumerate((psi1, psi2)):
            out = channel.apply(np.outer(pj, pk.conj()))
            want = r[j, k] * np.outer((phi1, phi2)[j], (phi1, phi2)[k].conj())
            if np.abs(out - want).max() > 1e-10 * scale:
                raise ArithmeticError("separable image coupling failed to verify")
    return phi1, phi2, r


def write_samples_csv(path, points: np.ndarray) -> None:
    """Write (rx, ry, rz, C) rows with a fixed header."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rx", "ry", "rz", "C"])
        for row in np.asarray(points, dtype=float):
            writer.writerow([f"{v:.17g}" for v in row])
