"""Random channels and states for tests and the verification battery."""

from __future__ import annotations

import numpy as np

from .channel import RankTwoChannel, canonical_qubit
from .linalg import random_state


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_kraus_channel(
    m: int, d: int, rng: np.random.Generator, name: str = ""
) -> RankTwoChannel:
    """Channel with m independent Gaussian 2 x d Kraus matrices, scaled so
    the squared norms of the Kraus list sum to 2."""
    while True:
        kraus = _complex_gaussian(rng, (m, 2, d))
        gram = np.array(
            [[np.vdot(a, b) for b in kraus] for a in kraus], dtype=complex
        )
        ev = np.linalg.eigvalsh(gram)
        if ev[0] > 1e-6 * ev[-1]:
            break
    kraus *= np.sqrt(2.0 / np.sum(np.abs(kraus) ** 2))
    return RankTwoChannel(kraus, name=name)


def random_tp_channel(m: int, d: int, rng: np.random.Generator) -> RankTwoChannel:
    """Trace-preserving channel: the stacked Kraus block is a random
    isometry (QR of a Gaussian), so sum A_j^dag A_j = I exactly."""
    g = _complex_gaussian(rng, (2 * m, d))
    q, _ = np.linalg.qr(g)
    kraus = q.reshape(m, 2, d)
    return RankTwoChannel(kraus, name="random tp")


def random_qubit_pair(
    rng: np.random.Generator, margin: float = 0.02
) -> RankTwoChannel:
    """General-basis length-2 qubit channel, non-degenerate with margin:
    the two singular values of the derived Kraus matrix stay comparable."""
    while True:
        kraus = _complex_gaussian(rng, (2, 2, 2))
        kraus *= np.sqrt(2.0 / np.sum(np.abs(kraus) ** 2))
        ch = RankTwoChannel(kraus)
        sv = np.linalg.svd(ch.theta.matrix, compute_uv=False)
        if sv[0] > 1e-8 and sv[-1] > margin * sv[0]:
            return ch


def random_canonical(
    rng: np.random.Generator, margin: float = 0.02
) -> RankTwoChannel:
    """Canonical-layout qubit channel (A diagonal, B anti-diagonal),
    non-degenerate with margin."""
    while True:
        a00, a11, b01, b10 = _complex_gaussian(rng, 4)
        norm = np.sqrt(2.0 / (abs(a00) ** 2 + abs(a11) ** 2 + abs(b01) ** 2 + abs(b10) ** 2))
        ch = canonical_qubit(a00 * norm, a11 * norm, b01 * norm, b10 * norm)
        p = ch.canonical
        z = sorted([abs(p.z0sq), abs(p.z1sq)])
        if z[1] > 1e-8 and z[0] > margin * z[1]:
            return ch


def random_canonical_tp(
    rng: np.random.Generator, margin: float = 0.02
) -> RankTwoChannel:
    """Trace-preserving canonical channel: columns (a00, b10) and
    (a11, b01) are unit vectors, with random phases."""
    while True:
        t0, t1 = rng.uniform(0.05, np.pi / 2 - 0.05, 2)
        ph = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, 4))
        ch = canonical_qubit(
            np.cos(t0) * ph[0],
            np.cos(t1) * ph[1],
            np.sin(t1) * ph[2],
            np.sin(t0) * ph[3],
        )
        p = ch.canonical
        z = sorted([abs(p.z0sq), abs(p.z1sq)])
        if z[0] > margin * z[1]:
            return ch


def random_degenerate_tp(rng: np.random.Generator) -> RankTwoChannel:
    """Trace-preserving canonical channel with b01 = 0, so one derived
    z-parameter vanishes and the concurrence becomes linear."""
    t0 = rng.uniform(0.1, np.pi / 2 - 0.1)
    ph = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, 3))
    return canonical_qubit(np.cos(t0) * ph[0], ph[1], 0.0, np.sin(t0) * ph[2])


def random_pure(d: int, rng: np.random.Generator) -> np.ndarray:
    v = _complex_gaussian(rng, d)
    return v / np.linalg.norm(v)


def random_mixed(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    return random_state(d, rank if rank is not None else d, rng)


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    g = _complex_gaussian(rng, (d, d))
    return (g + g.conj().T) / 2.0
