"""Tests for the small linear-algebra layer."""

import numpy as np
import pytest

from ranktwo.errors import (
    DimensionMismatchError,
    NegativeArgumentError,
    NotHermitianError,
    NotPSDError,
)
from ranktwo.linalg import (
    bloch_join,
    bloch_split,
    ensure_hermitian,
    eig_psd,
    eta,
    pauli,
    random_state,
    sqrt_psd,
    state_from_bloch,
)


def test_eta_values():
    assert eta(0.0) == 0.0
    assert eta(1.0) == 0.0
    assert abs(eta(0.5) - 0.5) < 1e-15
    # natural base
    assert abs(eta(0.5, np.e) - 0.5 * np.log(2.0)) < 1e-15
    with pytest.raises(NegativeArgumentError):
        eta(-1e-6)


def test_ensure_hermitian():
    m = np.array([[1.0, 2.0 + 1j], [2.0 - 1j, 3.0]])
    assert np.allclose(ensure_hermitian(m), m)
    with pytest.raises(NotHermitianError):
        ensure_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(DimensionMismatchError):
        ensure_hermitian(np.zeros((2, 3)))


def test_eig_psd_sorted_and_clamped(rng):
    for _ in range(25):
        d = int(rng.integers(2, 5))
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        x = g @ g.conj().T
        w, v = eig_psd(x)
        assert np.all(np.diff(w) <= 0)
        assert w[-1] >= 0.0
        assert np.abs(v @ np.diag(w) @ v.conj().T - x).max() < 1e-10 * w[0]


def test_eig_psd_rejects_negative():
    with pytest.raises(NotPSDError):
        eig_psd(np.diag([1.0, -0.5]))


def test_sqrt_psd_roundtrip(rng):
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    x = g @ g.conj().T
    s = sqrt_psd(x)
    assert np.abs(s @ s - x).max() < 1e-10


def test_pauli_algebra():
    sx, sy, sz = pauli(0), pauli(1), pauli(2)
    assert np.allclose(sx @ sy, 1j * sz)
    for s in (sx, sy, sz):
        assert np.allclose(s @ s, np.eye(2))
        assert abs(np.trace(s)) < 1e-15


def test_bloch_roundtrip(rng):
    for _ in range(50):
        t = float(rng.uniform(0.1, 2.0))
        r = rng.uniform(-1.0, 1.0, size=3)
        m = bloch_join(t, r)
        t2, r2 = bloch_split(m)
        assert abs(t2 - t) < 1e-14
        assert np.abs(r2 - r).max() < 1e-14
        assert np.abs(m - m.conj().T).max() < 1e-15


def test_state_from_bloch():
    x = state_from_bloch([0.0, 0.0, 1.0])
    assert np.allclose(x, np.diag([1.0, 0.0]))
    with pytest.raises(NotPSDError):
        state_from_bloch([0.9, 0.9, 0.9])


def test_random_state(rng):
    for rank in (1, 2):
        x = random_state(2, rank, rng)
        w, _ = eig_psd(x)
        assert abs(w.sum() - 1.0) < 1e-12
        assert np.sum(w > 1e-10) == rank
