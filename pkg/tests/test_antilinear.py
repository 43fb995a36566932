"""Tests for anti-linear operators, Takagi splitting and conjugations."""

import numpy as np
import pytest

from ranktwo.antilinear import (
    AntilinearOp,
    compose_antilinear,
    conj_sandwich,
    polar_conjugation,
    polar_modulus,
    sandwich_antilinear,
    spin_flip,
    takagi,
    wootters_conjugation,
)
from ranktwo.errors import DegenerateChannelError, NotHermitianError


def random_op(dim, rng):
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return AntilinearOp(m)


def test_apply_is_antilinear(rng):
    t = random_op(3, rng)
    psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    phi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    a = 0.3 - 1.7j
    lhs = t.apply(a * psi + phi)
    rhs = np.conj(a) * t.apply(psi) + t.apply(phi)
    assert np.abs(lhs - rhs).max() < 1e-12


def test_adjoint_pairing(rng):
    # for anti-linear T the pairing reads <phi, T psi> = <psi, T^dag phi>
    t = random_op(4, rng)
    for _ in range(10):
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        phi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        lhs = np.vdot(phi, t.apply(psi))
        rhs = np.vdot(psi, t.adjoint().apply(phi))
        assert abs(lhs - rhs) < 1e-12


def test_hermitian_iff_symmetric(rng):
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    sym = AntilinearOp(m + m.T)
    assert sym.is_hermitian()
    assert not AntilinearOp(m + 2.0 * m.T).is_hermitian()
    h = random_op(3, rng).hermitian_part()
    assert h.is_hermitian()


def test_expectation_real_for_hermitian(rng):
    h = random_op(3, rng).hermitian_part()
    psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    val = h.expectation(psi)
    # the quadratic form of a Hermitian anti-linear operator needs no
    # reality, but conjugating psi's global phase conjugates the value
    other = h.expectation(1j * psi)
    assert abs(val + other) < 1e-12


def test_spin_flip_frozen_values():
    f = spin_flip()
    assert np.array_equal(f.matrix, np.array([[0.0, 1.0], [-1.0, 0.0]]))
    p = 0.3
    got = conj_sandwich(f, np.diag([p, 1.0 - p]))
    assert np.abs(got - (-np.diag([1.0 - p, p]))).max() < 1e-15
    # flipping twice is minus the identity on vectors
    psi = np.array([1.0 + 2.0j, -0.5j])
    assert np.abs(f.apply(f.apply(psi)) + psi).max() < 1e-15


def test_wootters_conjugation_matrix():
    w = wootters_conjugation()
    f = spin_flip().matrix
    assert np.array_equal(w.matrix, -np.kron(f, f))
    assert w.is_hermitian()


def test_compose_and_sandwich(rng):
    t1, t2 = random_op(3, rng), random_op(3, rng)
    psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    lin = compose_antilinear(t1, t2)
    assert np.abs(lin @ psi - t1.apply(t2.apply(psi))).max() < 1e-12

    a = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    b = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    t = random_op(2, rng)
    s = sandwich_antilinear(a, t, b)
    phi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    assert np.abs(s.apply(phi) - a.conj().T @ t.apply(b @ phi)).max() < 1e-12


def test_conj_sandwich_psd_preserving(rng):
    # T X T^dag of a PSD X stays PSD and Hermitian for Hermitian T,
    # where the conjugate of the matrix equals its adjoint
    t = random_op(3, rng).hermitian_part()
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    x = g @ g.conj().T
    y = conj_sandwich(t, x)
    assert np.abs(y - y.conj().T).max() < 1e-10
    assert np.linalg.eigvalsh(y)[0] > -1e-10


def test_takagi(rng):
    for d in (2, 3, 5):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        m = g + g.T
        s, u = takagi(m)
        assert np.all(np.diff(s) <= 1e-12)
        assert np.all(s >= 0.0)
        assert np.abs(u.conj().T @ u - np.eye(d)).max() < 1e-10
        assert np.abs(u @ np.diag(s) @ u.T - m).max() < 1e-9 * max(1.0, s[0])
    with pytest.raises(NotHermitianError):
        takagi(np.array([[0.0, 1.0], [2.0, 0.0]]))


def test_polar_conjugation(rng):
    t = random_op(3, rng).hermitian_part()
    theta = polar_conjugation(t)
    # a conjugation composes with itself to the identity
    assert np.abs(compose_antilinear(theta, theta) - np.eye(3)).max() < 1e-10
    assert theta.is_hermitian()
    # T = theta * |T| with |T| = sqrt(T^dag T) linear and PSD
    mod = polar_modulus(t)
    assert np.abs(theta.matrix @ np.conj(mod) - t.matrix).max() < 1e-10
    with pytest.raises(DegenerateChannelError):
        polar_conjugation(AntilinearOp(np.diag([1.0, 0.0])))
