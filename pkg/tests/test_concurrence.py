"""Tests for pair concurrence and the channel concurrence closed forms."""

import numpy as np
import pytest

from oracles import random_density, wootters_concurrence
from ranktwo.antilinear import takagi
from ranktwo.channel import (
    RankTwoChannel,
    canonical_qubit,
    partial_trace_two_qubit,
    symmetric_qubit,
)
from ranktwo.concurrence import (
    concurrence,
    lower_bound,
    max_concurrence,
    pair_concurrence,
    separable_vectors,
)
from ranktwo.errors import DegenerateChannelError
from ranktwo.linalg import bloch_split, state_from_bloch
from ranktwo.roof import roof_min
from ranktwo.sampling import (
    random_canonical_tp,
    random_degenerate_tp,
    random_kraus_channel,
    random_mixed,
    random_pure,
)

BELL = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)


def test_pair_concurrence_known_cases():
    half = np.eye(2) / 2.0
    assert pair_concurrence(half, half) == 0.0
    assert pair_concurrence(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == 0.0
    proj = np.diag([1.0, 0.0])
    assert abs(pair_concurrence(proj, proj) - 1.0) < 1e-14


def test_pair_concurrence_symmetric(rng):
    for _ in range(30):
        x1 = random_density(2, int(rng.integers(1, 3)), rng)
        x2 = random_density(2, int(rng.integers(1, 3)), rng)
        assert abs(pair_concurrence(x1, x2) - pair_concurrence(x2, x1)) < 1e-10


def test_wootters_agreement(rng):
    ch = partial_trace_two_qubit()
    for i in range(60):
        rho = random_density(4, 1 + i % 4, rng)
        got = concurrence(ch, rho).value
        want = wootters_concurrence(rho)
        assert abs(got - want) < 1e-10


def test_wootters_pinned_states():
    ch = partial_trace_two_qubit()
    bell = np.outer(BELL, BELL.conj())
    assert abs(concurrence(ch, bell).value - 1.0) < 1e-12
    assert concurrence(ch, np.eye(4) / 4.0).value < 1e-12


def test_symmetric_channel_bloch_form(rng):
    # with both z-squares at 1/2 the concurrence is the Bloch distance
    # from the rx axis
    ch = symmetric_qubit()
    for _ in range(40):
        x = random_mixed(2, rng, rank=int(rng.integers(1, 3)))
        _, r = bloch_split(x)
        want = np.hypot(r[1], r[2])
        assert abs(concurrence(ch, x).value - want) < 1e-12


def test_homogeneity(rng):
    ch = random_canonical_tp(rng)
    x = random_mixed(2, rng)
    c1 = concurrence(ch, x).value
    c2 = concurrence(ch, 0.37 * x).value
    assert abs(c2 - 0.37 * c1) < 1e-12


def test_method_selection(rng):
    chan = random_canonical_tp(rng)
    psi = random_pure(2, rng)
    rep = concurrence(chan, np.outer(psi, psi.conj()))
    assert rep.method == "pure_direct"

    rep = concurrence(chan, random_mixed(2, rng, rank=2))
    assert rep.method == "closed_2x2"
    assert rep.c_complex is not None
    assert abs(abs(rep.c_complex) - rep.value) < 1e-12
    assert abs(rep.l1 ** 2 + rep.l2 ** 2 - rep.value ** 2) < 1e-10

    deg = random_degenerate_tp(rng)
    rep = concurrence(deg, random_mixed(2, rng, rank=2))
    assert rep.method == "degenerate_linear"
    assert rep.degenerate

    wide = random_kraus_channel(2, 3, rng)
    rep = concurrence(wide, random_mixed(3, rng, rank=2))
    assert rep.method == "pair_eigen"


def test_amplitude_damping_linear_form(rng):
    # diagonal/antidiagonal pair with b10 = 0: the roof degenerates to a
    # linear function 2 sqrt(g(1-g)) x11
    g = 0.4
    ch = canonical_qubit(1.0, np.sqrt(1.0 - g), np.sqrt(g), 0.0)
    assert ch.is_degenerate()
    for _ in range(10):
        x = random_mixed(2, rng, rank=2)
        want = 2.0 * np.sqrt(g * (1.0 - g)) * float(x[1, 1].real)
        assert abs(concurrence(ch, x).value - want) < 1e-12
    # linearity means the annealed roof lands on the same value
    x = random_mixed(2, rng, rank=2)
    r = roof_min(ch, x, restarts=8, steps=800, seed=3)
    assert abs(r.value - concurrence(ch, x).value) < 1e-6


def test_separable_vectors(rng):
    for _ in range(10):
        ch = random_canonical_tp(rng)
        v1, v2 = separable_vectors(ch)
        for v in (v1, v2):
            # the quadratic form vanishes to machine precision; the pure
            # route takes a square root of it, so its floor is ~sqrt(eps)
            assert abs(ch.theta.expectation(v)) < 1e-12
            c = concurrence(ch, np.outer(v, v.conj())).value
            assert c < 1e-7
    with pytest.raises(DegenerateChannelError):
        separable_vectors(random_degenerate_tp(rng))


def test_lower_bound_length_two_is_exact(rng):
    ch = random_canonical_tp(rng)
    x = random_mixed(2, rng, rank=2)
    bnd = lower_bound(ch, x)
    c = concurrence(ch, x).value
    assert len(bnd.sub_values) == 1
    assert abs(bnd.value - c) < 1e-9
    assert bnd.closed_form is not None
    assert abs(bnd.closed_form - c) < 1e-8


def test_lower_bound_below_roof(rng):
    for i in range(5):
        ch = random_kraus_channel(3, 2, rng)
        x = random_mixed(2, rng, rank=2)
        bnd = lower_bound(ch, x)
        roof = roof_min(ch, x, restarts=16, steps=1500, seed=10 + i)
        assert bnd.value <= roof.value + 1e-6


def test_max_concurrence_attained(rng):
    for i in range(8):
        ch = random_kraus_channel(2, 2, rng) if i % 2 else random_canonical_tp(rng)
        cmax = max_concurrence(ch)
        _, u = takagi(ch.theta.matrix)
        psi = u[:, 0]
        c = concurrence(ch, np.outer(psi, psi.conj())).value
        assert abs(c - cmax) < 1e-12
        # no sampled state exceeds it
        for _ in range(20):
            x = random_mixed(2, rng, rank=int(rng.integers(1, 3)))
            assert concurrence(ch, x).value <= cmax + 1e-12
