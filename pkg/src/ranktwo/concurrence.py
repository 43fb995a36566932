"""Concurrence computations for rank-two channels.

The two-argument concurrence of a pair of PSD operators is

    C(X1, X2) = max{0, lambda_1 - sum_{j>1} lambda_j}

with lambda_j the (descending) eigenvalues of (sqrt(X1) X2 sqrt(X1))^(1/2).
For a length-2 channel the channel concurrence is C(Phi; X) =
2 C(X, theta X theta) with theta the derived anti-linear Kraus operator.
On qubit inputs this collapses to closed forms: a basis-free trace/det
identity, and for canonical-layout channels two real linear forms l1, l2
with C^2 = l1^2 + l2^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .antilinear import conj_sandwich, takagi
from .channel import RankTwoChannel
from .errors import (
    DegenerateChannelError,
    DimensionMismatchError,
    NotDegenerateError,
    WrongLengthError,
)
from .linalg import eig_psd, ensure_hermitian, sqrt_psd

TOL_ROUTE = 1e-9
TOL_RANK1 = 1e-12


@dataclass(frozen=True)
class ConcurrenceReport:
    """Channel concurrence with the route that produced it.

    c_complex, l1 and l2 are filled for canonical-layout qubit channels
    only; there C = |c_complex| and C^2 = l1^2 + l2^2.
    """

    value: float
    method: str
    c_complex: Optional[complex] = None
    l1: Optional[float] = None
    l2: Optional[float] = None
    degenerate: bool = False


@dataclass(frozen=True)
class ConcurrenceBound:
    """Lower bound on channel concurrence from two-Kraus sub-channels."""

    value: float
    closed_form: Optional[float]
    sub_values: tuple


def pair_concurrence(x1, x2) -> float:
    """C(X1, X2) = max{0, lambda_1 - sum of the rest}.

    For 2x2 inputs the trace/det identity
    C^2 = tr(X1 X2) - 2 sqrt(det X1 det X2) is evaluated as well and the two
    routes are required to agree within 1e-9.
    """
    x1 = ensure_hermitian(x1)
    x2 = ensure_hermitian(x2)
    if x1.shape != x2.shape:
        raise DimensionMismatchError(f"shape mismatch {x1.shape} vs {x2.shape}")
    s = sqrt_psd(x1)
    w, _ = eig_psd(s @ x2 @ s)
    # eigenvalues at the solver noise floor are exact zeros of the product;
    # sqrt would amplify them to ~1e-8 and poison the lambda sum
    w[w <= 64.0 * np.finfo(float).eps * w[0]] = 0.0
    lam = np.sqrt(w)
    value = float(max(0.0, lam[0] - lam[1:].sum()))
    if x1.shape == (2, 2):
        tr = float(np.trace(x1 @ x2).real)
        floor = 64.0 * np.finfo(float).eps
        dets = []
        for x in (x1, x2):
            d = float(np.linalg.det(x).real)
            t = float(np.trace(x).real)
            # determinants of rank-one factors cancel exactly; below the
            # rounding floor they are true zeros, like the clamp above
            dets.append(0.0 if abs(d) <= floor * t * t else d)
        fast_sq = tr - 2.0 * np.sqrt(max(dets[0] * dets[1], 0.0))
        # compare the squares: near C = 0 or rank-one inputs the square
        # roots sit on a sqrt(eps) noise floor while the squares are clean
        if abs(value * value - max(0.0, fast_sq)) > TOL_ROUTE * max(1.0, tr):
            raise ArithmeticError(
                f"2x2 concurrence routes disagree: eig {value}^2 vs trace/det {fast_sq}"
            )
    return value


def _closed_form_sq(theta_matrix: np.ndarray, x: np.ndarray) -> float:
    """Basis-free qubit closed form for C(Phi; X)^2 (length-2, d = 2)."""
    y = theta_matrix @ x.conj() @ theta_matrix.conj()
    tr = float(np.trace(x @ y).real)
    absdet = abs(np.linalg.det(theta_matrix))
    detx = float(np.linalg.det(x).real)
    return 4.0 * (tr - 2.0 * absdet * detx)


def _canonical_forms(params, x: np.ndarray) -> tuple[complex, float, float]:
    """(c_complex, l1, l2) of a canonical channel on a Hermitian X."""
    z0, z1 = params.z0, params.z1
    a0, a1 = abs(z0) ** 2, abs(z1) ** 2
    l1 = 2.0 * float((a0 * x[0, 0] - a1 * x[1, 1]).real)
    w = z0 * np.conj(z1) * x[1, 0]
    l2 = -4.0 * float(w.imag)
    c = complex(l1 - 1j * l2)
    return c, l1, l2


def concurrence(channel: RankTwoChannel, x) -> ConcurrenceReport:
    """Concurrence C(Phi; X) of a length-2 channel on a PSD input.

    Every applicable route (pair eigenvalue, qubit closed form, canonical
    linear forms, pure-input determinant) is evaluated and cross-checked to
    1e-9; the report's method names the route that produced the value.
    """
    if channel.length != 2:
        raise WrongLengthError("concurrence needs a length-2 channel; see lower_bound")
    w, _ = eig_psd(x)
    x = ensure_hermitian(x)
    if x.shape[0] != channel.dim_in:
        raise DimensionMismatchError("state dimension does not match the channel")

    theta = channel.theta
    pair_value = 2.0 * pair_concurrence(x, conj_sandwich(theta, x))
    trace = float(w.sum())
    scale_sq = max(1.0, pair_value * pair_value, trace * trace)
    checks: list[tuple[str, float]] = []

    method = "pair_eigen"
    value = pair_value
    c_complex = l1 = l2 = None
    degenerate = False

    rank_one = w[0] > 0 and (x.shape[0] < 2 or w[1] <= TOL_RANK1 * w[0])
    if rank_one:
        det_out = float(np.linalg.det(channel.apply(x)).real)
        value = 2.0 * np.sqrt(max(0.0, det_out))
        method = "pure_direct"
        checks.append((method, value))

    if channel.dim_in == 2:
        degenerate = channel.is_degenerate()
        closed = float(np.sqrt(max(0.0, _closed_form_sq(theta.matrix, x))))
        checks.append(("closed_2x2", closed))
        if not rank_one:
            value, method = closed, "closed_2x2"
        params = channel.canonical
        if params is not None:
            c_complex, l1, l2 = _canonical_forms(params, x)
            checks.append(("canonical_forms", abs(c_complex)))
            if degenerate and not rank_one:
                value, method = _degenerate_value(params, x), "degenerate_linear"
                checks.append((method, value))

    for name, other in checks:
        if abs(other * other - pair_value * pair_value) > TOL_ROUTE * scale_sq:
            raise ArithmeticError(
                f"concurrence routes disagree: pair_eigen {pair_value} vs {name} {other}"
            )
    return ConcurrenceReport(
        value=value,
        method=method,
        c_complex=c_complex,
        l1=l1,
        l2=l2,
        degenerate=degenerate,
    )


def _degenerate_value(params, x: np.ndarray) -> float:
    if params.both_zero:
        return 0.0
    if abs(params.z0sq) <= abs(params.z1sq):
        return 2.0 * abs(params.z1sq) * float(x[1, 1].real)
    return 2.0 * abs(params.z0sq) * float(x[0, 0].real)


def concurrence_degenerate(channel: RankTwoChannel, omega) -> float:
    """Linear concurrence formula for degenerate canonical qubit channels."""
    params = channel.require_canonical()
    if not params.degenerate:
        raise NotDegenerateError("channel is not degenerate; use concurrence()")
    omega = ensure_hermitian(omega)
    return _degenerate_value(params, omega)


def separable_vectors(channel: RankTwoChannel) -> tuple[np.ndarray, np.ndarray]:
    """The two pure inputs a non-degenerate length-2 qubit channel maps to
    rank-one outputs: the solutions of <psi, theta psi> = 0.

    In canonical layout these are proportional to conj(z1)|0> + conj(z0)|1>
    and conj(z1)|0> - conj(z0)|1>; the general case solves the quadratic
    form of conj(theta matrix) directly.  Returned normalized, largest
    component rotated to the positive real axis.
    """
    if channel.length != 2 or channel.dim_in != 2:
        raise WrongLengthError("separable vectors need a length-2 qubit channel")
    if channel.is_degenerate():
        raise DegenerateChannelError("degenerate channels have a single separable ray")
    c = channel.theta.matrix.conj()
    scale = float(np.abs(c).max())
    if abs(c[1, 1]) > 1e-14 * scale:
        disc = np.sqrt(complex(c[0, 1] ** 2 - c[0, 0] * c[1, 1]))
        roots = [(-c[0, 1] + disc) / c[1, 1], (-c[0, 1] - disc) / c[1, 1]]
        vecs = [np.array([1.0, r], dtype=complex) for r in roots]
    else:
        vecs = [
            np.array([0.0, 1.0], dtype=complex),
            np.array([2.0 * c[0, 1], -c[0, 0]], dtype=complex),
        ]
    out = []
    for v in vecs:
        v = v / np.linalg.norm(v)
        k = int(np.argmax(np.abs(v)))
        phase = v[k] / abs(v[k])
        v = v / phase
        residual = abs(channel.theta.expectation(v))
        if residual > 1e-10 * max(scale, 1.0):
            raise ArithmeticError(f"separable-vector residual {residual:.3e}")
        out.append(v)
    return out[0], out[1]


def lower_bound(channel: RankTwoChannel, x) -> ConcurrenceBound:
    """Concurrence lower bound sqrt(sum of squared sub-channel concurrences).

    Valid for any length; for qubit inputs the equivalent closed form
    4 tr(X Phi'(X)) - 8 det X sum |det theta_jk| is reported alongside.
    """
    x = ensure_hermitian(x)
    eig_psd(x)
    subs = []
    for _, _, t in channel.derived_kraus:
        subs.append(2.0 * pair_concurrence(x, conj_sandwich(t, x)))
    value = float(np.sqrt(sum(c * c for c in subs)))
    closed = None
    if channel.dim_in == 2:
        absdets = sum(abs(np.linalg.det(t.matrix)) for _, _, t in channel.derived_kraus)
        est = 4.0 * float(np.trace(x @ channel.derivative(x)).real)
        est -= 8.0 * float(np.linalg.det(x).real) * absdets
        closed = float(np.sqrt(max(0.0, est)))
    return ConcurrenceBound(value=value, closed_form=closed, sub_values=tuple(subs))


def max_concurrence(channel: RankTwoChannel) -> float:
    """Largest concurrence over density operators: twice the largest
    singular value of the derived Kraus matrix (length-2 qubit channels)."""
    if channel.length != 2 or channel.dim_in != 2:
        raise WrongLengthError("max_concurrence needs a length-2 qubit channel")
    s, _ = takagi(channel.theta.matrix)
    return 2.0 * float(s[0])
