"""Small dense linear-algebra helpers shared by the whole package.

Everything works on plain complex numpy arrays.  Hermitian input matrices are
validated against `TOL_HERM` (relative to the matrix norm) and PSD spectra
against `TOL_PSD`; tiny negative eigenvalues inside the tolerance are clamped
to zero instead of propagating noise.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatchError,
    NegativeArgumentError,
    NotHermitianError,
    NotPSDError,
)

TOL_HERM = 1e-12
TOL_PSD = 1e-10


def as_matrix(x) -> np.ndarray:
    """Coerce to a square complex matrix."""
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def _scale(m: np.ndarray) -> float:
    return max(float(np.abs(m).max(initial=0.0)), 1.0)


def ensure_hermitian(x, tol: float = TOL_HERM) -> np.ndarray:
    """Validate Hermiticity within `tol` (relative) and return (M + M^dag)/2."""
    m = as_matrix(x)
    dev = float(np.abs(m - m.conj().T).max(initial=0.0))
    if dev > tol * _scale(m):
        raise NotHermitianError(f"matrix deviates from Hermitian by {dev:.3e}")
    return (m + m.conj().T) / 2


def eig_psd(x, tol: float = TOL_PSD) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending, clamped at 0) and eigenvectors of a PSD matrix.

    Eigenvalues more negative than `tol * scale` raise NotPSDError; small
    negative values inside the tolerance are clamped to zero.  Returns
    (w, V) with columns of V the eigenvectors matching w.
    """
    h = ensure_hermitian(x)
    w, v = np.linalg.eigh(h)
    floor = -tol * _scale(h)
    if w[0] < floor:
        raise NotPSDError(f"negative eigenvalue {w[0]:.3e} below tolerance")
    w = np.clip(w, 0.0, None)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def sqrt_psd(x) -> np.ndarray:
    """Hermitian PSD square root R with R @ R == input."""
    w, v = eig_psd(x)
    r = (v * np.sqrt(w)) @ v.conj().T
    return (r + r.conj().T) / 2


def is_psd(x, tol: float = TOL_PSD) -> bool:
    """True when the matrix is Hermitian PSD within tolerances."""
    try:
        eig_psd(x, tol=tol)
    except (NotHermitianError, NotPSDError):
        return False
    return True


def eta(y: float, base: float = 2.0) -> float:
    """Entropy kernel -y*log(y) with eta(0) = 0; negative y is rejected."""
    if y < 0.0:
        raise NegativeArgumentError(f"eta needs y >= 0, got {y}")
    if y == 0.0:
        return 0.0
    return -y * np.log(y) / np.log(base)


def eta_vec(y: np.ndarray, base: float = 2.0) -> np.ndarray:
    """Vectorized entropy kernel; entries must already be >= 0."""
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    mask = y > 0.0
    out[mask] = -y[mask] * np.log(y[mask]) / np.log(base)
    return out


_PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def pauli(i: int) -> np.ndarray:
    """Pauli matrix sigma_x, sigma_y or sigma_z for i in {0, 1, 2}."""
    return _PAULI[i].copy()


def bloch_split(h) -> tuple[float, np.ndarray]:
    """Decompose a Hermitian 2x2 matrix as (t*I + r.sigma)/2; returns (t, r)."""
    m = ensure_hermitian(h)
    if m.shape != (2, 2):
        raise DimensionMismatchError("bloch_split needs a 2x2 matrix")
    t = float(np.real(m[0, 0] + m[1, 1]))
    r = np.array(
        [
            2 * np.real(m[0, 1]),
            2 * np.imag(m[1, 0]),
            np.real(m[0, 0] - m[1, 1]),
        ]
    )
    return t, r


def bloch_join(t: float, r) -> np.ndarray:
    """Inverse of bloch_split: (t*I + r.sigma)/2 as a 2x2 matrix."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise DimensionMismatchError("bloch vector must have three components")
    m = t * np.eye(2, dtype=complex)
    for i in range(3):
        m += r[i] * _PAULI[i]
    return m / 2


def state_from_bloch(r) -> np.ndarray:
    """Density matrix (I + r.sigma)/2 for a Bloch vector with |r| <= 1."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise DimensionMismatchError("bloch vector must have three components")
    if np.linalg.norm(r) > 1.0 + 1e-12:
        raise NotPSDError(f"bloch vector norm {np.linalg.norm(r):.6f} exceeds 1")
    return bloch_join(1.0, r)


def random_state(dim: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Random rank-`rank` density matrix of size `dim` (Wishart-style)."""
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    x = g @ g.conj().T
    return x / np.trace(x).real
