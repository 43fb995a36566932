"""Anti-linear operators on C^d and their composition calculus.

An anti-linear operator T is stored through the matrix M of its action

    T psi = M conj(psi)

in the reference basis.  All composition rules below follow from that
convention:

* adjoint (defined by <a, T* b> = <b, T a>): matrix M^T
* linear L after T: matrix L M (anti-linear)
* T after linear L: matrix M conj(L) (anti-linear)
* T1 after T2: matrix M1 conj(M2), a plain linear operator
* T is Hermitian (T = T*) exactly when M is symmetric

The sandwich T X T of a linear operator X between two copies of T is linear
with matrix M conj(X) conj(M); for Hermitian X this coincides with the
adjoint-style sandwich T X* T.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateChannelError, DimensionMismatchError, NotHermitianError
from .linalg import as_matrix

TOL_SYM = 1e-12


@dataclass(frozen=True)
class AntilinearOp:
    """Anti-linear operator psi -> matrix @ conj(psi)."""

    matrix: np.ndarray = field()

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, psi) -> np.ndarray:
        """Apply to a vector: M @ conj(psi)."""
        psi = np.asarray(psi, dtype=complex)
        if psi.shape != (self.dim,):
            raise DimensionMismatchError(f"vector shape {psi.shape} != ({self.dim},)")
        return self.matrix @ psi.conj()

    def adjoint(self) -> "AntilinearOp":
        """Adjoint operator; its matrix is the transpose."""
        return AntilinearOp(self.matrix.T.copy())

    def is_hermitian(self, tol: float = TOL_SYM) -> bool:
        m = self.matrix
        scale = max(float(np.abs(m).max(initial=0.0)), 1.0)
        return float(np.abs(m - m.T).max(initial=0.0)) <= tol * scale

    def hermitian_part(self) -> "AntilinearOp":
        """(T + T*)/2, the anti-linear Hermitian part (symmetric matrix)."""
        return AntilinearOp((self.matrix + self.matrix.T) / 2)

    def expectation(self, psi) -> complex:
        """<psi, T psi>."""
        psi = np.asarray(psi, dtype=complex)
        return complex(np.vdot(psi, self.matrix @ psi.conj()))

    def after_linear(self, l) -> "AntilinearOp":
        """Composition T o L with a linear operator L."""
        return AntilinearOp(self.matrix @ as_matrix(l).conj())

    def before_linear(self, l) -> "AntilinearOp":
        """Composition L o T with a linear operator L."""
        return AntilinearOp(as_matrix(l) @ self.matrix)

    def scaled(self, c: complex) -> "AntilinearOp":
        return AntilinearOp(c * self.matrix)


def compose_antilinear(t1: AntilinearOp, t2: AntilinearOp) -> np.ndarray:
    """Matrix of the linear operator T1 o T2."""
    return t1.matrix @ t2.matrix.conj()


def conj_sandwich(t: AntilinearOp, x) -> np.ndarray:
    """Matrix of the linear operator T o X o T for linear X.

    Equals M conj(X) conj(M); for Hermitian X and Hermitian T this is the
    usual two-sided conjugation T X T.
    """
    x = as_matrix(x)
    return t.matrix @ x.conj() @ t.matrix.conj()


def sandwich_antilinear(a, t: AntilinearOp, b) -> AntilinearOp:
    """Anti-linear operator A* o T o B for linear maps A, B (2xd allowed).

    The result acts on the domain of B; its matrix is A^dag M conj(B).
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2 or a.shape != b.shape:
        raise DimensionMismatchError("A and B must be equal-shape matrices")
    if a.shape[0] != t.dim:
        raise DimensionMismatchError("T must act on the output space of A and B")
    return AntilinearOp(a.conj().T @ t.matrix @ b.conj())


def spin_flip() -> AntilinearOp:
    """The qubit spin flip: (c0, c1) -> (conj(c1), -conj(c0)).

    It is anti-unitary, anti-Hermitian (adjoint = inverse = minus itself) and
    satisfies flip o Y* o flip o Y = -det(Y) * identity for every 2x2 Y.
    """
    return AntilinearOp(np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex))


def wootters_conjugation() -> AntilinearOp:
    """Two-qubit conjugation -flip x flip; its sandwich gives the spin-flipped
    density matrix (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y)."""
    f = spin_flip().matrix
    return AntilinearOp(-np.kron(f, f))


def takagi(m) -> tuple[np.ndarray, np.ndarray]:
    """Takagi factorization of a complex symmetric matrix: M = U diag(s) U^T.

    Returns (s, U) with s >= 0 descending and U unitary.  Uses the real
    symmetric embedding [[Re M, Im M], [Im M, -Re M]], whose eigenpairs at
    eigenvalue +s give the columns of U as x + i y.
    """
    m = as_matrix(m)
    scale = max(float(np.abs(m).max(initial=0.0)), 1.0)
    if float(np.abs(m - m.T).max(initial=0.0)) > TOL_SYM * scale:
        raise NotHermitianError("takagi needs a complex symmetric matrix")
    d = m.shape[0]
    re, im = m.real, m.imag
    emb = np.block([[re, im], [im, -re]])
    w, v = np.linalg.eigh(emb)
    # the spectrum is symmetric +/- s; the d largest eigenvalues carry U
    idx = np.argsort(w)[::-1][:d]
    s = w[idx]
    u = v[:d, idx] + 1j * v[d:, idx]
    # eigh-normalized real vectors give unit-norm complex columns already
    s = np.clip(s, 0.0, None)
    return s, u


def polar_conjugation(t: AntilinearOp, tol: float = 1e-12) -> AntilinearOp:
    """Conjugation theta from the polar decomposition T = theta |T|.

    Needs T Hermitian (symmetric matrix) and invertible; theta is then the
    unique conjugation (anti-linear, Hermitian, theta^2 = 1) with matrix
    U U^T from the Takagi factorization of the matrix of T.
    """
    s, u = takagi(t.matrix)
    if s[-1] <= tol * max(s[0], 1.0):
        raise DegenerateChannelError("polar conjugation undefined: operator is singular")
    return AntilinearOp(u @ u.T)


def polar_modulus(t: AntilinearOp) -> np.ndarray:
    """|T| = sqrt(T* T), the PSD linear factor of the polar decomposition."""
    s, u = takagi(t.matrix)
    return (u * s) @ u.conj().T
