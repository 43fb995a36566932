"""Completely positive maps of rank two: maps into 2x2 matrices.

A channel here is a CP map Phi(X) = sum_j A_j X A_j^dag whose Kraus operators
A_j are 2 x d matrices ("length" = number of Kraus operators, which is
required to be a linearly independent family).  Each ordered pair (j, k)
carries a derived anti-linear Kraus operator

    theta_jk = (A_j* o flip o A_k - A_k* o flip o A_j) / 2

acting on the input space, where flip is the qubit spin flip on the output
space.  These operators encode det Phi on rank-one inputs and drive every
concurrence formula in the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .antilinear import AntilinearOp, conj_sandwich, sandwich_antilinear, spin_flip
from .errors import (
    DimensionMismatchError,
    NotCanonicalError,
    SpecFormatError,
    WrongLengthError,
)
from .linalg import as_matrix

TOL_DEGENERATE = 1e-12
TOL_CANONICAL = 1e-12
TOL_TP = 1e-10


@dataclass(frozen=True)
class QubitCanonicalParams:
    """Entries of a canonical-layout qubit channel and its z-parameters.

    Canonical layout: one Kraus operator diagonal diag(a00, a11), the other
    antidiagonal with entries b01 (top right) and b10 (bottom left).  The
    derived Kraus operator is then diag(z0^2, -z1^2) with
    z0^2 = conj(b10 a00) and z1^2 = conj(b01 a11).
    """

    a00: complex
    a11: complex
    b01: complex
    b10: complex

    @property
    def z0sq(self) -> complex:
        return np.conj(self.b10 * self.a00)

    @property
    def z1sq(self) -> complex:
        return np.conj(self.b01 * self.a11)

    @property
    def z0(self) -> complex:
        return complex(np.sqrt(complex(self.z0sq)))

    @property
    def z1(self) -> complex:
        return complex(np.sqrt(complex(self.z1sq)))

    @property
    def degenerate(self) -> bool:
        s = max(abs(self.z0sq), abs(self.z1sq))
        if s == 0.0:
            return True
        return bool(min(abs(self.z0sq), abs(self.z1sq)) <= TOL_DEGENERATE * s)

    @property
    def both_zero(self) -> bool:
        return bool(max(abs(self.z0sq), abs(self.z1sq)) == 0.0)


class RankTwoChannel:
    """CP map into 2x2 matrices given by a linearly independent Kraus family."""

    def __init__(self, kraus, name: str = "", q: Optional[float] = None):
        ks = np.asarray(kraus, dtype=complex)
        if ks.ndim != 3 or ks.shape[1] != 2:
            raise DimensionMismatchError(
                f"kraus must have shape (m, 2, d), got {ks.shape}"
            )
        if ks.shape[0] < 2:
            raise WrongLengthError("a rank-two channel needs at least 2 Kraus operators")
        gram = np.einsum("jab,kab->jk", ks.conj(), ks)
        ev = np.linalg.eigvalsh(gram)
        if ev[0] <= 1e-12 * max(ev[-1], 1e-300):
            raise WrongLengthError("Kraus operators are linearly dependent")
        self.kraus = ks
        self.name = name
        self.q = q
        self._derived: Optional[list[tuple[int, int, AntilinearOp]]] = None

    # -- basic structure ---------------------------------------------------

    @property
    def length(self) -> int:
        return self.kraus.shape[0]

    @property
    def dim_in(self) -> int:
        return self.kraus.shape[2]

    def apply(self, x) -> np.ndarray:
        """Phi(X) = sum_j A_j X A_j^dag (X need not be Hermitian)."""
        x = as_matrix(x)
        if x.shape != (self.dim_in, self.dim_in):
            raise DimensionMismatchError(
                f"state shape {x.shape} != ({self.dim_in}, {self.dim_in})"
            )
        return np.einsum("jab,bc,jdc->ad", self.kraus, x, self.kraus.conj())

    def apply_pure(self, psi) -> np.ndarray:
        """Phi(|psi><psi|) without forming the projector."""
        psi = np.asarray(psi, dtype=complex)
        w = self.kraus @ psi
        return w.T @ w.conj()

    # -- derived anti-linear Kraus family ----------------------------------

    @property
    def derived_kraus(self) -> list[tuple[int, int, AntilinearOp]]:
        """All theta_jk for j < k, as (j, k, operator) triples."""
        if self._derived is None:
            flip = spin_flip()
            out = []
            for j in range(self.length):
                for k in range(j + 1, self.length):
                    t = sandwich_antilinear(self.kraus[j], flip, self.kraus[k])
                    out.append((j, k, t.hermitian_part()))
            self._derived = out
        return self._derived

    @property
    def theta(self) -> AntilinearOp:
        """The single derived Kraus operator of a length-2 channel."""
        if self.length != 2:
            raise WrongLengthError("theta is defined for length-2 channels only")
        return self.derived_kraus[0][2]

    def det_pure(self, psi1, psi2) -> complex:
        """det Phi(|psi2><psi1|) from the derived Kraus expectations.

        Equals sum over j < k of <psi1, theta_jk psi1> conj(<psi2, theta_jk psi2>).
        """
        acc = 0.0 + 0.0j
        for _, _, t in self.derived_kraus:
            acc += t.expectation(psi1) * np.conj(t.expectation(psi2))
        return acc

    def derivative(self, x) -> np.ndarray:
        """The co-positive companion map: sum over j<k of theta_jk X theta_jk.

        Sandwiches are composition sandwiches (matrix M conj(X) conj(M)), so
        det Phi(|psi2><psi1|) = <psi1, derivative(|psi1><psi2|) psi2>
        holds for arbitrary vector pairs.
        """
        x = as_matrix(x)
        out = np.zeros((self.dim_in, self.dim_in), dtype=complex)
        for _, _, t in self.derived_kraus:
            out += conj_sandwich(t, x)
        return out

    def sub_channel(self, j: int, k: int) -> "RankTwoChannel":
        """The length-2 channel built from Kraus operators j and k."""
        return RankTwoChannel(self.kraus[[j, k]], name=f"{self.name}[{j},{k}]")

    # -- predicates ---------------------------------------------------------

    def is_trace_preserving(self, tol: float = TOL_TP) -> bool:
        s = np.einsum("jab,jac->bc", self.kraus.conj(), self.kraus)
        return bool(np.abs(s - np.eye(self.dim_in)).max() <= tol)

    def is_unital(self, tol: float = TOL_TP) -> bool:
        s = np.einsum("jab,jcb->ac", self.kraus, self.kraus.conj())
        return bool(np.abs(s - np.eye(2)).max() <= tol)

    def is_doubly_stochastic(self, tol: float = TOL_TP) -> bool:
        return self.is_trace_preserving(tol) and self.is_unital(tol)

    def is_degenerate(self) -> bool:
        """Singular derived Kraus operator (length-2 qubit channels)."""
        if self.length != 2 or self.dim_in != 2:
            raise WrongLengthError("degeneracy test needs a length-2 qubit channel")
        s = np.linalg.svd(self.theta.matrix, compute_uv=False)
        if s[0] == 0.0:
            return True
        return bool(s[-1] <= TOL_DEGENERATE * s[0])

    # -- canonical layout ---------------------------------------------------

    @property
    def canonical(self) -> Optional[QubitCanonicalParams]:
        """Canonical parameters when one Kraus operator is diagonal and the
        other antidiagonal (within tolerance); None otherwise."""
        if self.length != 2 or self.dim_in != 2:
            return None
        a, b = self.kraus[0], self.kraus[1]
        scale = max(float(np.abs(self.kraus).max()), 1e-300)

        def diag_ok(m):
            return max(abs(m[0, 1]), abs(m[1, 0])) <= TOL_CANONICAL * scale

        def anti_ok(m):
            return max(abs(m[0, 0]), abs(m[1, 1])) <= TOL_CANONICAL * scale

        if diag_ok(a) and anti_ok(b):
            return QubitCanonicalParams(a[0, 0], a[1, 1], b[0, 1], b[1, 0])
        if anti_ok(a) and diag_ok(b):
            return QubitCanonicalParams(b[0, 0], b[1, 1], a[0, 1], a[1, 0])
        return None

    def require_canonical(self) -> QubitCanonicalParams:
        p = self.canonical
        if p is None:
            raise NotCanonicalError(
                "operation needs a canonical-layout (diagonal/antidiagonal) channel"
            )
        return p

    # -- dual map -----------------------------------------------------------

    def dual(self):
        """The dual (adjoint) map X -> sum_j A_j^dag X A_j.

        For qubit inputs (d = 2) this is again a rank-two channel; for d > 2
        it maps 2x2 matrices into dxd ones and a DualMap object is returned.
        """
        adj = np.transpose(self.kraus.conj(), (0, 2, 1))
        if self.dim_in == 2:
            return RankTwoChannel(adj, name=f"dual({self.name})")
        return DualMap(adj, name=f"dual({self.name})")

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<RankTwoChannel{label} length={self.length} dim_in={self.dim_in}>"


class DualMap:
    """Dual of a rank-two channel when the input dimension exceeds two."""

    def __init__(self, kraus, name: str = ""):
        self.kraus = np.asarray(kraus, dtype=complex)
        self.name = name

    def apply(self, x) -> np.ndarray:
        x = as_matrix(x)
        if x.shape != (2, 2):
            raise DimensionMismatchError("dual map acts on 2x2 matrices")
        return np.einsum("jab,bc,jdc->ad", self.kraus, x, self.kraus.conj())

    def is_trace_preserving(self, tol: float = TOL_TP) -> bool:
        s = np.einsum("jab,jac->bc", self.kraus.conj(), self.kraus)
        return bool(np.abs(s - np.eye(2)).max() <= tol)


# -- constructors ------------------------------------------------------------


def canonical_qubit(a00, a11, b01, b10, name: str = "") -> RankTwoChannel:
    """Length-2 qubit channel with Kraus diag(a00, a11) and antidiag(b01, b10)."""
    a = np.array([[a00, 0.0], [0.0, a11]], dtype=complex)
    b = np.array([[0.0, b01], [b10, 0.0]], dtype=complex)
    return RankTwoChannel(np.stack([a, b]), name=name)


def symmetric_qubit(name: str = "symmetric") -> RankTwoChannel:
    """The doubly stochastic canonical channel with all entries 1/sqrt(2)."""
    s = 1.0 / np.sqrt(2.0)
    return canonical_qubit(s, s, s, s, name=name)


def phase_damping(q: float, name: str = "") -> RankTwoChannel:
    """Two-qubit partial trace deformed by q: X -> (1-q)(sum of blocks with +)
    + q(alternating signs); trace-preserving exactly at q = 1/2.

    Kraus operators: sqrt(1-q) [I I] and sqrt(q) [I -I] (2x4 each).
    """
    if not 0.0 <= q <= 1.0:
        raise SpecFormatError(f"q must lie in [0, 1], got {q}")
    eye = np.eye(2, dtype=complex)
    a = np.sqrt(1.0 - q) * np.hstack([eye, eye])
    b = np.sqrt(q) * np.hstack([eye, -eye])
    return RankTwoChannel(np.stack([a, b]), name=name or f"phase-damped trace q={q}", q=q)


def partial_trace_two_qubit(name: str = "partial trace") -> RankTwoChannel:
    """Trace over the second qubit, with block Kraus [I 0] and [0 I]."""
    eye = np.eye(2, dtype=complex)
    zero = np.zeros((2, 2), dtype=complex)
    a = np.hstack([eye, zero])
    b = np.hstack([zero, eye])
    return RankTwoChannel(np.stack([a, b]), name=name)


# -- JSON serialization -------------------------------------------------------


def _matrix_to_pairs(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_from_pairs(rows, what: str) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 3 or arr.shape[0] != 2 or arr.shape[2] != 2:
        raise SpecFormatError(f"{what}: each Kraus operator must be 2 rows of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def channel_to_dict(ch: RankTwoChannel) -> dict:
    out: dict = {"kraus": [_matrix_to_pairs(k) for k in ch.kraus]}
    if ch.name:
        out["name"] = ch.name
    if ch.q is not None:
        out["q"] = float(ch.q)
    p = ch.canonical
    if p is not None:
        out["canonical"] = {
            "a00": [p.a00.real, p.a00.imag],
            "a11": [p.a11.real, p.a11.imag],
            "b01": [p.b01.real, p.b01.imag],
            "b10": [p.b10.real, p.b10.imag],
            "z0sq": [p.z0sq.real, p.z0sq.imag],
            "z1sq": [p.z1sq.real, p.z1sq.imag],
            "degenerate": p.degenerate,
        }
    return out


def channel_from_dict(data) -> RankTwoChannel:
    if not isinstance(data, dict):
        raise SpecFormatError("channel spec must be a JSON object")
    if "kraus" not in data:
        raise SpecFormatError("channel spec needs a 'kraus' field")
    kraus_field = data["kraus"]
    if not isinstance(kraus_field, list) or len(kraus_field) < 2:
        raise SpecFormatError("'kraus' must be a list of at least two operators")
    mats = [_matrix_from_pairs(k, f"kraus[{i}]") for i, k in enumerate(kraus_field)]
    dims = {m.shape[1] for m in mats}
    if len(dims) != 1:
        raise SpecFormatError("all Kraus operators must share the same input dimension")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise SpecFormatError("'name' must be a string")
    q = data.get("q")
    if q is not None and not isinstance(q, (int, float)):
        raise SpecFormatError("'q' must be a number")
    try:
        return RankTwoChannel(np.stack(mats), name=name, q=q)
    except (DimensionMismatchError, WrongLengthError) as exc:
        raise SpecFormatError(str(exc)) from exc


def save_channel(ch: RankTwoChannel, path) -> None:
    with open(path, "w") as fh:
        json.dump(channel_to_dict(ch), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_channel(path) -> RankTwoChannel:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"invalid JSON in {path}: {exc}") from exc
    return channel_from_dict(data)
