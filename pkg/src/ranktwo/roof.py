"""Brute-force convex-roof minimization.

Independent of every closed form in the package: the roof

    min over decompositions X = sum_i |psi_i><psi_i| of sum_i leaf(psi_i)

is searched directly, with leaf(psi) either the pure-state concurrence
2 sqrt(det Phi(|psi><psi|)) or the scaled output entropy.  Decompositions
of a rank-r input are parametrized by n x r matrices with orthonormal
columns acting on the rank factor; simulated annealing over Givens
rotations of row pairs runs in a kernel backend.  Serves as the oracle
the closed-form results are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from scipy import optimize

from ._kernels import roof_anneal
from .antilinear import takagi
from .channel import RankTwoChannel
from .errors import OutOfRangeError, SpecFormatError
from .linalg import eig_psd, eta

_LEAF_IDS = {"concurrence": 0, "entropy": 1}
DEFAULT_RESTARTS = 32
DEFAULT_STEPS = 2500


def default_n_max(dim: int) -> int:
    """Ensemble size used when none is requested: 4 for qubit inputs,
    6 for larger ones."""
    return 4 if dim <= 2 else 6


@dataclass(frozen=True)
class RoofResult:
    """Outcome of a roof search: the minimum and the ensemble attaining it.

    vectors holds the (unnormalized) members as rows; weights are their
    squared norms and leaf_values the leaf evaluated on each member.
    """

    value: float
    leaf: str
    vectors: np.ndarray
    weights: np.ndarray
    leaf_values: np.ndarray
    restarts: int
    seed: int

    @property
    def n_members(self) -> int:
        return self.vectors.shape[0]


def _rank_factor(x, tol: float = 1e-12) -> np.ndarray:
    w, v = eig_psd(x)
    if w[0] <= 0.0:
        raise OutOfRangeError("roof of the zero operator is trivially zero")
    keep = w > tol * w[0]
    return v[:, keep] * np.sqrt(w[keep])


def _leaf_value(channel: RankTwoChannel, v: np.ndarray, leaf: str, base: float) -> float:
    out = channel.apply_pure(v)
    det = float(np.linalg.det(out).real)
    if leaf == "concurrence":
        return 2.0 * np.sqrt(max(0.0, det))
    tr = float(np.trace(out).real)
    root = np.sqrt(max(0.0, tr * tr - 4.0 * det))
    # the output is PSD, so a negative low eigenvalue is pure rounding
    lo = max(0.0, 0.5 * (tr - root))
    return eta(0.5 * (tr + root), base) + eta(lo, base) - eta(tr, base)


def roof_min(
    channel: RankTwoChannel,
    x,
    leaf: str = "concurrence",
    n_max: int | None = None,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    base: float = 2.0,
    steps: int = DEFAULT_STEPS,
) -> RoofResult:
    """Minimize the summed leaf over n_max-member decompositions of x.

    Deterministic: identical inputs and seed reproduce the result exactly
    (per kernel backend).  Larger n_max can only lower the value.
    """
    if leaf not in _LEAF_IDS:
        raise SpecFormatError(f"leaf must be one of {sorted(_LEAF_IDS)}")
    if restarts < 1 or steps < 1:
        raise OutOfRangeError("restarts and steps must be positive")
    v = _rank_factor(x)
    rank = v.shape[1]
    if n_max is None:
        n_max = default_n_max(channel.dim_in)
    if n_max < rank:
        raise OutOfRangeError(f"n_max {n_max} below the input rank {rank}")
    av = np.einsum("mab,br->mar", channel.kraus, v)
    value, u = roof_anneal(
        av, n_max, restarts, steps, seed, _LEAF_IDS[leaf], float(np.log(base))
    )
    vectors = u @ v.T
    weights = np.sum(np.abs(vectors) ** 2, axis=1)

    leaf_values = np.array([_leaf_value(channel, vec, leaf, base) for vec in vectors])
    residual = float(np.abs(vectors.T @ vectors.conj() - np.asarray(x, dtype=complex)).max())
    if residual > 1e-10 * max(1.0, float(weights.sum())):
        raise ArithmeticError(f"ensemble fails to resolve the input: residual {residual:.3e}")
    return RoofResult(
        value=value,
        leaf=leaf,
        vectors=vectors,
        weights=weights,
        leaf_values=leaf_values,
        restarts=restarts,
        seed=seed,
    )


@dataclass(frozen=True)
class FlatnessReport:
    """Leaf spread over the significant members of an optimal ensemble."""

    spread: float
    value: float
    member_values: np.ndarray
    weights: np.ndarray

    def passes(self, tol: float = 1e-4) -> bool:
        return self.spread <= tol


def _flat_two_member(channel: RankTwoChannel, x, leaf: str, base: float):
    """Build the flat two-member decomposition of a rank <= 2 input.

    Member mixing acts on the symmetric form S (the channel's quadratic
    invariant on the rank-factor columns) by congruence, so a Takagi
    factorization plus a phase puts the member values at (s1, -s2).  Real
    rotations then trade weight between the members while the summed
    value stays pinned at s1 - s2; at the bracket ends one member's value
    hits zero, so the normalized gap changes sign and a root finder lands
    on the flat point.  Member values are re-evaluated through the
    determinant route, never through S.
    """
    v = _rank_factor(x)
    if v.shape[1] == 1:
        w = float(np.sum(np.abs(v) ** 2))
        lv = _leaf_value(channel, v[:, 0], leaf, base)
        return lv, np.array([lv / w]), np.array([w])

    m = channel.theta.matrix
    s_form = np.conj(v).T @ m @ np.conj(v)
    sig, wmat = takagi(s_form)
    u0 = np.diag([1.0, -1.0j]) @ wmat.T

    def members(t):
        c, sn = np.cos(t), np.sin(t)
        rot = np.array([[c, -sn], [sn, c]])
        return (rot @ u0) @ v.T

    def split(t):
        vecs = members(t)
        weights = np.sum(np.abs(vecs) ** 2, axis=1)
        leafs = np.array(
            [_leaf_value(channel, vec, leaf, base) for vec in vecs]
        )
        return leafs, weights

    def gap(t):
        leafs, weights = split(t)
        return leafs[0] / weights[0] - leafs[1] / weights[1]

    if sig[0] <= 0.0:
        t_star = 0.25 * np.pi
    else:
        t_lo = np.arctan(np.sqrt(sig[1] / sig[0]))
        t_hi = np.arctan(np.sqrt(sig[0] / max(sig[1], 1e-300)))
        t_hi = min(t_hi, 0.5 * np.pi)
        if gap(t_lo) <= 0.0 or gap(t_hi) >= 0.0:
            t_star = 0.5 * (t_lo + t_hi)
        else:
            t_star = optimize.brentq(gap, t_lo, t_hi, xtol=1e-14)
    leafs, weights = split(t_star)
    return float(leafs.sum()), leafs / weights, weights


def flatness_check(
    channel: RankTwoChannel,
    x,
    leaf: str = "concurrence",
    weight_floor: float = 1e-8,
    **kwargs,
) -> FlatnessReport:
    """Check the roof is flat: some optimal ensemble has the same
    normalized leaf value on every member carrying weight.

    The annealed minimizer lands anywhere on the optimal face, so its raw
    members need not be flat.  A direct two-member search exhibits the
    flat representative; its summed leaf must reproduce the annealed roof
    value, which certifies it is indeed optimal.  Members below
    `weight_floor` (relative to the total weight) are ignored.
    """
    result = roof_min(channel, x, leaf=leaf, **kwargs)
    base = kwargs.get("base", 2.0)
    pair_sum, member, weights = _flat_two_member(channel, x, leaf, base)
    if pair_sum > result.value + 1e-6 * max(1.0, result.value):
        raise ArithmeticError(
            f"two-member decomposition missed the roof: {pair_sum} vs {result.value}"
        )
    total = float(weights.sum())
    keep = weights > weight_floor * total
    member = member[keep]
    spread = float(member.max() - member.min()) if member.size else 0.0
    return FlatnessReport(
        spread=spread,
        value=result.value,
        member_values=member,
        weights=weights[keep],
    )
