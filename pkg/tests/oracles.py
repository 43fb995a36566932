"""Independent reference implementations used to cross-check the package.

Everything here works from first principles with plain numpy calls and
imports nothing from ranktwo, so agreement between the two sides is
meaningful.
"""

import numpy as np

# sigma_y tensor sigma_y written out; the i*i products make it real
YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


def apply_kraus(kraus, x):
    """Channel action sum_j K_j X K_j^dag, written as a bare loop."""
    x = np.asarray(x, dtype=complex)
    out = np.zeros((kraus[0].shape[0], kraus[0].shape[0]), dtype=complex)
    for k in kraus:
        out += k @ x @ k.conj().T
    return out


def wootters_concurrence(rho):
    """Two-qubit concurrence max(0, l1 - l2 - l3 - l4).

    The l's are the square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy); computed here as the singular values of
    the symmetric matrix x_i^T (sy x sy) x_j over subnormalized
    eigenvectors x_i of rho, which keeps small l's at full accuracy.
    """
    rho = np.asarray(rho, dtype=complex)
    w, vecs = np.linalg.eigh(rho)
    sub = vecs * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(sub.T @ YY @ sub, compute_uv=False)
    return float(max(0.0, 2.0 * lam[0] - lam.sum()))


def binary_entropy(p, base=2.0):
    total = 0.0
    for v in (p, 1.0 - p):
        if v > 0.0:
            total -= v * np.log(v)
    return float(total / np.log(base))


def eof_from_concurrence(c, base=2.0):
    """Entanglement of formation h((1 + sqrt(1 - C^2)) / 2)."""
    c = min(max(float(c), 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - c * c)), base)


def pure_leaf(kraus, psi):
    """2 sqrt(det Phi(|psi><psi|)) for an unnormalized vector."""
    out = apply_kraus(kraus, np.outer(psi, np.conj(psi)))
    return 2.0 * np.sqrt(max(0.0, float(np.linalg.det(out).real)))


def random_roof_upper_bound(kraus, x, n, tries, rng):
    """Crude convex-roof upper bound by random ensembles.

    Draws random n-member decompositions of x through Haar-ish isometries
    and keeps the best summed leaf.  Far too weak to find the minimum,
    but any proper minimizer must land at or below the value returned.
    """
    x = np.asarray(x, dtype=complex)
    w, vecs = np.linalg.eigh(x)
    keep = w > 1e-12 * max(float(w.max()), 1.0)
    sub = vecs[:, keep] * np.sqrt(w[keep])
    r = sub.shape[1]
    best = np.inf
    for _ in range(tries):
        g = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
        q, _ = np.linalg.qr(g)
        members = q @ sub.T
        total = sum(pure_leaf(kraus, m) for m in members)
        best = min(best, total)
    return float(best)


def random_density(dim, rank, rng):
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
