"""Independent oracles used to derive and verify expected values.

Everything here is deliberately written against a different code path
than the package: brute-force enumeration, direct index summation, and
scipy's LP solver.  Values frozen into the tests were computed with
these oracles first.
"""

from __future__ import annotations

import itertools

import numpy as np
from scipy.optimize import linprog

# ---------------------------------------------------------------------------
# elementary oracles


def tv_distance(p, q) -> float:
    return 0.5 * float(np.sum(np.abs(np.asarray(p) - np.asarray(q))))


def partial_trace(mat: np.ndarray, da: int, db: int, keep: str) -> np.ndarray:
    """Direct index-summation partial trace of a (da*db) x (da*db) matrix."""
    out_dim = da if keep == "A" else db
    out = np.zeros((out_dim, out_dim), dtype=complex)
    for i in range(da):
        for j in range(db):
            for k in range(da):
                for l in range(db):
                    if keep == "A" and j == l:
                        out[i, k] += mat[i * db + j, k * db + l]
                    if keep == "B" and i == k:
                        out[j, l] += mat[i * db + j, k * db + l]
    return out


def affine_rank(points: np.ndarray) -> int:
    points = np.asarray(points, dtype=float)
    if points.shape[0] < 2:
        return 0
    return int(np.linalg.matrix_rank(points[1:] - points[0], tol=1e-9))


def helstrom_value(m0: np.ndarray, m1: np.ndarray) -> float:
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(m0 - m1))))


def shannon_bits(p) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 1e-12]
    return float(-np.sum(p * np.log2(p)))


# ---------------------------------------------------------------------------
# polytope geometry oracles


def dual_polytope_extreme_points(vertices: np.ndarray) -> list[np.ndarray]:
    """Extreme points of ``{a : 0 <= a.v <= 1 for all v}`` by brute-force
    intersection of constraint hyperplanes (dimension-many at a time)."""
    vertices = np.asarray(vertices, dtype=float)
    dim = vertices.shape[1]
    planes = [(v, 0.0) for v in vertices] + [(v, 1.0) for v in vertices]
    found: list[np.ndarray] = []
    for combo in itertools.combinations(range(len(planes)), dim):
        normals = np.array([planes[i][0] for i in combo])
        rhs = np.array([planes[i][1] for i in combo])
        if abs(np.linalg.det(normals)) < 1e-9:
            continue
        a = np.linalg.solve(normals, rhs)
        vals = vertices @ a
        if np.all(vals >= -1e-9) and np.all(vals <= 1.0 + 1e-9):
            if not any(np.allclose(a, b, atol=1e-8) for b in found):
                found.append(a)
    return found


def scipy_effect_maximum(pure_states: np.ndarray, delta: np.ndarray) -> float:
    """``max a.delta`` over ``{a : 0 <= a.v <= 1}`` via scipy's LP."""
    m = pure_states.shape[0]
    res = linprog(
        -delta,
        A_ub=np.vstack([pure_states, -pure_states]),
        b_ub=np.concatenate([np.ones(m), np.zeros(m)]),
        bounds=[(None, None)] * delta.shape[0],
        method="highs",
    )
    assert res.status == 0
    return -float(res.fun)


def scipy_distance_to_family(
    rho_coords: np.ndarray,
    composite_pure: np.ndarray,
    family_coords: np.ndarray,
    b_vertices: np.ndarray,
) -> float:
    """The joint inner LP solved with scipy instead of the package solver."""
    m = composite_pure.shape[0]
    cols = [np.kron(psi, w) for psi in family_coords for w in b_vertices]
    W = np.array(cols).T
    nk = W.shape[1]
    A_eq = np.hstack([composite_pure.T, -composite_pure.T, W])
    A_eq = np.vstack([A_eq, np.concatenate([np.zeros(2 * m), np.ones(nk)])])
    b_eq = np.concatenate([rho_coords, [1.0]])
    cost = np.concatenate([np.ones(m), np.zeros(m + nk)])
    res = linprog(cost, A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * (2 * m + nk), method="highs")
    assert res.status == 0
    return float(res.fun)


def simplex_lattice(cells: int, denominator: int) -> np.ndarray:
    """All probability vectors over ``cells`` with entries k/denominator."""
    rows = []
    for cuts in itertools.combinations(range(denominator + cells - 1), cells - 1):
        prev = -1
        counts = []
        for c in cuts:
            counts.append(c - prev - 1)
            prev = c
        counts.append(denominator + cells - 2 - prev)
        rows.append(counts)
    return np.asarray(rows, dtype=float) / denominator


def polytope_discord_grid(
    rho_coords: np.ndarray,
    composite_pure: np.ndarray,
    families: list[np.ndarray],
    b_vertices: np.ndarray,
    denominator: int,
) -> float:
    """Brute-force discord: discretize the decomposable set (coefficient
    lattice with the given denominator) and take the best exact
    operational distance, evaluated with scipy's LP."""
    best = np.inf
    for fam in families:
        cols = np.array([np.kron(psi, w) for psi in fam for w in b_vertices])
        grid = simplex_lattice(cols.shape[0], denominator)
        sigmas = grid @ cols
        for sigma in sigmas:
            val = scipy_effect_maximum(composite_pure, rho_coords - sigma)
            best = min(best, val)
    return best


def classical_pair_discord_grid(rho_coords: np.ndarray, n: int, denominator: int) -> float:
    """Specialized fast grid for classical(n) x classical(n): the
    decomposable set is the whole simplex and the distance is total
    variation, so the oracle is a vectorized sweep of the lattice."""
    grid = simplex_lattice(n * n, denominator)
    dists = 0.5 * np.sum(np.abs(grid - rho_coords[None, :]), axis=1)
    return float(np.min(dists))


# ---------------------------------------------------------------------------
# quantum oracles


_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def _qubit_from_bloch(b: np.ndarray) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    norm = np.linalg.norm(b)
    if norm > 1.0:
        b = b / norm
    return (np.eye(2, dtype=complex) + b[0] * _SX + b[1] * _SY + b[2] * _SZ) / 2.0


def _batch_cq_sigma(params: np.ndarray) -> np.ndarray:
    """params rows: (theta, phi, q, bloch0[3], bloch1[3]) -> CQ matrices."""
    th, ph = params[:, 0], params[:, 1]
    q = np.clip(params[:, 2], 0.0, 1.0)
    nvec = np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=1)
    p0 = (
        np.eye(2, dtype=complex)[None]
        + nvec[:, 0, None, None] * _SX
        + nvec[:, 1, None, None] * _SY
        + nvec[:, 2, None, None] * _SZ
    ) / 2.0
    p1 = np.eye(2, dtype=complex)[None] - p0

    def qubits(blochs):
        b = blochs.copy()
        norms = np.linalg.norm(b, axis=1)
        b = b / np.where(norms > 1.0, norms, 1.0)[:, None]
        return (
            np.eye(2, dtype=complex)[None]
            + b[:, 0, None, None] * _SX
            + b[:, 1, None, None] * _SY
            + b[:, 2, None, None] * _SZ
        ) / 2.0

    s0 = qubits(params[:, 3:6])
    s1 = qubits(params[:, 6:9])
    kron0 = np.einsum("nij,nkl->nikjl", p0, s0).reshape(-1, 4, 4)
    kron1 = np.einsum("nij,nkl->nikjl", p1, s1).reshape(-1, 4, 4)
    return q[:, None, None] * kron0 + (1.0 - q)[:, None, None] * kron1


def zoom_discord_oracle(rho_mat: np.ndarray, levels: int = 6, keep: int = 8) -> float:
    """Brute-force two-qubit discord: a dense grid over antipodal
    measurement families and discretized conditionals, refined by
    deterministic zooming around the best boxes, every candidate scored
    by the exact trace-norm distance."""
    lo = np.array([0.0, -np.pi, 0.0, -1, -1, -1, -1, -1, -1], dtype=float)
    hi = np.array([np.pi, np.pi, 1.0, 1, 1, 1, 1, 1, 1], dtype=float)

    def score(points: np.ndarray) -> np.ndarray:
        sig = _batch_cq_sigma(points)
        w = np.linalg.eigvalsh(rho_mat[None] - sig)
        return np.abs(w).sum(axis=1) / 2.0

    axes = [
        np.linspace(lo[0], hi[0], 5),
        np.linspace(lo[1], hi[1], 7),
        np.linspace(0.0, 1.0, 3),
    ] + [np.linspace(-1.0, 1.0, 3)] * 6
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    vals = score(pts)
    order = np.argsort(vals, kind="stable")
    best = float(vals[order[0]])
    centers = pts[order[:keep]]
    widths = (hi - lo) / np.array([4, 6, 2, 2, 2, 2, 2, 2, 2], dtype=float)
    for _ in range(levels):
        widths = widths / 2.0
        chunks = []
        for c in centers:
            ax = [
                np.clip(np.linspace(c[k] - widths[k], c[k] + widths[k], 3), lo[k], hi[k])
                for k in range(9)
            ]
            mesh = np.meshgrid(*ax, indexing="ij")
            chunks.append(np.stack([m.ravel() for m in mesh], axis=1))
        pts = np.concatenate(chunks)
        vals = score(pts)
        order = np.argsort(vals, kind="stable")
        best = min(best, float(vals[order[0]]))
        centers = pts[order[:keep]]
    return best


def entropy_bits_oracle(mat: np.ndarray) -> float:
    w = np.linalg.eigvalsh(mat)
    w = w[w > 1e-12]
    return float(-np.sum(w * np.log2(w))) if w.size else 0.0


def entropic_discord_grid_oracle(rho_mat: np.ndarray, n_theta: int = 80, n_phi: int = 160) -> float:
    """Entropic discord of a two-qubit state over a dense measurement
    grid (no local refinement; pure dense enumeration)."""
    s_a = entropy_bits_oracle(partial_trace(rho_mat, 2, 2, "A"))
    s_b = entropy_bits_oracle(partial_trace(rho_mat, 2, 2, "B"))
    s_ab = entropy_bits_oracle(rho_mat)
    info = s_a + s_b - s_ab
    best_j = -np.inf
    rr = rho_mat.reshape(2, 2, 2, 2)
    for theta in np.linspace(0.0, np.pi, n_theta):
        for phi in np.linspace(-np.pi, np.pi, n_phi, endpoint=False):
            k0 = np.array([np.cos(theta / 2), np.sin(theta / 2) * np.exp(1j * phi)])
            k1 = np.array([np.sin(theta / 2), -np.cos(theta / 2) * np.exp(1j * phi)])
            j = s_b
            for ket in (k0, k1):
                tau = np.einsum("a,abcd,c->bd", ket.conj(), rr, ket)
                p = float(np.trace(tau).real)
                if p > 1e-12:
                    j -= p * entropy_bits_oracle(tau / p)
            best_j = max(best_j, j)
    return info - best_j
