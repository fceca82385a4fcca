"""Null-discord states, the operational discord, and the entropic discord.

A bipartite state has null discord when it decomposes as
``sum_k q_k psi_k (x) sigma_k`` with ``{psi_k}`` jointly perfectly
distinguishable pure states on the first factor.  The discord of a
state is its minimum operational distance to that set.

Polytope backend: the family list is finite and each inner problem is
an exact linear program, so the reported discord is exact.  Quantum
backend: families form a continuum; a deterministic measurement grid
plus local refinement produces an upper bound (flagged through the
``converged`` metadata), with every reported value being the exact
operational distance of the final candidate.  The quantum pipeline
first runs the pinching fixed-point check, which recognizes
classical-quantum states exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import herm
from .config import DEFAULT_CONFIG, SearchConfig
from .discrimination import (
    are_perfectly_distinguishable,
    haar_basis_sample,
    maximal_distinguishable_pure_families,
    qubit_direction_grid,
)
from .errors import InvalidStateError, SystemMismatchError, UnsupportedBackendError
from .lp import OPTIMAL, solve_lp
from .theory import (
    POLYTOPE,
    QUANTUM,
    EffectVec,
    StateVec,
    TheoryModel,
    compose_theories,
    is_pure,
    state_in_cone,
)

ZERO_WEIGHT_TOL = 1e-12
FIXED_POINT_TOL = 1e-9
DEGENERACY_GAP = 1e-8
ROTATION_GRID = 24
POLISH_STARTS = 16


@dataclass(frozen=True)
class NullDiscordDecomposition:
    """A family ``{psi_k}``, weights ``{q_k}`` and conditionals ``{sigma_k}``."""

    family: tuple[StateVec, ...]
    weights: np.ndarray
    conditionals: tuple[StateVec, ...]

    def reconstruction_coords(self) -> np.ndarray:
        out = None
        for q, psi, sigma in zip(self.weights, self.family, self.conditionals):
            term = q * np.kron(psi.coords, sigma.coords)
            out = term if out is None else out + term
        return out

    def validate(self) -> None:
        if not (len(self.family) == len(self.weights) == len(self.conditionals)):
            raise InvalidStateError("family, weights and conditionals must have equal length")
        if len(self.family) == 0:
            raise InvalidStateError("decomposition needs at least one term")
        w = np.asarray(self.weights, dtype=float)
        if np.min(w) < -ZERO_WEIGHT_TOL:
            raise InvalidStateError("weights must be nonnegative")
        if abs(float(np.sum(w)) - 1.0) > 1e-12:
            raise InvalidStateError("weights must sum to 1")
        sys_a = self.family[0].system
        sys_b = self.conditionals[0].system
        for psi in self.family:
            if not psi.system.is_same(sys_a):
                raise InvalidStateError("family members live on different systems")
            if not is_pure(psi, 1e-8):
                raise InvalidStateError("family member is not a pure state")
        for sigma in self.conditionals:
            if not sigma.system.is_same(sys_b):
                raise InvalidStateError("conditionals live on different systems")
            if not sigma.normalized or not state_in_cone(sigma):
                raise InvalidStateError("conditional is not a valid normalized state")
        cert = are_perfectly_distinguishable(list(self.family))
        if not cert.distinguishable:
            raise InvalidStateError("family is not jointly perfectly distinguishable")


@dataclass(frozen=True)
class DiscordResult:
    value: float
    optimizer: NullDiscordDecomposition
    certificate_effect: EffectVec
    outer_evaluations: int
    converged: bool


@dataclass(frozen=True)
class EntropyReport:
    S_A: float
    S_B: float
    S_AB: float
    mutual_information: float
    J_value: float
    discord_value: float
    optimal_measurement: np.ndarray


def make_null_discord_state(decomp: NullDiscordDecomposition) -> StateVec:
    """The reconstruction ``sum_k q_k psi_k (x) sigma_k`` as a composite state."""
    decomp.validate()
    ab = compose_theories(decomp.family[0].system, decomp.conditionals[0].system)
    return ab.state(decomp.reconstruction_coords())


# ---------------------------------------------------------------------------
# shared quantum helpers


def _require_bipartite(rho: StateVec) -> tuple[TheoryModel, TheoryModel]:
    if not rho.system.is_composite:
        raise SystemMismatchError("a bipartite state is required")
    return rho.system.factors


def _require_quantum_bipartite(rho: StateVec) -> tuple[int, int]:
    fa, fb = _require_bipartite(rho)
    if rho.system.backend != QUANTUM:
        raise UnsupportedBackendError("operation requires the quantum backend")
    return fa.quantum_levels, fb.quantum_levels


def _helstrom(delta: np.ndarray) -> float:
    return float(np.sum(np.abs(np.linalg.eigvalsh(delta))) / 2.0)


def _blocks(rho_mat: np.ndarray, kets: np.ndarray, da: int, db: int) -> np.ndarray:
    """Diagonal blocks ``tau_k = (<k| (x) I) rho (|k> (x) I)``, shape (K, db, db)."""
    rr = rho_mat.reshape(da, db, da, db)
    return np.einsum("ka,abcd,kc->kbd", kets.conj(), rr, kets)


def _cq_matrix(kets: np.ndarray, taus: np.ndarray) -> np.ndarray:
    out = None
    for ket, tau in zip(kets, taus):
        term = np.kron(np.outer(ket, ket.conj()), tau)
        out = term if out is None else out + term
    return out


def _pinch_distance(rho_mat: np.ndarray, kets: np.ndarray, da: int, db: int) -> float:
    taus = _blocks(rho_mat, kets, da, db)
    return _helstrom(rho_mat - _cq_matrix(kets, taus))


def _marginal_a_matrix(rho_mat: np.ndarray, da: int, db: int) -> np.ndarray:
    return np.einsum("abcb->ac", rho_mat.reshape(da, db, da, db))


def _marginal_b_matrix(rho_mat: np.ndarray, da: int, db: int) -> np.ndarray:
    return np.einsum("abad->bd", rho_mat.reshape(da, db, da, db))


def _kets_from_family(family: tuple[StateVec, ...]) -> np.ndarray:
    kets = []
    for psi in family:
        mat = psi.matrix()
        w, u = np.linalg.eigh(mat)
        if w[-1] < 1.0 - 1e-8:
            raise InvalidStateError("family member is not a rank-one projector")
        kets.append(u[:, -1])
    kets = np.array(kets)
    gram = kets @ kets.conj().T
    if np.max(np.abs(gram - np.eye(len(kets)))) > 1e-7:
        raise InvalidStateError("family members are not mutually orthogonal")
    return kets


def _basis_from_angles(theta: float, phi: float) -> np.ndarray:
    half = theta / 2.0
    k0 = np.array([np.cos(half), np.sin(half) * np.exp(1j * phi)])
    k1 = np.array([np.sin(half), -np.cos(half) * np.exp(1j * phi)])
    return np.stack([k0, k1])


def _angles_from_direction(direction: np.ndarray) -> tuple[float, float]:
    theta = float(np.arccos(np.clip(direction[2], -1.0, 1.0)))
    phi = float(np.arctan2(direction[1], direction[0]))
    return theta, phi


def _quantum_decomposition(
    ab: TheoryModel, kets: np.ndarray, taus: np.ndarray
) -> NullDiscordDecomposition:
    fa, fb = ab.factors
    family, weights, conditionals = [], [], []
    for ket, tau in zip(kets, taus):
        q = float(np.trace(tau).real)
        if q <= ZERO_WEIGHT_TOL:
            continue
        family.append(fa.state_from_matrix(np.outer(ket, ket.conj())))
        weights.append(q)
        conditionals.append(fb.state_from_matrix(tau / q))
    weights = np.array(weights)
    weights = weights / np.sum(weights)
    return NullDiscordDecomposition(tuple(family), weights, tuple(conditionals))


def _certificate_effect(ab: TheoryModel, delta_mat: np.ndarray) -> EffectVec:
    w, u = np.linalg.eigh(delta_mat)
    pos = u[:, w > 1e-11]
    return ab.effect_from_matrix(pos @ pos.conj().T)


# ---------------------------------------------------------------------------
# fixed-point (pinching) analysis


def check_vonneumann_fixed_point(rho: StateVec, basis: np.ndarray, tol: float = FIXED_POINT_TOL) -> bool:
    """Whether pinching in ``basis`` (rows are kets) leaves ``rho`` unchanged."""
    da, db = _require_quantum_bipartite(rho)
    basis = np.asarray(basis, dtype=complex)
    if basis.shape != (da, da):
        raise InvalidStateError(f"basis must be a ({da}, {da}) array of kets")
    gram = basis @ basis.conj().T
    if np.max(np.abs(gram - np.eye(da))) > 1e-8:
        raise InvalidStateError("basis is not orthonormal")
    rho_mat = rho.matrix()
    taus = _blocks(rho_mat, basis, da, db)
    diff = rho_mat - _cq_matrix(basis, taus)
    coords_diff = herm.mat_to_coords(diff, rho.system.herm_basis)
    return bool(np.max(np.abs(coords_diff)) <= tol)


def _degenerate_rotation_bases(w: np.ndarray, u: np.ndarray) -> list[np.ndarray]:
    """Rotation grid inside degenerate eigenspaces of the marginal.

    Pairs of nearly equal eigenvalues get a full two-parameter rotation
    grid (ROTATION_GRID angles per parameter) applied to their
    eigenvectors; a fully degenerate qubit marginal reduces to a grid
    over all bases.
    """
    out = []
    d = len(w)
    clusters = []
    start = 0
    for i in range(1, d + 1):
        if i == d or w[i] - w[i - 1] > DEGENERACY_GAP:
            if i - start >= 2:
                clusters.append((start, i))
            start = i
    if not clusters:
        return out
    thetas = np.linspace(0.0, np.pi, ROTATION_GRID)
    phis = np.linspace(-np.pi, np.pi, ROTATION_GRID, endpoint=False)
    for lo, hi in clusters:
        for i in range(lo, hi - 1):
            for theta in thetas:
                for phi in phis:
                    rot = _basis_from_angles(theta, phi)
                    cols = u.copy()
                    sub = u[:, [i, i + 1]]
                    cols[:, i] = sub @ rot[0]
                    cols[:, i + 1] = sub @ rot[1]
                    out.append(cols.T.copy())
    return out


def _grid_bases(da: int, config: SearchConfig) -> list[np.ndarray]:
    n = config.resolved_grid_points(da)
    if da == 2:
        return [
            _basis_from_angles(*_angles_from_direction(v))
            for v in qubit_direction_grid(n)
        ]
    return haar_basis_sample(da, n, config.seed)


def find_fixed_point_basis(rho: StateVec, config: SearchConfig | None = None) -> np.ndarray | None:
    """Search for a measurement basis whose pinching fixes ``rho``.

    Candidates, in order: the eigenbasis of the first marginal,
    eigenbases of conditional compressions ``(I (x) <phi|) rho (I (x) |phi>)``
    for a few seeded probe vectors (these recover the basis exactly for
    any classical-quantum state, degenerate weights included), rotation
    grids inside degenerate marginal eigenspaces, and the measurement
    grid.  Returns the first basis passing the fixed-point check, or
    None when the budget is exhausted.
    """
    cfg = config or DEFAULT_CONFIG
    da, db = _require_quantum_bipartite(rho)
    rho_mat = rho.matrix()
    rr = rho_mat.reshape(da, db, da, db)

    w, u = np.linalg.eigh(_marginal_a_matrix(rho_mat, da, db))
    candidates: list[np.ndarray] = [u.T.copy()]

    rng = np.random.default_rng(cfg.seed)
    for _ in range(3):
        phi = rng.normal(size=db) + 1j * rng.normal(size=db)
        phi /= np.linalg.norm(phi)
        compression = np.einsum("abcd,b,d->ac", rr, phi.conj(), phi)
        _, uc = np.linalg.eigh(compression)
        candidates.append(uc.T.copy())

    candidates.extend(_degenerate_rotation_bases(w, u))
    candidates.extend(_grid_bases(da, cfg))

    for basis in candidates:
        if check_vonneumann_fixed_point(rho, basis):
            return basis
    return None


# ---------------------------------------------------------------------------
# distance to a fixed family


def _polytope_distance_to_family(
    rho: StateVec, family: tuple[StateVec, ...]
) -> tuple[float, NullDiscordDecomposition, EffectVec]:
    """Exact inner minimum over weights and conditionals, as one LP.

    The operational distance ``max_a a.(rho - sigma)`` over the dual
    effect polytope equals ``min { sum mu : V^T (mu - nu) = rho - sigma }``
    by LP duality, so minimizing jointly over the decomposable states
    ``sigma = sum_kj c_kj psi_k (x) w_j`` stays a single linear program;
    the equality multipliers recover the optimal discrimination effect.
    """
    ab = rho.system
    th_a, th_b = ab.factors
    pure = ab.pure_state_coords
    m, dim = pure.shape
    b_vertices = th_b.pure_state_coords
    mb = b_vertices.shape[0]
    k = len(family)

    cols = [np.kron(psi.coords, wv) for psi in family for wv in b_vertices]
    W = np.array(cols).T  # dim x (k*mb)
    A_eq = np.hstack([pure.T, -pure.T, W])
    A_eq = np.vstack([A_eq, np.concatenate([np.zeros(2 * m), np.ones(k * mb)])])
    b_eq = np.concatenate([rho.coords, [1.0]])
    cost = np.concatenate([np.ones(m), np.zeros(m + k * mb)])
    res = solve_lp(cost, A_eq, b_eq)
    if res.status != OPTIMAL:
        raise InvalidStateError("family distance LP failed; invalid input state")

    coeff = res.x[2 * m :].reshape(k, mb)
    family_out, weights, conditionals = [], [], []
    for idx in range(k):
        q = float(np.sum(coeff[idx]))
        if q <= ZERO_WEIGHT_TOL:
            continue
        family_out.append(family[idx])
        weights.append(q)
        conditionals.append(th_b.state(coeff[idx] @ b_vertices / q))
    weights = np.array(weights)
    weights = weights / np.sum(weights)
    decomp = NullDiscordDecomposition(tuple(family_out), weights, tuple(conditionals))
    effect = ab.effect(res.dual_eq[:dim])
    return max(float(res.objective), 0.0), decomp, effect


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - np.max(z)
    e = np.exp(z)
    return e / np.sum(e)


def _conditional_params_init(taus: np.ndarray, db: int) -> np.ndarray:
    qs = np.maximum(np.real(np.einsum("kii->k", taus)), 1e-12)
    parts = [np.log(qs)]
    for tau, q in zip(taus, qs):
        sigma = tau / q if q > ZERO_WEIGHT_TOL else np.eye(db, dtype=complex) / db
        if db == 2:
            bloch = np.array(
                [
                    np.real(sigma[0, 1] + sigma[1, 0]),
                    np.real(1j * (sigma[0, 1] - sigma[1, 0])),
                    np.real(sigma[0, 0] - sigma[1, 1]),
                ]
            )
            parts.append(bloch)
        else:
            w, u = np.linalg.eigh(sigma)
            g = u @ np.diag(np.sqrt(np.maximum(w, 0.0)))
            parts.append(np.concatenate([g.real.ravel(), g.imag.ravel()]))
    return np.concatenate(parts)


def _taus_from_params(params: np.ndarray, k: int, db: int) -> np.ndarray:
    qs = _softmax(params[:k])
    taus = []
    offset = k
    per = 3 if db == 2 else 2 * db * db
    for idx in range(k):
        chunk = params[offset : offset + per]
        offset += per
        if db == 2:
            sigma = herm.qubit_density(chunk)
        else:
            g = chunk[: db * db].reshape(db, db) + 1j * chunk[db * db :].reshape(db, db)
            gram = g @ g.conj().T
            tr = float(np.trace(gram).real)
            sigma = gram / tr if tr > 1e-14 else np.eye(db, dtype=complex) / db
        taus.append(qs[idx] * sigma)
    return np.array(taus)


def _polish_conditionals(
    rho_mat: np.ndarray,
    kets: np.ndarray,
    taus0: np.ndarray,
    cfg: SearchConfig,
    counter: list[int],
    n_starts: int = POLISH_STARTS,
) -> tuple[float, np.ndarray]:
    """Multi-start Nelder-Mead over weights and conditionals at a fixed
    family, scoring with the exact operational distance."""
    k = len(kets)
    db = taus0[0].shape[0]
    x0 = _conditional_params_init(taus0, db)

    def objective(params: np.ndarray) -> float:
        counter[0] += 1
        taus = _taus_from_params(params, k, db)
        return _helstrom(rho_mat - _cq_matrix(kets, taus))

    best_val = objective(x0)
    best_taus = _taus_from_params(x0, k, db)
    rng = np.random.default_rng(cfg.seed ^ 0xC0FFEE)
    starts = [x0] + [x0 + rng.normal(scale=0.3, size=x0.shape) for _ in range(n_starts - 1)]
    for start in starts:
        res = minimize(
            objective,
            start,
            method="Nelder-Mead",
            options={"maxiter": cfg.refine_iters, "xatol": 1e-9, "fatol": 1e-11},
        )
        if res.fun < best_val:
            best_val = float(res.fun)
            best_taus = _taus_from_params(res.x, k, db)
    return best_val, best_taus


def distance_to_family(
    rho: StateVec,
    family: list[StateVec],
    config: SearchConfig | None = None,
) -> tuple[float, NullDiscordDecomposition]:
    """Minimum operational distance from ``rho`` to states decomposable
    over the given jointly-distinguishable pure family.

    Exact (single LP) on the polytope backend; an upper bound from the
    pinching optimum plus multi-start local refinement on the quantum
    backend.
    """
    cfg = config or DEFAULT_CONFIG
    fa, fb = _require_bipartite(rho)
    family = tuple(family)
    if len(family) == 0:
        raise InvalidStateError("family must be non-empty")
    for psi in family:
        if not psi.system.is_same(fa):
            raise InvalidStateError("family members must live on the first factor")
        if not is_pure(psi, 1e-8):
            raise InvalidStateError("family members must be pure")
    if not rho.normalized:
        raise InvalidStateError("distance is defined for normalized states")

    if rho.system.backend == POLYTOPE:
        cert = are_perfectly_distinguishable(list(family))
        if not cert.distinguishable:
            raise InvalidStateError("family is not jointly perfectly distinguishable")
        value, decomp, _ = _polytope_distance_to_family(rho, family)
        return value, decomp

    da, db = _require_quantum_bipartite(rho)
    kets = _kets_from_family(family)
    rho_mat = rho.matrix()
    taus = _blocks(rho_mat, kets, da, db)
    counter = [0]
    value, taus = _polish_conditionals(rho_mat, kets, taus, cfg, counter)
    return value, _quantum_decomposition(rho.system, kets, taus)


# ---------------------------------------------------------------------------
# the discord functional


def _quantum_basis_search(
    rho_mat: np.ndarray,
    da: int,
    db: int,
    cfg: SearchConfig,
    objective_of_basis,
    counter: list[int],
) -> tuple[np.ndarray, float, bool]:
    """Grid plus Nelder-Mead refinement over measurement bases.

    ``objective_of_basis`` maps a (da, da) array of kets to a float; the
    grid is scored first, then the best ``cfg.restarts`` points seed
    local refinement.  Ties resolve to the lowest grid index.
    """
    if da == 2:
        dirs = qubit_direction_grid(cfg.resolved_grid_points(2))
        grid = [_basis_from_angles(*_angles_from_direction(v)) for v in dirs]
    else:
        grid = haar_basis_sample(da, cfg.resolved_grid_points(da), cfg.seed)

    scores = []
    for basis in grid:
        counter[0] += 1
        scores.append(objective_of_basis(basis))
    order = np.argsort(scores, kind="stable")
    best_idx = int(order[0])
    best_basis, best_val = grid[best_idx], float(scores[best_idx])

    success = False
    hb = herm.hermitian_basis(da) if da > 2 else None
    for idx in order[: cfg.restarts]:
        start_basis = grid[int(idx)]
        if da == 2:
            ket0 = start_basis[0]
            theta = 2.0 * np.arccos(np.clip(np.abs(ket0[0]), 0.0, 1.0))
            phi = float(np.angle(ket0[1])) if abs(ket0[1]) > 1e-12 else 0.0
            x0 = np.array([theta, phi])

            def objective(x):
                counter[0] += 1
                return objective_of_basis(_basis_from_angles(x[0], x[1]))

            res = minimize(
                objective,
                x0,
                method="Nelder-Mead",
                options={"maxiter": cfg.refine_iters, "xatol": 1e-10, "fatol": 1e-12},
            )
            cand_basis = _basis_from_angles(res.x[0], res.x[1])
        else:
            from scipy.linalg import expm

            u0 = start_basis.T
            x0 = np.zeros(da * da)

            def objective(x):
                counter[0] += 1
                gen = np.einsum("k,kij->ij", x, hb)
                return objective_of_basis((expm(1j * gen) @ u0).T)

            res = minimize(
                objective,
                x0,
                method="Nelder-Mead",
                options={"maxiter": cfg.refine_iters, "xatol": 1e-10, "fatol": 1e-12},
            )
            gen = np.einsum("k,kij->ij", res.x, hb)
            cand_basis = (expm(1j * gen) @ u0).T
        counter[0] += 1
        val = objective_of_basis(cand_basis)
        if val < best_val:
            best_val, best_basis = float(val), cand_basis
        success = success or bool(res.success)
    return best_basis, best_val, success


def _quantum_discord(rho: StateVec, cfg: SearchConfig) -> DiscordResult:
    da, db = _require_quantum_bipartite(rho)
    ab = rho.system
    rho_mat = rho.matrix()
    counter = [0]

    fixed = find_fixed_point_basis(rho, cfg)
    if fixed is not None:
        taus = _blocks(rho_mat, fixed, da, db)
        sigma = _cq_matrix(fixed, taus)
        value = _helstrom(rho_mat - sigma)
        counter[0] += 1
        return DiscordResult(
            value=value,
            optimizer=_quantum_decomposition(ab, fixed, taus),
            certificate_effect=_certificate_effect(ab, rho_mat - sigma),
            outer_evaluations=counter[0],
            converged=True,
        )

    def pinch_objective(basis: np.ndarray) -> float:
        return _pinch_distance(rho_mat, basis, da, db)

    basis, value, success = _quantum_basis_search(rho_mat, da, db, cfg, pinch_objective, counter)
    taus = _blocks(rho_mat, basis, da, db)

    # joint polish of conditionals (and implicitly the weights) at the
    # winning basis; the family stays fixed, the value stays exact
    polished_val, polished_taus = _polish_conditionals(rho_mat, basis, taus, cfg, counter)
    if polished_val < value:
        value, taus = polished_val, polished_taus

    sigma = _cq_matrix(basis, taus)
    return DiscordResult(
        value=max(float(value), 0.0),
        optimizer=_quantum_decomposition(ab, basis, taus),
        certificate_effect=_certificate_effect(ab, rho_mat - sigma),
        outer_evaluations=counter[0],
        converged=success,
    )


def discord(rho: StateVec, config: SearchConfig | None = None) -> DiscordResult:
    """Minimum operational distance from ``rho`` to the null-discord set.

    Exact on the polytope backend (finite family enumeration, exact
    inner LPs); a flagged upper bound on the quantum backend.
    """
    cfg = config or DEFAULT_CONFIG
    fa, fb = _require_bipartite(rho)
    if not rho.normalized:
        raise InvalidStateError("discord is defined for normalized states")

    if rho.system.backend == POLYTOPE:
        families = maximal_distinguishable_pure_families(fa)
        best = None
        for fam in families:
            value, decomp, effect = _polytope_distance_to_family(rho, fam)
            if best is None or value < best[0] - 1e-12:
                best = (value, decomp, effect)
        value, decomp, effect = best
        return DiscordResult(
            value=value,
            optimizer=decomp,
            certificate_effect=effect,
            outer_evaluations=len(families),
            converged=True,
        )
    return _quantum_discord(rho, cfg)


def is_null_discord(
    rho: StateVec,
    tol: float | None = None,
    config: SearchConfig | None = None,
) -> tuple[bool, NullDiscordDecomposition | None]:
    """Membership in the null-discord set.

    Polytope: exact (discord value against ``tol``).  Quantum: the
    discord upper bound must vanish *and* the pinching fixed-point
    search must succeed; the two must agree for a positive verdict.
    """
    cfg = config or DEFAULT_CONFIG
    threshold = cfg.tol_zero if tol is None else tol
    _require_bipartite(rho)
    result = discord(rho, cfg)
    if rho.system.backend == QUANTUM:
        fixed = find_fixed_point_basis(rho, cfg)
        verdict = result.value <= threshold and fixed is not None
    else:
        verdict = result.value <= threshold
    return (verdict, result.optimizer if verdict else None)


# ---------------------------------------------------------------------------
# entropic discord (quantum backend)


def _entropies(rho: StateVec) -> tuple[float, float, float, np.ndarray, int, int]:
    da, db = _require_quantum_bipartite(rho)
    rho_mat = rho.matrix()
    s_a = herm.entropy_bits(_marginal_a_matrix(rho_mat, da, db))
    s_b = herm.entropy_bits(_marginal_b_matrix(rho_mat, da, db))
    s_ab = herm.entropy_bits(rho_mat)
    return s_a, s_b, s_ab, rho_mat, da, db


def mutual_information(rho: StateVec) -> float:
    """``S(A) + S(B) - S(AB)`` in bits."""
    s_a, s_b, s_ab, _, _, _ = _entropies(rho)
    return s_a + s_b - s_ab


def conditional_J(rho: StateVec, basis: np.ndarray) -> float:
    """``S(B) - sum_i p_i S(B | outcome i)`` for a von Neumann measurement."""
    da, db = _require_quantum_bipartite(rho)
    basis = np.asarray(basis, dtype=complex)
    if basis.shape != (da, da):
        raise InvalidStateError(f"basis must be a ({da}, {da}) array of kets")
    gram = basis @ basis.conj().T
    if np.max(np.abs(gram - np.eye(da))) > 1e-8:
        raise InvalidStateError("basis is not orthonormal")
    rho_mat = rho.matrix()
    out = herm.entropy_bits(_marginal_b_matrix(rho_mat, da, db))
    taus = _blocks(rho_mat, basis, da, db)
    for tau in taus:
        p = float(np.trace(tau).real)
        if p > ZERO_WEIGHT_TOL:
            out -= p * herm.entropy_bits(tau / p)
    return out


def quantum_discord_entropy(rho: StateVec, config: SearchConfig | None = None) -> EntropyReport:
    """Entropic discord, minimized over rank-one von Neumann measurements
    with the same grid-plus-refinement machinery as the operational search."""
    cfg = config or DEFAULT_CONFIG
    s_a, s_b, s_ab, rho_mat, da, db = _entropies(rho)
    info = s_a + s_b - s_ab

    def objective(basis: np.ndarray) -> float:
        out = herm.entropy_bits(_marginal_b_matrix(rho_mat, da, db))
        taus = _blocks(rho_mat, basis, da, db)
        for tau in taus:
            p = float(np.trace(tau).real)
            if p > ZERO_WEIGHT_TOL:
                out -= p * herm.entropy_bits(tau / p)
        return info - out

    counter = [0]
    basis, best, _ = _quantum_basis_search(rho_mat, da, db, cfg, objective, counter)
    j_val = info - best
    return EntropyReport(
        S_A=s_a,
        S_B=s_b,
        S_AB=s_ab,
        mutual_information=info,
        J_value=j_val,
        discord_value=max(best, 0.0),
        optimal_measurement=basis,
    )
