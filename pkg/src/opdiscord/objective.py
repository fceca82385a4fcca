"""Repeatable non-disturbing tests and the information they extract.

A test provides objective information about a state when it is
repeatable (``A_i A_j = delta_ij A_i``) and does not disturb the state
(``sum_i A_i`` acts as identity on it).  Whenever that holds, the
induced observation effects perfectly discriminate the conditional
states and the state is recovered as their mixture; both facts are
theorems, so the report enforces them and treats failure as corruption.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, InvalidStateError, SystemMismatchError
from .theory import (
    QUANTUM,
    EffectVec,
    StateVec,
    TestModel,
    TheoryModel,
    Transformation,
    is_pure,
)

ZERO_OUTCOME_TOL = 1e-12
LEMMA_DISCRIMINATION_TOL = 1e-8
LEMMA_RECONSTRUCTION_TOL = 1e-9


@dataclass(frozen=True)
class ObjectiveInfoReport:
    repeatable: bool
    nondisturbing: bool
    provides: bool
    complete: bool
    outcome_probabilities: np.ndarray
    conditional_states: tuple[StateVec, ...]
    induced_effects: tuple[EffectVec, ...]
    kept_outcomes: tuple[int, ...]


def _require_square(test: TestModel) -> None:
    if not test.input.is_same(test.output):
        raise SystemMismatchError("repeatability needs input system = output system")


def is_repeatable(test: TestModel, tol: float = 1e-9) -> bool:
    """Entrywise check of ``A_i A_j = delta_ij A_i``."""
    _require_square(test)
    mats = [ev.matrix for ev in test.events]
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            target = a if i == j else np.zeros_like(a)
            if np.max(np.abs(a @ b - target)) > tol:
                return False
    return True


def is_nondisturbing(test: TestModel, rho: StateVec, tol: float = 1e-9) -> bool:
    _require_square(test)
    if not rho.system.is_same(test.input):
        raise SystemMismatchError("state lives on a different system than the test")
    return bool(np.max(np.abs(test.total_matrix() @ rho.coords - rho.coords)) <= tol)


def objective_info_report(
    test: TestModel,
    rho: StateVec,
    tol: float = 1e-9,
    pure_tol: float = 1e-8,
) -> ObjectiveInfoReport:
    """Outcome statistics and the objective-information verdicts for ``rho``.

    Outcomes with probability below ``ZERO_OUTCOME_TOL`` have no
    conditional state and are dropped from the discrimination check.
    """
    _require_square(test)
    if not rho.normalized:
        raise InvalidStateError("objective information is defined for normalized states")
    system = test.input
    e = system.det_effect_coords

    probs = []
    conditionals: list[StateVec] = []
    effects: list[EffectVec] = []
    kept: list[int] = []
    for idx, ev in enumerate(test.events):
        out = ev.matrix @ rho.coords
        p = float(e @ out)
        probs.append(p)
        effects.append(system.effect(ev.matrix.T @ e))
        if p > ZERO_OUTCOME_TOL:
            conditionals.append(system.state(out / p))
            kept.append(idx)

    repeatable = is_repeatable(test, tol)
    nondisturbing = is_nondisturbing(test, rho, tol)
    provides = repeatable and nondisturbing

    if provides:
        # a_j . rho_i = delta_ij over occurring outcomes
        for row, i in enumerate(kept):
            for col, j in enumerate(kept):
                val = float(effects[j].coords @ conditionals[row].coords)
                want = 1.0 if i == j else 0.0
                if abs(val - want) > LEMMA_DISCRIMINATION_TOL:
                    raise ConsistencyError(
                        "induced effects fail to discriminate the conditional states; "
                        "input test or state is corrupted"
                    )
        recon = sum(p * s.coords for p, s in zip([probs[i] for i in kept], conditionals))
        if np.max(np.abs(recon - rho.coords)) > LEMMA_RECONSTRUCTION_TOL:
            raise ConsistencyError(
                "conditional mixture fails to reconstruct the state; "
                "input test or state is corrupted"
            )

    complete = provides and all(is_pure(s, pure_tol) for s in conditionals)
    return ObjectiveInfoReport(
        repeatable=repeatable,
        nondisturbing=nondisturbing,
        provides=provides,
        complete=complete,
        outcome_probabilities=np.array(probs),
        conditional_states=tuple(conditionals),
        induced_effects=tuple(effects),
        kept_outcomes=tuple(kept),
    )


# ---------------------------------------------------------------------------
# instrument builders


def classical_partition_instrument(theory: TheoryModel, blocks: list[list[int]]) -> TestModel:
    """Readout instrument of a classical system along an outcome partition."""
    events = []
    for block in blocks:
        m = np.zeros((theory.dim, theory.dim))
        for i in block:
            m[i, i] = 1.0
        events.append(Transformation(theory, theory, m))
    return TestModel(tuple(events))


def projector_instrument(theory: TheoryModel, basis: np.ndarray) -> TestModel:
    """Von Neumann instrument ``rho -> P_k rho P_k`` for basis rows ``P_k = |k><k|``."""
    if theory.backend != QUANTUM:
        raise SystemMismatchError("projector instruments exist on the quantum backend")
    basis = np.asarray(basis, dtype=complex)
    hb = theory.herm_basis
    events = []
    for ket in basis:
        p = np.outer(ket, ket.conj())
        cols = [np.einsum("ij,kji->k", p @ b @ p, hb).real for b in hb]
        events.append(Transformation(theory, theory, np.array(cols).T))
    return TestModel(tuple(events))


def family_readout_instrument(
    family: list[StateVec], effects: list[EffectVec]
) -> TestModel:
    """Measure-and-reprepare instrument ``rho -> (a_k . rho) psi_k``.

    For a perfectly distinguishable family with its discriminating
    effects this is repeatable, and non-disturbing on every mixture of
    the family.
    """
    system = family[0].system
    events = [
        Transformation(system, system, np.outer(psi.coords, a.coords))
        for psi, a in zip(family, effects)
    ]
    return TestModel(tuple(events))
