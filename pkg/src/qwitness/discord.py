"""Conditional-state commutation as an operational discord probe.

A bipartite state has zero discord with respect to measurements on one
side exactly when every pair of conditional states of the other side
commutes. One party applies local operations and communicates, while
the other runs the anticommutator witness on the conditional states it
ends up holding, so noncommutativity (hence discord) is certified from
single-system measurements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionError, NullOutcomeError, PositivityError
from .linalg import as_matrix, commutator, frobenius_norm, partial_trace, tensor
from .states import DensityOperator, as_pure_state
from .tolerances import TOL_COMM, TOL_F, TOL_NULL, TOL_PSD, TOL_TRACE, TOL_WITNESS
from .witness import (
    NestedWitnessResult,
    WitnessReport,
    nested_witness,
    witness_anticommutator,
)

__all__ = [
    "BipartiteState",
    "bell_state",
    "classical_quantum_state",
    "LocalOperation",
    "projector_operation",
    "measurement_from_unitary",
    "z_measurement",
    "x_measurement",
    "conditional_state",
    "ConditionalEnsemble",
    "commutation_scan",
    "protocol_demo",
]


@dataclass(frozen=True)
class BipartiteState:
    """A validated state on a two-factor Hilbert space."""

    state: DensityOperator
    dims: tuple[int, int]

    def __post_init__(self):
        da, db = self.dims
        if da < 1 or db < 1 or da * db != self.state.dim:
            raise DimensionError(
                f"dims {da}x{db} do not factor dimension {self.state.dim}"
            )

    @property
    def dim_a(self) -> int:
        return self.dims[0]

    @property
    def dim_b(self) -> int:
        return self.dims[1]


def bell_state() -> BipartiteState:
    """The two-qubit state (|00> + |11>) / sqrt(2)."""
    v = np.zeros(4, dtype=np.complex128)
    v[0] = v[3] = 1.0 / np.sqrt(2.0)
    return BipartiteState(state=DensityOperator(np.outer(v, v.conj())),
                          dims=(2, 2))


def classical_quantum_state(probs: Sequence[float],
                            bob_states: Sequence[DensityOperator]) -> BipartiteState:
    """sum_i p_i |i><i| x rho_i over an orthonormal pointer basis."""
    if len(probs) != len(bob_states) or len(probs) == 0:
        raise DimensionError("need matching, nonempty probabilities and states")
    p = np.asarray(probs, dtype=np.float64)
    if p.min() < -TOL_PSD or abs(p.sum() - 1.0) > TOL_TRACE:
        raise PositivityError("probabilities must be nonnegative and sum to 1")
    db = bob_states[0].dim
    da = len(probs)
    m = np.zeros((da * db, da * db), dtype=np.complex128)
    for i, (pi, rho) in enumerate(zip(p, bob_states)):
        if rho.dim != db:
            raise DimensionError("conditional states must share one dimension")
        block = np.zeros((da, da), dtype=np.complex128)
        block[i, i] = pi
        m += tensor(block, rho.matrix, cap=da * db)
    return BipartiteState(state=DensityOperator(m), dims=(da, db))


@dataclass(frozen=True)
class LocalOperation:
    """One completely positive, trace-nonincreasing operation on side A,
    given by Kraus operators. Typically a single measurement outcome."""

    kraus_ops: tuple[np.ndarray, ...]
    label: str = ""

    def __post_init__(self):
        if not self.kraus_ops:
            raise DimensionError("operation needs at least one Kraus operator")
        mats = tuple(as_matrix(k) for k in self.kraus_ops)
        d = mats[0].shape[0]
        total = np.zeros((d, d), dtype=np.complex128)
        for k in mats:
            if k.shape[0] != d:
                raise DimensionError("Kraus operators must share one dimension")
            total += k.conj().T @ k
        top = float(np.linalg.eigvalsh((total + total.conj().T) / 2).max())
        if top > 1.0 + TOL_PSD:
            raise PositivityError(
                f"operation increases trace: max eigenvalue of sum K†K is "
                f"{top:.17g}"
            )
        object.__setattr__(self, "kraus_ops", mats)

    @property
    def dim(self) -> int:
        return self.kraus_ops[0].shape[0]


def projector_operation(vec, label: str = "") -> LocalOperation:
    """Rank-one projective outcome onto ``vec``."""
    return LocalOperation(kraus_ops=(np.ascontiguousarray(
        np.outer(as_pure_state(vec), as_pure_state(vec).conj())),), label=label)


def measurement_from_unitary(u, labels: Sequence[str] | None = None
                             ) -> dict[str, LocalOperation]:
    """Complete projective measurement along the columns of ``u``."""
    u = as_matrix(u)
    d = u.shape[0]
    if labels is None:
        labels = [str(i) for i in range(d)]
    if len(labels) != d:
        raise DimensionError(f"need {d} outcome labels, got {len(labels)}")
    return {
        str(lab): projector_operation(u[:, i], label=str(lab))
        for i, lab in enumerate(labels)
    }


def z_measurement() -> dict[str, LocalOperation]:
    return measurement_from_unitary(np.eye(2), labels=["0", "1"])


def x_measurement() -> dict[str, LocalOperation]:
    h = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)
    return measurement_from_unitary(h, labels=["+", "-"])


def conditional_state(rho_ab: BipartiteState, op: LocalOperation
                      ) -> tuple[float, DensityOperator | None]:
    """Apply a local operation on A and trace A out.

    Returns (probability, normalized conditional state of B); the state
    is None when the outcome has zero probability.
    """
    if op.dim != rho_ab.dim_a:
        raise DimensionError(
            f"operation dimension {op.dim} does not match side A "
            f"({rho_ab.dim_a})"
        )
    da, db = rho_ab.dims
    eye_b = np.eye(db, dtype=np.complex128)
    total_dim = da * db
    m = rho_ab.state.matrix
    out = np.zeros_like(m)
    for k in op.kraus_ops:
        big = tensor(k, eye_b, cap=total_dim)
        out += big @ m @ big.conj().T
    prob = float(out.trace().real)
    if prob <= TOL_TRACE:
        return max(prob, 0.0), None
    reduced = partial_trace(out, (da, db), "B") / prob
    reduced = (reduced + reduced.conj().T) / 2
    return prob, DensityOperator(reduced)


@dataclass(frozen=True)
class ConditionalEnsemble:
    """Conditional states of B with their pairwise commutator norms.

    Only outcomes with nonzero probability enter; ``noncommuting_found``
    is set when any pairwise Frobenius norm exceeds the commutation
    tolerance.
    """

    states: tuple[tuple[float, DensityOperator], ...]
    pairwise_commutator_norms: np.ndarray
    noncommuting_found: bool


def commutation_scan(rho_ab: BipartiteState,
                     ops: Sequence[LocalOperation], *,
                     tol_comm: float = TOL_COMM) -> ConditionalEnsemble:
    """Collect conditional states for each operation and compare them."""
    kept: list[tuple[float, DensityOperator]] = []
    for op in ops:
        prob, state = conditional_state(rho_ab, op)
        if state is not None:
            kept.append((prob, state))
    n = len(kept)
    norms = np.zeros((n, n), dtype=np.float64)
    found = False
    for i in range(n):
        for j in range(i + 1, n):
            norm = frobenius_norm(commutator(kept[i][1].matrix,
                                             kept[j][1].matrix))
            norms[i, j] = norms[j, i] = norm
            if norm > tol_comm:
                found = True
    return ConditionalEnsemble(states=tuple(kept),
                               pairwise_commutator_norms=norms,
                               noncommuting_found=found)


def protocol_demo(rho_ab: BipartiteState,
                  measurement1: Mapping[str, LocalOperation],
                  measurement2: Mapping[str, LocalOperation],
                  outcome1: str, outcome2: str, *,
                  tol_witness: float = TOL_WITNESS,
                  tol_null: float = TOL_NULL,
                  tol_comm: float = TOL_COMM) -> WitnessReport:
    """Witness discord from two conditional states of B.

    Applies one outcome of each measurement family, then hands the two
    conditional states to the anticommutator witness, amplifying first
    when they are mixed. Commuting conditionals (zero-discord inputs)
    short-circuit to a plain spectral report, which is then never
    NONPOSITIVE_WITNESSED.
    """
    conds = []
    for meas, outcome, which in ((measurement1, outcome1, "first"),
                                 (measurement2, outcome2, "second")):
        if outcome not in meas:
            raise KeyError(
                f"unknown outcome {outcome!r} for the {which} measurement; "
                f"have {sorted(meas)}"
            )
        prob, state = conditional_state(rho_ab, meas[outcome])
        if state is None:
            raise NullOutcomeError(
                f"the {which} selected outcome {outcome!r} has probability "
                f"{prob:.3e}"
            )
        conds.append(state)
    rho1, rho2 = conds
    comm_norm = frobenius_norm(commutator(rho1.matrix, rho2.matrix))
    if comm_norm <= tol_comm:
        return witness_anticommutator(rho1, rho2, tol_witness=tol_witness,
                                      tol_null=tol_null)
    result = _nested_or_direct(rho1, rho2, tol_witness, tol_null, tol_comm)
    return result


def _nested_or_direct(rho1: DensityOperator, rho2: DensityOperator,
                      tol_witness: float, tol_null: float,
                      tol_comm: float) -> WitnessReport:
    f = abs(complex(np.vdot(rho1.spectrum.eigenvectors[:, 0],
                            rho2.spectrum.eigenvectors[:, 0])))
    if f <= TOL_F or f >= 1.0 - TOL_F:
        # boundary overlap: the margin condition cannot apply, but the
        # direct spectrum is still an honest report
        return witness_anticommutator(rho1, rho2, tol_witness=tol_witness,
                                      tol_null=tol_null)
    # small enough that a met margin condition guarantees the witness
    target = min((1.0 - f * f) / 10.0, f * (1.0 - f) / 8.0)
    result: NestedWitnessResult = nested_witness(
        rho1, rho2, target, tol_comm=tol_comm,
        tol_witness=tol_witness, tol_null=tol_null)
    return result.report
