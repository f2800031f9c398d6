"""Program-register post-selection and the brute-force oracle it is checked against.

Measurement is modeled as a deterministic rank-one projection followed by
renormalization; success probability is the squared norm of the projected
component. Post-selected states are compared to the oracle by fidelity, with
the relating global phase reported for diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .processor import ProcessorSpec, QubitCnotNetwork, QuditShiftNetwork, apply_processor
from .programs import (
    MeasurementVector,
    hs_expand,
    measurement_full,
    measurement_restricted,
    program_from_expansion,
)
from .registers import (
    DenseOperator,
    QuditRegisterState,
    inner_product,
    partial_inner_product,
)

# Probabilities below this count as "the measurement can never succeed" rather
# than numerical dust.
ZERO_PROBABILITY_CUTOFF = 1e-14


class StateAnnihilatedError(ValueError):
    """The operator maps this state to (numerically) zero; no oracle state exists."""


@dataclass(frozen=True)
class PostSelectionOutcome:
    """Result of one post-selected run.

    data_state is absent when the success probability falls below the cutoff;
    oracle_fidelity is |<oracle|data>|^2 and global_phase the unit scalar with
    data = phase * oracle (both zero/None when either side is missing).
    """

    probability: float
    data_state: QuditRegisterState | None
    oracle_fidelity: float
    global_phase: complex | None


def post_select(joint, meas, oracle_state: QuditRegisterState | None = None) -> PostSelectionOutcome:
    """Project the trailing subsystems of `joint` onto the measurement vector.

    The measurement lives on the program register (the last subsystems of the
    joint state); whatever leads it is the data register. A zero-probability
    outcome is reported, not raised.
    """
    meas_state = meas.state if isinstance(meas, MeasurementVector) else meas
    start = joint.arity - meas_state.arity + 1
    subsystems = tuple(range(start, joint.arity + 1))
    overlap = partial_inner_product(meas_state, joint, subsystems)
    probability = overlap.norm() ** 2
    data_state = overlap.normalized() if probability > ZERO_PROBABILITY_CUTOFF else None
    fidelity = 0.0
    phase: complex | None = None
    if data_state is not None and oracle_state is not None:
        ip = inner_product(oracle_state, data_state)
        fidelity = abs(ip) ** 2
        if abs(ip) > 0.0:
            phase = complex(ip / abs(ip))
    return PostSelectionOutcome(float(probability), data_state, float(fidelity), phase)


def sample_post_selection(joint, meas, rng: np.random.Generator, oracle_state=None):
    """Demonstration mode: draw the measurement outcome instead of projecting.

    Returns (accepted, outcome). The accepted branch carries the same outcome a
    deterministic run reports; a rejected run is discarded, so its outcome
    keeps the probability but no data state. Not used by any verification
    path, which relies on the deterministic post_select.
    """
    outcome = post_select(joint, meas, oracle_state)
    if rng.random() < outcome.probability:
        return True, outcome
    return False, PostSelectionOutcome(outcome.probability, None, 0.0, None)


def oracle_apply(op: DenseOperator, psi: QuditRegisterState) -> QuditRegisterState:
    """Ground truth: |psi> -> A|psi> / ||A psi||, by direct matrix application."""
    if op.dim != psi.amplitudes.size:
        raise ValueError(
            f"operator dimension {op.dim} does not match register size {psi.amplitudes.size}"
        )
    image = op.entries @ psi.amplitudes
    norm = float(np.linalg.norm(image))
    if norm <= 1e-14:
        raise StateAnnihilatedError("operator annihilates this state")
    return QuditRegisterState(psi.dim, psi.arity, image / norm)


def predicted_probability(op: DenseOperator, psi: QuditRegisterState, meas_kind: str = "full") -> float:
    """Closed-form success probability for the program-register measurement.

    full:    ||A psi||^2 / (N Tr(A†A))      -> 1/N^2 when A is unitary
    support: N ||A psi||^2 / (S Tr(A†A))    -> 1/S  when A is unitary,
    with S the number of expansion coefficients above the support threshold.
    The non-unitary form is a derivation from the expansion of the processor
    output; tests validate it against full simulation.
    """
    if op.dim != psi.amplitudes.size:
        raise ValueError("operator and state dimensions do not match")
    image = op.entries @ psi.amplitudes
    image_sq = float(np.real(np.vdot(image, image)))
    gram = op.gram_trace()
    if meas_kind == "full":
        return image_sq / (op.dim * gram)
    if meas_kind == "support":
        s = len(hs_expand(op).support())
        return op.dim * image_sq / (s * gram)
    raise ValueError(f"unknown measurement kind: {meas_kind!r}")


def run_experiment(
    proc: ProcessorSpec,
    op: DenseOperator,
    psi: QuditRegisterState,
    meas_kind: str = "full",
) -> PostSelectionOutcome:
    """Synthesize the program for `op`, run the processor, post-select, compare.

    Supports the single-data-qudit networks; the tensor array and the general
    diagonal processor need program encodings of their own.
    """
    if isinstance(proc, QubitCnotNetwork):
        if op.dim != 2:
            raise ValueError("qubit network needs a 2x2 operator")
    elif isinstance(proc, QuditShiftNetwork):
        if op.dim != proc.dim:
            raise ValueError(f"operator dimension {op.dim} does not match processor {proc.dim}")
    else:
        raise TypeError("run_experiment supports the shift and CNOT networks only")
    if meas_kind not in ("full", "support"):
        raise ValueError(f"unknown measurement kind: {meas_kind!r}")
    expansion = hs_expand(op)
    program = program_from_expansion(expansion)
    meas = measurement_full(op.dim) if meas_kind == "full" else measurement_restricted(expansion)
    joint = apply_processor(proc, psi, program.state)
    try:
        oracle = oracle_apply(op, psi)
    except StateAnnihilatedError:
        oracle = None
    return post_select(joint, meas, oracle)
