"""Turning linear operators into program states.

Any operator A on one qudit expands over the phase-and-shift basis as
A = sum_mn q_mn u(m,n) with q_mn = Tr[u(m,n)† A] / N. The normalized vector of
those coefficients over the Bell basis is the program state that makes the
processor apply A (up to normalization) after a successful program-register
measurement. This module provides the expansion, the program and measurement
vectors, and the catalog of named operators used by the CLI and the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gates import (
    BellLabel,
    ShiftDirection,
    bell_basis_matrix,
    bell_state,
    conditional_shift,
    conjugate_vector,
    negation_w,
    u_init,
    u_mn,
)
from .registers import (
    DenseOperator,
    QuditRegisterState,
    UnnormalizedVector,
    apply_to_register,
    apply_to_subsystem,
)

# Coefficients below this times the largest magnitude count as zero when
# deciding support membership.
SUPPORT_THRESHOLD = 1e-10

# Labels of the three traceless qubit basis operators (sigma_x, -i sigma_y,
# sigma_z). The fixed qubit reflection/exchange measurement is the uniform
# superposition of these three Bell states.
TRACELESS_QUBIT_LABELS = (BellLabel(0, 1), BellLabel(1, 1), BellLabel(1, 0))


@dataclass(frozen=True)
class HsExpansion:
    """Expansion coefficients q[m, n] of one operator over the u(m,n) basis."""

    dim: int
    coeffs: np.ndarray
    gram_norm: float  # sum |q|^2 = Tr(A†A) / N

    def __post_init__(self):
        q = np.array(self.coeffs, dtype=complex)
        if q.shape != (self.dim, self.dim):
            raise ValueError(f"coefficient array must be {self.dim}x{self.dim}")
        q.setflags(write=False)
        object.__setattr__(self, "coeffs", q)

    def support(self, threshold: float = SUPPORT_THRESHOLD) -> tuple[BellLabel, ...]:
        """Labels whose magnitude exceeds `threshold` relative to the largest."""
        mags = np.abs(self.coeffs)
        cut = threshold * float(mags.max())
        return tuple(
            BellLabel(m, n)
            for m in range(self.dim)
            for n in range(self.dim)
            if mags[m, n] > cut
        )

    def reconstruct(self) -> DenseOperator:
        """Rebuild sum_mn q_mn u(m,n); round-trip check for the expansion."""
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for m in range(self.dim):
            for n in range(self.dim):
                total += self.coeffs[m, n] * u_mn(self.dim, (m, n)).entries
        return DenseOperator(self.dim, total, label="reconstructed")


def hs_expand(op: DenseOperator) -> HsExpansion:
    """Expansion coefficients q_mn = Tr[u(m,n)† A] / N.

    Raises ValueError for the zero operator (or anything non-finite), which
    has no program state.
    """
    n = op.dim
    if not np.all(np.isfinite(op.entries)):
        raise ValueError("operator entries must be finite")
    if np.max(np.abs(op.entries)) == 0.0:
        raise ValueError("cannot expand the zero operator")
    coeffs = np.empty((n, n), dtype=complex)
    s = np.arange(n)
    for m in range(n):
        phases = np.exp(2j * np.pi * s * m / n)
        for nn in range(n):
            # Tr[u(m,nn)† A] = sum_s e^{+2 pi i s m / N} A[(s - nn) mod N, s]
            coeffs[m, nn] = np.sum(phases * op.entries[(s - nn) % n, s]) / n
    gram = float(np.sum(np.abs(coeffs) ** 2))
    return HsExpansion(n, coeffs, gram)


@dataclass(frozen=True)
class ProgramVector:
    """Normalized two-qudit program state for one operator, with its support."""

    dim: int
    state: QuditRegisterState
    support: tuple[BellLabel, ...]


def program_from_expansion(expansion: HsExpansion) -> ProgramVector:
    """Program state sqrt(N / Tr(A†A)) sum_mn q_mn |Xi_mn>."""
    scale = 1.0 / np.sqrt(expansion.gram_norm)
    weights = (expansion.coeffs * scale).reshape(-1)
    amps = bell_basis_matrix(expansion.dim) @ weights
    return ProgramVector(
        expansion.dim,
        QuditRegisterState(expansion.dim, 2, amps),
        expansion.support(),
    )


def synthesize_program(op: DenseOperator) -> ProgramVector:
    """Program state implementing `op`, via the general expansion path."""
    return program_from_expansion(hs_expand(op))


@dataclass(frozen=True)
class MeasurementVector:
    """Program-register measurement direction: full basis or a support subset."""

    dim: int
    state: QuditRegisterState
    kind: str  # "full" | "support"
    support: tuple[BellLabel, ...] | None = None


def measurement_full(dim: int) -> MeasurementVector:
    """Uniform superposition of all N^2 Bell states, weight 1/N each."""
    weights = np.full(dim * dim, 1.0 / dim, dtype=complex)
    amps = bell_basis_matrix(dim) @ weights
    return MeasurementVector(dim, QuditRegisterState(dim, 2, amps), "full", None)


def measurement_for_labels(dim: int, labels) -> MeasurementVector:
    """Uniform superposition of the named Bell states."""
    labels = tuple(BellLabel(*lab).reduced(dim) for lab in labels)
    if not labels:
        raise ValueError("measurement needs at least one Bell label")
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate Bell labels in measurement")
    weights = np.zeros(dim * dim, dtype=complex)
    for m, n in labels:
        weights[m * dim + n] = 1.0 / np.sqrt(len(labels))
    amps = bell_basis_matrix(dim) @ weights
    return MeasurementVector(dim, QuditRegisterState(dim, 2, amps), "support", labels)


def measurement_restricted(expansion: HsExpansion) -> MeasurementVector:
    """Measurement restricted to the expansion's support labels.

    For a unitary operator this boosts the success probability from 1/N^2 to
    1/S, S the support size.
    """
    return measurement_for_labels(expansion.dim, expansion.support())


# --- named operator catalog ------------------------------------------------


def orthogonal_qubit_state(phi: QuditRegisterState) -> QuditRegisterState:
    """The orthogonal partner of a qubit state: (mu, nu) -> (conj nu, -conj mu).

    Any other phase convention for the partner changes the prepared program
    only by a global phase.
    """
    if phi.dim != 2 or phi.arity != 1:
        raise ValueError("expected a single-qubit state")
    mu, nu = phi.amplitudes
    return QuditRegisterState(2, 1, np.array([np.conj(nu), -np.conj(mu)]))


def reflection_operator(phi: QuditRegisterState) -> DenseOperator:
    """1 - 2|phi><phi|: flips the phi component and fixes its complement."""
    if phi.arity != 1:
        raise ValueError("reflection is defined for a single-qudit state")
    mat = np.eye(phi.dim, dtype=complex) - 2.0 * np.outer(phi.amplitudes, phi.amplitudes.conj())
    return DenseOperator(phi.dim, mat, label="reflection")


def exchange_operator(phi: QuditRegisterState) -> DenseOperator:
    """|phi><phi_perp| + |phi_perp><phi| on a qubit: swaps the orthogonal pair."""
    perp = orthogonal_qubit_state(phi)
    mat = np.outer(phi.amplitudes, perp.amplitudes.conj()) + np.outer(
        perp.amplitudes, phi.amplitudes.conj()
    )
    return DenseOperator(2, mat, label="exchange")


def family_operator(l: int, phi_angle: float) -> DenseOperator:
    """One-parameter rotation on l qubits generated by sigma_z on the leading qubit.

    cos(phi) 1 + i sin(phi) (sigma_z ⊗ 1^{l-1}), diagonal in the computational
    basis. The diagonal members of the u(m,n) basis are the n = 0 labels (the
    phase index comes first); the generator expands over odd-m diagonals only,
    so the support has size 1 + 2^{l-1} and the success probability under the
    restricted measurement is 2 / (2^l + 2).
    """
    if l < 1:
        raise ValueError(f"need at least one qubit, got l={l}")
    n = 2**l
    generator = np.kron(np.diag([1.0, -1.0]), np.eye(n // 2))
    mat = np.cos(phi_angle) * np.eye(n) + 1j * np.sin(phi_angle) * generator
    return DenseOperator(n, mat.astype(complex), label=f"family(l={l})")


def example1_operator(phi_angle: float) -> DenseOperator:
    """The two-qubit member of the family: diag(e^{i phi}, e^{i phi}, e^{-i phi}, e^{-i phi})."""
    op = family_operator(2, phi_angle)
    return DenseOperator(4, op.entries, label="example1")


def example2_operator(theta: float, dim: int) -> DenseOperator:
    """cos(theta) 1 + i sin(theta) u(0, N/2) for even N.

    The half shift u(0, N/2) is self-adjoint, so this is unitary for every
    theta; its two-term support makes the restricted success probability 1/2
    at every even dimension.
    """
    if dim % 2 != 0:
        raise ValueError(f"the half-shift rotation needs an even dimension, got {dim}")
    half = u_mn(dim, (0, dim // 2)).entries
    mat = np.cos(theta) * np.eye(dim) + 1j * np.sin(theta) * half
    return DenseOperator(dim, mat.astype(complex), label="example2")


# --- named program constructors ---------------------------------------------


def reflection_program(phi: QuditRegisterState) -> ProgramVector:
    """Program for 1 - 2|phi><phi| via the general expansion path."""
    return synthesize_program(reflection_operator(phi))


def reflection_program_factored(phi: QuditRegisterState) -> QuditRegisterState:
    """Reflection program built by circuit instead of by expansion.

    Starts from |Xi_00> - (2/sqrt N)|phi*>|phi>, shifts the second qudit down
    twice under control of the first, then negates the first. Equivalent to
    reflection_program(phi).state; the input state is simpler to prepare.
    """
    if phi.arity != 1:
        raise ValueError("reflection is defined for a single-qudit state")
    n = phi.dim
    star = conjugate_vector(phi)
    raw = bell_state(n, (0, 0)).amplitudes - (2.0 / np.sqrt(n)) * np.kron(
        star.amplitudes, phi.amplitudes
    )
    vec = UnnormalizedVector(n, 2, raw).normalized()
    vec = conditional_shift(n, 1, 2, ShiftDirection.BACKWARD, vec)
    vec = conditional_shift(n, 1, 2, ShiftDirection.BACKWARD, vec)
    return apply_to_subsystem(negation_w(n), 1, vec).normalized()


def prepare_reflection_program(phi: QuditRegisterState) -> QuditRegisterState:
    """Qubit reflection program prepared from the symmetric pair state.

    Applies the preparation gate to (|phi>|phi_perp> + |phi_perp>|phi>)/sqrt 2;
    equals synthesize_program(reflection_operator(phi)).state.
    """
    perp = orthogonal_qubit_state(phi)
    raw = (
        np.kron(phi.amplitudes, perp.amplitudes) + np.kron(perp.amplitudes, phi.amplitudes)
    ) / np.sqrt(2)
    staged = QuditRegisterState(2, 2, raw)
    return apply_to_register(u_init(), staged).normalized()


def prepare_exchange_program(phi: QuditRegisterState) -> QuditRegisterState:
    """Qubit exchange program prepared from the difference pair state.

    Same preparation gate applied to (|phi>|phi> - |phi_perp>|phi_perp>)/sqrt 2.
    """
    perp = orthogonal_qubit_state(phi)
    raw = (
        np.kron(phi.amplitudes, phi.amplitudes) - np.kron(perp.amplitudes, perp.amplitudes)
    ) / np.sqrt(2)
    staged = QuditRegisterState(2, 2, raw)
    return apply_to_register(u_init(), staged).normalized()


def example1_program(phi_angle: float) -> ProgramVector:
    """Program for the two-qubit family member (dimension 4, generic support 3)."""
    return synthesize_program(example1_operator(phi_angle))


def family_program(l: int, phi_angle: float) -> ProgramVector:
    """Program for the l-qubit leading-z rotation (dimension 2^l)."""
    return synthesize_program(family_operator(l, phi_angle))


def example2_program(theta: float, dim: int) -> ProgramVector:
    """Two-term program cos(theta)|Xi_00> + i sin(theta)|Xi_{0,N/2}>."""
    return synthesize_program(example2_operator(theta, dim))
