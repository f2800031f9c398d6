"""The fixed gate set: conditional shifts, the entangled two-qudit program
basis, the phase-and-shift operator basis it diagonalizes, and the small
auxiliary gates used to prepare program states."""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple

import numpy as np

from .registers import DenseOperator, QuditRegisterState


class ShiftDirection(Enum):
    """Whether the target digit gains or loses the control digit (mod N)."""

    FORWARD = "forward"
    BACKWARD = "backward"


class BellLabel(NamedTuple):
    """Label pair (m, n): m indexes the phase winding, n the shift offset."""

    m: int
    n: int

    def reduced(self, dim: int) -> "BellLabel":
        return BellLabel(self.m % dim, self.n % dim)


def conditional_shift(dim: int, control: int, target: int, direction: ShiftDirection, state):
    """Conditional shift |k>_c |m>_t -> |k>_c |(m ± k) mod N>_t.

    The qudit generalization of controlled-NOT: FORWARD adds the control digit
    to the target digit, BACKWARD subtracts it. At dim 2 the two directions
    coincide. The gate is a permutation, so the input register type (normalized
    or not) is preserved in the output.
    """
    if dim != state.dim:
        raise ValueError(f"gate dimension {dim} does not match state dimension {state.dim}")
    if control == target:
        raise ValueError("control and target subsystems must differ")
    for name, idx in (("control", control), ("target", target)):
        if not 1 <= idx <= state.arity:
            raise ValueError(f"{name} index {idx} out of range 1..{state.arity}")
    k = state.arity
    cube = state.amplitudes.reshape((dim,) * k).copy()
    c_ax, t_ax = control - 1, target - 1
    # Slicing out the control axis renumbers later axes.
    t_in_slice = t_ax - 1 if t_ax > c_ax else t_ax
    sel: list = [slice(None)] * k
    for c in range(dim):
        sel[c_ax] = c
        shift = c if direction is ShiftDirection.FORWARD else -c
        cube[tuple(sel)] = np.roll(cube[tuple(sel)], shift, axis=t_in_slice)
    return type(state)(dim, k, cube.reshape(-1))


def bell_state(dim: int, label) -> QuditRegisterState:
    """Maximally entangled two-qudit state for the given label.

    |Xi_mn> = N^{-1/2} sum_k exp(2 pi i m k / N) |k> |(k - n) mod N>.
    The N^2 of them form an orthonormal basis of the two-qudit space.
    """
    m, n = BellLabel(*label).reduced(dim)
    amps = np.zeros(dim * dim, dtype=complex)
    for k in range(dim):
        amps[k * dim + (k - n) % dim] = np.exp(2j * np.pi * m * k / dim)
    return QuditRegisterState(dim, 2, amps / np.sqrt(dim))


def u_mn(dim: int, label) -> DenseOperator:
    """Phase-and-shift basis operator: |s> -> exp(-2 pi i s m / N) |(s - n) mod N>.

    n = 0 gives the diagonal (pure phase) operators, m = 0 the pure shifts;
    note the sign conventions differ between this phase and the one in
    bell_state. The N^2 operators are orthogonal under the trace inner
    product, each with norm N.
    """
    m, n = BellLabel(*label).reduced(dim)
    mat = np.zeros((dim, dim), dtype=complex)
    for s in range(dim):
        mat[(s - n) % dim, s] = np.exp(-2j * np.pi * s * m / dim)
    return DenseOperator(dim, mat, label=f"u({m},{n})")


# Literal table, deliberately not computed from u_mn: tests cross-check the
# two constructions against sign-convention drift.
_PAULI_TABLE = {
    (0, 0): ((1, 0), (0, 1)),
    (0, 1): ((0, 1), (1, 0)),
    (1, 0): ((1, 0), (0, -1)),
    (1, 1): ((0, -1), (1, 0)),
}


def pauli_s(j: int, k: int) -> DenseOperator:
    """Qubit operator table: S00 = 1, S01 = sigma_x, S10 = sigma_z, S11 = -i sigma_y."""
    if (j, k) not in _PAULI_TABLE:
        raise ValueError(f"indices must be bits, got ({j}, {k})")
    return DenseOperator(2, np.array(_PAULI_TABLE[(j, k)], dtype=complex), label=f"S{j}{k}")


_U_INIT = np.array(
    [
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [-1, 0, 0, 0],
        [0, 0, -1, 0],
    ],
    dtype=complex,
)


def u_init() -> DenseOperator:
    """Two-qubit program preparation gate (a signed permutation).

    Column action: |00> -> -|10>, |01> -> |00>, |10> -> -|11>, |11> -> |01>.
    Applied to the symmetric or antisymmetric pair states it produces the
    reflection and exchange program vectors.
    """
    return DenseOperator(4, _U_INIT, label="u_init")


def negation_w(dim: int) -> DenseOperator:
    """Index negation W|k> = |(-k) mod N>; a self-inverse permutation."""
    mat = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        mat[(-k) % dim, k] = 1.0
    return DenseOperator(dim, mat, label="W")


def conjugate_vector(v: QuditRegisterState) -> QuditRegisterState:
    """Entrywise complex conjugate of a single-qudit state in the computational basis."""
    if v.arity != 1:
        raise ValueError("conjugate_vector expects a single-qudit state")
    return QuditRegisterState(v.dim, 1, v.amplitudes.conj())


def bell_basis_matrix(dim: int) -> np.ndarray:
    """Unitary whose column m*N + n holds the amplitudes of the (m, n) Bell state."""
    cols = np.empty((dim * dim, dim * dim), dtype=complex)
    for m in range(dim):
        for n in range(dim):
            cols[:, m * dim + n] = bell_state(dim, (m, n)).amplitudes
    return cols
