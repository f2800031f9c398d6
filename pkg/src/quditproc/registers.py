"""Dense state vectors for registers of equal-dimension qudits.

Amplitude indexing is big-endian base N: subsystem 1 is the most significant
digit, so the basis state |n>_1 |m>_2 |k>_3 sits at flat index (n*N + m)*N + k.
Subsystem indices in the public API are 1-based throughout.

Every value is immutable once constructed and every function here is pure, so
everything is safe to share across threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Construction-time normalization check; amplitude comparisons elsewhere use
# max absolute difference against the same scale.
NORM_TOL = 1e-12


def digits_to_index(digits, dim: int) -> int:
    """Flat index of the basis state with the given big-endian digits."""
    index = 0
    for d in digits:
        index = index * dim + int(d)
    return index


def index_to_digits(index: int, dim: int, arity: int) -> tuple[int, ...]:
    """Big-endian base-`dim` digits of a flat index, `arity` digits long."""
    digits = []
    for _ in range(arity):
        index, d = divmod(index, dim)
        digits.append(d)
    return tuple(reversed(digits))


def _checked_amplitudes(dim: int, arity: int, amplitudes) -> np.ndarray:
    if dim < 2:
        raise ValueError(f"qudit dimension must be >= 2, got {dim}")
    if arity < 1:
        raise ValueError(f"register needs at least one qudit, got arity {arity}")
    amps = np.array(amplitudes, dtype=complex).reshape(-1)
    if amps.size != dim**arity:
        raise ValueError(
            f"amplitude vector has length {amps.size}, expected {dim**arity} "
            f"for {arity} qudit(s) of dimension {dim}"
        )
    return amps


@dataclass(frozen=True)
class QuditRegisterState:
    """Normalized pure state of `arity` qudits, each of dimension `dim`."""

    dim: int
    arity: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _checked_amplitudes(self.dim, self.arity, self.amplitudes)
        norm_sq = float(np.real(np.vdot(amps, amps)))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(
                f"state is not normalized: squared norm is {norm_sq!r} "
                "(use UnnormalizedVector for intermediate results)"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def digits(self) -> tuple[int, ...]:
        """Digits of the single occupied basis state.

        Only meaningful for computational basis states; raises ValueError when
        the amplitude is spread over more than one index.
        """
        hot = np.flatnonzero(np.abs(self.amplitudes) > 0.5)
        if hot.size != 1:
            raise ValueError("state is not a computational basis state")
        return index_to_digits(int(hot[0]), self.dim, self.arity)


@dataclass(frozen=True)
class UnnormalizedVector:
    """Register-shaped complex vector of arbitrary norm, zero included.

    Projection residues and other mid-computation values live here so they
    cannot silently be mistaken for physical states.
    """

    dim: int
    arity: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _checked_amplitudes(self.dim, self.arity, self.amplitudes)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self, min_norm: float = 1e-14) -> QuditRegisterState:
        n = self.norm()
        if n <= min_norm:
            raise ValueError("cannot normalize a numerically zero vector")
        return QuditRegisterState(self.dim, self.arity, self.amplitudes / n)


@dataclass(frozen=True)
class DenseOperator:
    """Complex square matrix acting on one qudit or one labeled register.

    Not required to be unitary; program synthesis accepts any matrix with
    strictly positive Tr(A†A).
    """

    dim: int
    entries: np.ndarray
    label: str | None = None

    def __post_init__(self):
        mat = np.array(self.entries, dtype=complex)
        if mat.shape != (self.dim, self.dim):
            raise ValueError(
                f"operator entries must be {self.dim}x{self.dim}, got shape {mat.shape}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    def adjoint(self) -> "DenseOperator":
        lab = None if self.label is None else f"{self.label}^dag"
        return DenseOperator(self.dim, self.entries.conj().T, lab)

    def gram_trace(self) -> float:
        """Tr(A†A), the squared Hilbert-Schmidt norm of the matrix."""
        return float(np.sum(np.abs(self.entries) ** 2))

    def is_unitary(self, tol: float = 1e-12) -> bool:
        delta = self.entries.conj().T @ self.entries - np.eye(self.dim)
        return bool(np.max(np.abs(delta)) <= tol)


def basis_state(dim: int, arity: int, digits) -> QuditRegisterState:
    """Computational basis state |d_1 d_2 ... d_arity>."""
    digits = tuple(int(d) for d in digits)
    if len(digits) != arity:
        raise ValueError(f"expected {arity} digits, got {len(digits)}")
    for d in digits:
        if not 0 <= d < dim:
            raise ValueError(f"digit {d} out of range for dimension {dim}")
    amps = np.zeros(dim**arity, dtype=complex)
    amps[digits_to_index(digits, dim)] = 1.0
    return QuditRegisterState(dim, arity, amps)


def tensor(a: QuditRegisterState, b: QuditRegisterState) -> QuditRegisterState:
    """Kronecker product with `a`'s qudits most significant; arities add."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return QuditRegisterState(a.dim, a.arity + b.arity, np.kron(a.amplitudes, b.amplitudes))


def apply_to_subsystem(op: DenseOperator, target: int, state) -> UnnormalizedVector:
    """Apply `op` to one subsystem: (1 ⊗ ... ⊗ op ⊗ ... ⊗ 1) |state>.

    `target` is 1-based. Accepts normalized or unnormalized input; the result
    is an UnnormalizedVector because `op` need not preserve norm.
    """
    if op.dim != state.dim:
        raise ValueError(f"operator dimension {op.dim} does not match qudit dimension {state.dim}")
    if not 1 <= target <= state.arity:
        raise ValueError(f"subsystem index {target} out of range 1..{state.arity}")
    n, k = state.dim, state.arity
    cube = state.amplitudes.reshape((n,) * k)
    moved = np.tensordot(op.entries, cube, axes=([1], [target - 1]))
    out = np.moveaxis(moved, 0, target - 1).reshape(-1)
    return UnnormalizedVector(n, k, out)


def apply_to_register(op: DenseOperator, state) -> UnnormalizedVector:
    """Apply an operator defined on the register's whole index space.

    `op.dim` must equal dim**arity; used for gates that act on a multi-qudit
    register as a unit (for example the two-qubit program preparation gate).
    """
    size = state.amplitudes.size
    if op.dim != size:
        raise ValueError(f"operator dimension {op.dim} does not match register size {size}")
    return UnnormalizedVector(state.dim, state.arity, op.entries @ state.amplitudes)


def inner_product(a, b) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.dim != b.dim or a.arity != b.arity:
        raise ValueError("shape mismatch in inner product")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def partial_inner_product(bra, joint, subsystems: tuple[int, ...]) -> UnnormalizedVector:
    """Contract <bra| against a subset of `joint`'s subsystems.

    `subsystems` lists 1-based positions of `joint`, ordered to match the
    subsystems of `bra`. The result lives on the remaining subsystems in their
    original order. Its squared norm is the probability of projecting the
    selected subsystems onto |bra>.
    """
    if bra.dim != joint.dim:
        raise ValueError("dimension mismatch in partial inner product")
    if len(subsystems) != bra.arity:
        raise ValueError(f"expected {bra.arity} subsystem indices, got {len(subsystems)}")
    if len(set(subsystems)) != len(subsystems):
        raise ValueError("subsystem indices must be distinct")
    for s in subsystems:
        if not 1 <= s <= joint.arity:
            raise ValueError(f"subsystem index {s} out of range 1..{joint.arity}")
    if bra.arity >= joint.arity:
        raise ValueError("partial projection must leave at least one subsystem")
    n = joint.dim
    cube = joint.amplitudes.reshape((n,) * joint.arity)
    bra_cube = bra.amplitudes.conj().reshape((n,) * bra.arity)
    axes = [s - 1 for s in subsystems]
    out = np.tensordot(cube, bra_cube, axes=(axes, list(range(bra.arity))))
    return UnnormalizedVector(n, joint.arity - bra.arity, out.reshape(-1))
