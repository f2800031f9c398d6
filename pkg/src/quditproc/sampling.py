"""Seeded random states and operators for sweeps and property tests."""

from __future__ import annotations

import numpy as np

from .registers import DenseOperator, QuditRegisterState


def random_state(dim: int, arity: int, rng: np.random.Generator) -> QuditRegisterState:
    """Haar-induced random pure state: a normalized complex-normal vector."""
    size = dim**arity
    v = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return QuditRegisterState(dim, arity, v / np.linalg.norm(v))


def random_unitary(dim: int, rng: np.random.Generator) -> DenseOperator:
    """Haar-distributed random unitary: QR of a complex-normal matrix, phases fixed."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return DenseOperator(dim, q, label="random_unitary")


def random_operator(dim: int, rng: np.random.Generator) -> DenseOperator:
    """Generic complex-normal matrix; almost surely non-unitary and nonzero."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return DenseOperator(dim, z, label="random_operator")
