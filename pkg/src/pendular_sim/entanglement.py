"""Partial transposes and negativity for multi-qubit density matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NEGATIVITY_CLAMP = 1e-10


@dataclass(frozen=True)
class Bipartition:
    """Split of ``n`` qubits into ``part_a`` and its complement."""

    n: int
    part_a: frozenset[int]

    def __init__(self, n: int, part_a):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "part_a", frozenset(int(s) for s in part_a))
        if self.n < 2:
            raise ValueError(f"a bipartition needs at least 2 qubits, got {n}")
        if not self.part_a or len(self.part_a) >= self.n:
            raise ValueError(f"part_a must be a nonempty proper subset, got {sorted(self.part_a)}")
        if min(self.part_a) < 0 or max(self.part_a) >= self.n:
            raise ValueError(f"sites {sorted(self.part_a)} out of range for {self.n} qubits")

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.part_a


def partial_transpose(rho, split: Bipartition) -> np.ndarray:
    """Transpose the tensor indices of the qubits in ``split.part_a``."""
    rho = np.asarray(rho)
    n = split.n
    dim = 2**n
    if rho.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix for {n} qubits, got shape {rho.shape}")
    t = rho.reshape((2,) * (2 * n))
    for site in split.part_a:
        t = np.swapaxes(t, site, site + n)
    return t.reshape(dim, dim)


def negativity(rho, split: Bipartition) -> float:
    """Sum of absolute eigenvalues of the partial transpose, minus one.

    Results within ``NEGATIVITY_CLAMP`` below zero are reported as 0.
    """
    evals = np.linalg.eigvalsh(partial_transpose(rho, split))
    value = float(np.sum(np.abs(evals)) - 1.0)
    if -NEGATIVITY_CLAMP <= value < 0:
        return 0.0
    return value


# AB|C, AC|B, BC|A expressed by the single qubit on one side.
TRIPARTITE_SPLITS = tuple(Bipartition(3, {site}) for site in (2, 1, 0))


def tripartite_negativity(rho) -> float:
    """Geometric mean of the three one-versus-two negativities of a 3-qubit state."""
    rho = np.asarray(rho)
    if rho.shape != (8, 8):
        raise ValueError(f"tripartite negativity needs an 8x8 state, got shape {rho.shape}")
    values = [negativity(rho, split) for split in TRIPARTITE_SPLITS]
    if min(values) <= 0:
        return 0.0
    return float(np.cbrt(np.prod(values)))
