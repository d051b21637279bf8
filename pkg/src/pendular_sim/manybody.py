"""System Hamiltonians for linear chains of two or three pendular qubits.

Basis ordering follows ``kron``: site 0 is the most significant bit, so for
three molecules the basis is |000>, |001>, ..., |111>.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import HermitianEigenResult, hermitian_eig, kron_all
from .pendular import PendularQubit

NEXT_NEAREST_RATIO = 1 / 8  # coupling ~ r^-3 and r13 = 2 r12


@dataclass(frozen=True)
class ChainGeometry:
    """Equidistant linear chain of ``n`` identical molecules.

    ``omega`` is the nearest-neighbour coupling in units of B and ``alpha`` the
    angle between the chain axis and the field.
    """

    n: int
    omega: float
    alpha: float = np.pi / 2

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError(f"only chains of 2 or 3 molecules are supported, got n={self.n}")
        if not np.isfinite(self.omega) or self.omega < 0:
            raise ValueError(f"omega must be finite and >= 0, got {self.omega}")
        if not 0 <= self.alpha <= np.pi:
            raise ValueError(f"alpha must lie in [0, pi], got {self.alpha}")

    def couplings(self) -> list[tuple[tuple[int, int], float]]:
        if self.n == 2:
            return [((0, 1), self.omega)]
        return [
            ((0, 1), self.omega),
            ((1, 2), self.omega),
            ((0, 2), self.omega * NEXT_NEAREST_RATIO),
        ]


@dataclass(frozen=True)
class SystemHamiltonian:
    n: int
    matrix: np.ndarray
    spectral: HermitianEigenResult = field(repr=False)

    @property
    def dim(self) -> int:
        return 2**self.n


def angular_factor(alpha: float) -> float:
    return 1.0 - 3.0 * np.cos(alpha) ** 2


def _embed(ops: dict[int, np.ndarray], n: int) -> np.ndarray:
    return kron_all(*(ops.get(site, np.eye(2)) for site in range(n)))


def site_energy_term(q: PendularQubit, site: int, n: int) -> np.ndarray:
    if not 0 <= site < n:
        raise ValueError(f"site {site} out of range for {n} molecules")
    return _embed({site: q.energies}, n)


def pair_interaction_term(
    q: PendularQubit, omega_ij: float, alpha: float, sites: tuple[int, int], n: int
) -> np.ndarray:
    """Angle-averaged dipole-dipole coupling between two sites."""
    i, j = sites
    if i == j:
        raise ValueError(f"pair interaction needs two distinct sites, got {sites}")
    for s in sites:
        if not 0 <= s < n:
            raise ValueError(f"site {s} out of range for {n} molecules")
    block = q.orientation_block
    return omega_ij * angular_factor(alpha) * _embed({i: block, j: block}, n)


def build_hamiltonian(q: PendularQubit, geom: ChainGeometry) -> SystemHamiltonian:
    n = geom.n
    H = sum(site_energy_term(q, s, n) for s in range(n))
    for sites, omega_ij in geom.couplings():
        H = H + pair_interaction_term(q, omega_ij, geom.alpha, sites, n)
    H = 0.5 * (H + H.T)
    H.setflags(write=False)
    return SystemHamiltonian(n=n, matrix=H, spectral=hermitian_eig(H))
