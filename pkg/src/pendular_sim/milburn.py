"""Intrinsic-decoherence dynamics in the energy eigenbasis.

With ``H = sum_m e_m |m><m|`` the Milburn equation

    drho/dt = -i[H, rho] - (gamma/2) [H, [H, rho]]

is solved exactly by damping each eigenbasis coherence:

    rho_mn(t) = exp(-(gamma t / 2)(e_m - e_n)^2 - i (e_m - e_n) t) rho_mn(0).

Time is in units of hbar/B and ``gamma`` in units of hbar/B as well.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .manybody import SystemHamiltonian
from .numerics import HERMITIAN_TOL, PSD_TOL, HermitianEigenResult, as_hermitian, hermitian_eig

TRACE_TOL = 1e-12
DEGENERACY_TOL = 1e-9


def validate_density_matrix(rho) -> np.ndarray:
    """Return ``rho`` as a complex Hermitian unit-trace PSD matrix, or raise ValueError."""
    R = as_hermitian(rho, HERMITIAN_TOL).astype(np.complex128)
    tr = np.trace(R).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"density matrix trace is {tr!r}, expected 1")
    smallest = np.linalg.eigvalsh(R)[0]
    if smallest < -PSD_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {smallest:.3e}")
    return R


def pure_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValueError("state vector is zero")
    psi = psi / norm
    return np.outer(psi, psi.conj())


@dataclass(frozen=True)
class MilburnPropagator:
    spectral: HermitianEigenResult
    gamma: float

    def __post_init__(self):
        if not np.isfinite(self.gamma) or self.gamma < 0:
            raise ValueError(f"gamma must be finite and >= 0, got {self.gamma}")

    @classmethod
    def from_hamiltonian(cls, H: SystemHamiltonian | np.ndarray, gamma: float) -> MilburnPropagator:
        spectral = H.spectral if isinstance(H, SystemHamiltonian) else hermitian_eig(H)
        return cls(spectral, float(gamma))

    @property
    def dim(self) -> int:
        return len(self.spectral.eigenvalues)

    def gaps(self) -> np.ndarray:
        e = self.spectral.eigenvalues
        return e[:, None] - e[None, :]

    def to_eigenbasis(self, rho: np.ndarray) -> np.ndarray:
        V = self.spectral.eigenvectors
        return V.conj().T @ rho @ V

    def from_eigenbasis(self, rho: np.ndarray) -> np.ndarray:
        V = self.spectral.eigenvectors
        out = V @ rho @ V.conj().T
        return 0.5 * (out + out.conj().swapaxes(-1, -2))


def _check_dim(rho0: np.ndarray, prop: MilburnPropagator) -> None:
    if rho0.shape != (prop.dim, prop.dim):
        raise ValueError(f"state of shape {rho0.shape} does not match propagator dimension {prop.dim}")


def evolve_series(rho0, prop: MilburnPropagator, times) -> np.ndarray:
    """States at every time in ``times``; returns an array of shape (len(times), d, d)."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(times < 0) or not np.all(np.isfinite(times)):
        raise ValueError("evolution times must be finite and >= 0")
    rho0 = np.asarray(rho0, dtype=np.complex128)
    _check_dim(rho0, prop)
    d = prop.gaps()
    rate = -0.5 * prop.gamma * d**2 - 1j * d
    factors = np.exp(rate[None, :, :] * times[:, None, None])
    return prop.from_eigenbasis(factors * prop.to_eigenbasis(rho0))


def evolve(rho0, prop: MilburnPropagator, t: float) -> np.ndarray:
    if t < 0:
        raise ValueError(f"time must be >= 0, got {t}")
    return evolve_series(rho0, prop, [t])[0]


def master_equation_rhs(rho, H: SystemHamiltonian | np.ndarray, gamma: float) -> np.ndarray:
    Hm = H.matrix if isinstance(H, SystemHamiltonian) else np.asarray(H)
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != Hm.shape:
        raise ValueError(f"state shape {rho.shape} does not match Hamiltonian shape {Hm.shape}")
    comm = Hm @ rho - rho @ Hm
    double = Hm @ comm - comm @ Hm
    return -1j * comm - 0.5 * gamma * double


def dephased_limit(rho0, prop: MilburnPropagator, gap_tol: float = DEGENERACY_TOL) -> np.ndarray:
    """Infinite-time state: coherences across gaps larger than ``gap_tol`` removed.

    The result does not depend on gamma as long as it is positive.
    """
    if prop.gamma <= 0:
        raise ValueError("dephased limit requires gamma > 0; with gamma = 0 nothing dephases")
    rho0 = np.asarray(rho0, dtype=np.complex128)
    _check_dim(rho0, prop)
    keep = np.abs(prop.gaps()) <= gap_tol
    return prop.from_eigenbasis(np.where(keep, prop.to_eigenbasis(rho0), 0.0))


def smallest_gap(prop: MilburnPropagator, gap_tol: float = DEGENERACY_TOL) -> float:
    """Smallest eigenvalue spacing above ``gap_tol``; inf if the spectrum is fully degenerate."""
    d = np.abs(prop.gaps())
    d = d[d > gap_tol]
    return float(d.min()) if d.size else float("inf")


def purity(rho) -> float:
    rho = np.asarray(rho)
    return float(np.real(np.einsum("ij,ji->", rho, rho)))
