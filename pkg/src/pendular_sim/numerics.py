"""Dense complex matrix kernels shared by the physics modules.

Everything here works on small (dimension <= 32) numpy arrays. Inputs are
validated and copied to ``float64`` when real and ``complex128`` otherwise, so
real symmetric input yields real eigenvectors.
"""

from __future__ import annotations

from functools import reduce
from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-10
PSD_TOL = 1e-10


class HermitianEigenResult(NamedTuple):
    """Ascending eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def as_matrix(A) -> np.ndarray:
    M = np.array(A)
    M = M.astype(np.complex128 if np.iscomplexobj(M) else np.float64)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix contains NaN or Inf entries")
    return M


def hermiticity_error(A: np.ndarray) -> float:
    return float(np.max(np.abs(A - A.conj().T)))


def as_hermitian(A, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate ``A`` as square and Hermitian within ``tol``; return it symmetrized."""
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"matrix must be square, got shape {M.shape}")
    err = hermiticity_error(M)
    if err > tol:
        raise ValueError(f"matrix is not Hermitian: max |A - A^H| = {err:.3e} > {tol:.0e}")
    return 0.5 * (M + M.conj().T)


def hermitian_eig(A) -> HermitianEigenResult:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues are returned in ascending order. Within a degenerate
    eigenspace the choice of basis is whatever LAPACK produces; it is
    deterministic for identical input.

    Raises:
        ValueError: if ``A`` is not square or deviates from Hermitian by more
            than ``HERMITIAN_TOL`` in any entry.
    """
    M = as_hermitian(A)
    evals, evecs = np.linalg.eigh(M)
    return HermitianEigenResult(evals, evecs)


def kron(A, B) -> np.ndarray:
    return np.kron(as_matrix(A), as_matrix(B))


def kron_all(*ops) -> np.ndarray:
    """Kronecker product of ``ops`` in order, the first factor being most significant."""
    if not ops:
        raise ValueError("kron_all needs at least one operand")
    return reduce(kron, ops)


def psd_sqrt(A) -> np.ndarray:
    """Principal square root of a Hermitian positive-semidefinite matrix.

    Eigenvalues in ``[-PSD_TOL, 0)`` are clamped to zero, as are positive
    ones at rounding level (``d * eps * max eigenvalue``) so that the root of
    a projector stays a projector.

    Raises:
        ValueError: if an eigenvalue is below ``-PSD_TOL``.
    """
    evals, evecs = hermitian_eig(A)
    if evals[0] < -PSD_TOL:
        raise ValueError(f"matrix is not positive semidefinite: eigenvalue {evals[0]:.3e}")
    floor = evals.size * np.finfo(float).eps * max(evals[-1], 0.0)
    roots = np.sqrt(np.where(evals > floor, evals, 0.0))
    S = (evecs * roots) @ evecs.conj().T
    return 0.5 * (S + S.conj().T)
