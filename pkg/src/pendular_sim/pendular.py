"""Single-molecule pendular states in an M = 0 spherical-harmonic basis.

Energies are in units of the rotational constant B and the field enters only
through the reduced strength ``w = mu * epsilon / B``. Basis index ``J`` runs
over ``Y_{J,0}`` for ``J = 0..jmax``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError
from .numerics import hermitian_eig

DEFAULT_JMAX = 40
MAX_JMAX = 200
_SIGN_TOL = 1e-12


@dataclass(frozen=True)
class PendularQubit:
    """Qubit levels |0>, |1> of one molecule at reduced field ``w``.

    ``coeffs0``/``coeffs1`` are the real expansion coefficients over
    ``Y_{J,0}``. Signs: the ``Y_00`` component of |0> is positive and |1> is
    oriented so that ``Ct > 0``. For w below about 14.5 the latter is the same
    as a positive ``Y_10`` component of |1>; beyond that the ``Y_10``
    component changes sign while ``Ct`` stays continuous.
    """

    w: float
    jmax: int
    E0: float
    E1: float
    C0: float
    C1: float
    Ct: float
    coeffs0: np.ndarray
    coeffs1: np.ndarray

    @property
    def energies(self) -> np.ndarray:
        return np.diag([self.E0, self.E1])

    @property
    def orientation_block(self) -> np.ndarray:
        """The 2x2 matrix of cos(theta) between the qubit states."""
        return np.array([[self.C0, self.Ct], [self.Ct, self.C1]])


def cos_theta_element(J: int) -> float:
    """<Y_{J,0}| cos(theta) |Y_{J+1,0}>; all other pairs vanish."""
    if J < 0:
        raise ValueError(f"J must be non-negative, got {J}")
    return (J + 1) / np.sqrt((2 * J + 1) * (2 * J + 3))


def cos_theta_matrix(jmax: int) -> np.ndarray:
    J = np.arange(jmax)
    off = (J + 1) / np.sqrt((2 * J + 1) * (2 * J + 3))
    return np.diag(off, 1) + np.diag(off, -1)


def _check_args(w: float, jmax: int) -> None:
    if not np.isfinite(w) or w < 0:
        raise ValueError(f"reduced field must be finite and >= 0, got {w}")
    if int(jmax) != jmax or jmax < 2:
        raise ValueError(f"jmax must be an integer >= 2 to resolve two qubit levels, got {jmax}")


def build_stark_hamiltonian(w: float, jmax: int) -> np.ndarray:
    """Real symmetric tridiagonal matrix of ``J^2 - w cos(theta)``."""
    _check_args(w, jmax)
    J = np.arange(jmax + 1, dtype=float)
    return np.diag(J * (J + 1)) - w * cos_theta_matrix(jmax)


@lru_cache(maxsize=256)
def _solve_cached(w: float, jmax: int) -> PendularQubit:
    H = build_stark_hamiltonian(w, jmax)
    evals, evecs = hermitian_eig(H)
    v0 = evecs[:, 0].copy()
    v1 = evecs[:, 1].copy()
    cos_op = cos_theta_matrix(jmax)
    if v0[0] < 0:
        v0 = -v0
    ct = v0 @ cos_op @ v1
    if ct < 0 or (abs(ct) < _SIGN_TOL and v1[1] < 0):
        v1 = -v1
    v0.setflags(write=False)
    v1.setflags(write=False)
    return PendularQubit(
        w=float(w),
        jmax=int(jmax),
        E0=float(evals[0]),
        E1=float(evals[1]),
        C0=float(v0 @ cos_op @ v0),
        C1=float(v1 @ cos_op @ v1),
        Ct=float(v0 @ cos_op @ v1),
        coeffs0=v0,
        coeffs1=v1,
    )


def solve_qubit(w: float, jmax: int = DEFAULT_JMAX) -> PendularQubit:
    """Diagonalize the Stark Hamiltonian and extract the two lowest levels.

    Results are memoized per ``(w, jmax)``; the returned object is immutable.
    """
    _check_args(w, jmax)
    return _solve_cached(float(w), int(jmax))


class PerturbativeQubit(NamedTuple):
    E0: float
    E1: float
    coeffs0: np.ndarray  # over (Y_00, Y_10)
    coeffs1: np.ndarray


FIRST_ORDER_MIXING = 1 / np.sqrt(3)


def perturbative_qubit(w: float, mixing: float = FIRST_ORDER_MIXING) -> PerturbativeQubit:
    """Weak-field approximation to the qubit levels.

    The states are ``|0> ~ Y_00 + mixing*w*Y_10`` and
    ``|1> ~ Y_10 - mixing*w*Y_00``, renormalized. The default ``mixing`` of
    1/sqrt(3) is the coefficient quoted in the original weak-field analysis;
    Rayleigh-Schroedinger theory gives ``1/(2*sqrt(3))``, which tracks the
    exact states more closely. Energies are the second-order values
    ``-w^2/6`` and ``2 + w^2/10``.
    """
    if w < 0:
        raise ValueError(f"reduced field must be >= 0, got {w}")
    x = mixing * w
    norm = np.hypot(1.0, x)
    return PerturbativeQubit(
        E0=-(w**2) / 6,
        E1=2 + w**2 / 10,
        coeffs0=np.array([1.0, x]) / norm,
        coeffs1=np.array([-x, 1.0]) / norm,
    )


def _observables(q: PendularQubit) -> np.ndarray:
    return np.array([q.E0, q.E1, q.C0, q.C1, q.Ct])


def converge_jmax(w: float, tol: float = 1e-10) -> int:
    """Smallest truncation (10, 15, 20, ...) stable to ``tol`` against jmax + 10.

    Stability means E0, E1, C0, C1 and Ct all change by less than ``tol``.

    Raises:
        ConvergenceError: if no truncation up to ``MAX_JMAX`` qualifies.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    for jmax in range(10, MAX_JMAX + 1, 5):
        delta = np.abs(_observables(solve_qubit(w, jmax)) - _observables(solve_qubit(w, jmax + 10)))
        if np.all(delta < tol):
            return jmax
    raise ConvergenceError(
        f"qubit levels at w={w:g} did not converge to {tol:g} B by jmax={MAX_JMAX}"
    )
