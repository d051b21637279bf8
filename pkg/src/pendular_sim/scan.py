"""Parameter sweeps over (gamma, w, omega, t) and CSV output.

A scan sweeps at most one of gamma, w and omega; time is always the inner
axis. Rows are emitted in grid order (swept value outer, time inner) no matter
how many worker processes evaluate them.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .entanglement import tripartite_negativity
from .errors import ConfigError, ConvergenceError
from .manybody import ChainGeometry, SystemHamiltonian, build_hamiltonian
from .milburn import MilburnPropagator, dephased_limit, evolve_series, pure_state, purity
from .pendular import DEFAULT_JMAX, converge_jmax, solve_qubit
from .teleport import PHI_PLUS, PSI_MINUS, teleport_fidelity

CSV_MAGIC = "# pendular-sim v1"
CSV_HEADER = ("initial", "gamma", "w", "omega", "alpha", "t", "observable", "value")
OBSERVABLES = ("negativity3", "fidelity", "purity", "populations")
BOUNDED_OBSERVABLES = ("negativity3", "fidelity")
BOUND_TOL = 1e-9
ESCALATE_ABOVE_W = 10.0
RHO_IN_CHOICES = ("initial", "psi-", "phi+")


@dataclass(frozen=True)
class InitialStateSpec:
    """Named three-qubit state (ghz, w, sep001) or two-qubit ``a|01> + b|10>``."""

    kind: str
    a: complex | None = None
    b: complex | None = None

    def __post_init__(self):
        if self.kind in ("ghz", "w", "sep001"):
            return
        if self.kind != "ab":
            raise ConfigError(f"unknown initial state kind {self.kind!r}")
        if self.a is None or self.b is None:
            raise ConfigError("amplitude form needs both a and b")
        norm = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm - 1) > 1e-12:
            raise ConfigError(f"|a|^2 + |b|^2 = {norm!r}, expected 1")

    @classmethod
    def amplitudes(cls, a: complex, b: complex) -> InitialStateSpec:
        return cls("ab", a, b)

    @classmethod
    def parse(cls, text: str) -> InitialStateSpec:
        """Parse ``ghz``, ``w``, ``sep001`` or ``a,b`` (amplitudes as floats)."""
        text = text.strip()
        if text.lower() in ("ghz", "w", "sep001"):
            return cls(text.lower())
        parts = text.split(",")
        if len(parts) != 2:
            raise ConfigError(f"cannot parse initial state {text!r}")
        try:
            a, b = (float(p) for p in parts)
        except ValueError:
            raise ConfigError(f"cannot parse amplitudes in {text!r}") from None
        # Amplitudes typed with limited precision get renormalized.
        norm = math.hypot(a, b)
        if norm == 0 or abs(norm - 1) > 1e-6:
            raise ConfigError(f"amplitudes {a}, {b} are not normalized")
        return cls.amplitudes(a / norm, b / norm)

    @property
    def n(self) -> int:
        return 2 if self.kind == "ab" else 3

    @property
    def label(self) -> str:
        if self.kind == "ab":
            return f"a={_fmt_amplitude(self.a)};b={_fmt_amplitude(self.b)}"
        return self.kind


def initial_state(spec: InitialStateSpec, n: int) -> np.ndarray:
    if spec.n != n:
        raise ConfigError(f"initial state {spec.label!r} is for {spec.n} qubits, not {n}")
    psi = np.zeros(2**n, dtype=complex)
    if spec.kind == "ghz":
        psi[[0, 7]] = 1 / np.sqrt(2)
    elif spec.kind == "w":
        psi[[1, 2, 4]] = 1 / np.sqrt(3)
    elif spec.kind == "sep001":
        psi[1] = 1
    else:
        psi[1], psi[2] = spec.a, spec.b
    return np.outer(psi, psi.conj())


def parse_axis(text: str, name: str, allow_single_count: bool = False) -> tuple[float, ...]:
    """Parse ``v`` or ``lo:hi:count`` into grid values (inclusive endpoints)."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            values = (float(parts[0]),)
        elif len(parts) == 3:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
            min_count = 1 if allow_single_count else 2
            if count < min_count:
                raise ConfigError(f"--{name}: range needs count >= {min_count}, got {count}")
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ConfigError(f"--{name}: range bounds must be finite")
            values = tuple(float(v) for v in np.linspace(lo, hi, count))
        else:
            raise ConfigError(f"--{name}: expected 'value' or 'lo:hi:count', got {text!r}")
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"--{name}: cannot parse {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise ConfigError(f"--{name}: values must be finite")
    return values


@dataclass(frozen=True)
class ScanConfig:
    n: int
    initial: InitialStateSpec
    gamma: tuple[float, ...]
    w: tuple[float, ...]
    omega: tuple[float, ...]
    times: tuple[float, ...] = tuple(float(t) for t in np.linspace(0.0, 20.0, 400))
    observable: str = "negativity3"
    alpha: float = np.pi / 2
    jmax: int = DEFAULT_JMAX
    rho_in: str = "initial"

    def __post_init__(self):
        for name in ("gamma", "w", "omega", "times"):
            values = getattr(self, name)
            if isinstance(values, (int, float)):
                values = (float(values),)
            values = tuple(float(v) for v in values)
            if not values:
                raise ConfigError(f"{name} grid is empty")
            if not all(math.isfinite(v) for v in values):
                raise ConfigError(f"{name} values must be finite")
            object.__setattr__(self, name, values)
        if self.n not in (2, 3):
            raise ConfigError(f"n must be 2 or 3, got {self.n}")
        if self.observable not in OBSERVABLES:
            raise ConfigError(f"unknown observable {self.observable!r}; choose from {OBSERVABLES}")
        if self.observable == "negativity3" and self.n != 3:
            raise ConfigError("negativity3 scans need n = 3")
        if self.observable == "fidelity" and self.n != 2:
            raise ConfigError("fidelity scans need n = 2")
        if self.initial.n != self.n:
            raise ConfigError(f"initial state {self.initial.label!r} does not fit n = {self.n}")
        if self.rho_in not in RHO_IN_CHOICES:
            raise ConfigError(f"unknown rho_in {self.rho_in!r}; choose from {RHO_IN_CHOICES}")
        if self.rho_in != "initial" and self.observable != "fidelity":
            raise ConfigError("rho_in only applies to fidelity scans")
        swept = [name for name in ("gamma", "w", "omega") if len(getattr(self, name)) > 1]
        if len(swept) > 1:
            raise ConfigError(f"at most one of gamma/w/omega may be a range, got {swept}")
        if min(self.gamma) < 0 or min(self.w) < 0 or min(self.omega) < 0:
            raise ConfigError("gamma, w and omega must be >= 0")
        if min(self.times) < 0:
            raise ConfigError("times must be >= 0")
        if not 0 <= self.alpha <= np.pi:
            raise ConfigError(f"alpha must lie in [0, pi], got {self.alpha}")
        if self.jmax < 2:
            raise ConfigError(f"jmax must be >= 2, got {self.jmax}")

    @property
    def swept_axis(self) -> str | None:
        for name in ("gamma", "w", "omega"):
            if len(getattr(self, name)) > 1:
                return name
        return None

    def grid_points(self) -> list[tuple[float, float, float]]:
        """(gamma, w, omega) for each outer grid row, in emission order."""
        return [(g, w, o) for g in self.gamma for w in self.w for o in self.omega]


@dataclass(frozen=True)
class ScanRecord:
    initial: str
    gamma: float
    w: float
    omega: float
    alpha: float
    t: float
    observable: str
    value: float

    def csv_row(self) -> list[str]:
        return [
            self.initial,
            _fmt(self.gamma),
            _fmt(self.w),
            _fmt(self.omega),
            _fmt(self.alpha),
            _fmt(self.t),
            self.observable,
            _fmt(self.value),
        ]


def _fmt(x) -> str:
    if isinstance(x, complex) or np.iscomplexobj(x):
        return f"{complex(x).real:.12g}{complex(x).imag:+.12g}j"
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def _fmt_amplitude(x) -> str:
    x = complex(x)
    return _fmt(x.real) if x.imag == 0 else _fmt(x)


def qubit_for(w: float, jmax: int):
    """Qubit data at ``w``, escalating the truncation for strong fields."""
    if w > ESCALATE_ABOVE_W:
        # Absolute rounding noise in the energies grows with w.
        jmax = max(jmax, converge_jmax(w, tol=1e-10 * max(1.0, w)))
    return solve_qubit(w, jmax)


def system_for(config: ScanConfig, w: float, omega: float) -> SystemHamiltonian:
    try:
        q = qubit_for(w, config.jmax)
    except ConvergenceError as exc:
        raise ConvergenceError(f"grid point w={w:g}, omega={omega:g}: {exc}") from None
    return build_hamiltonian(q, ChainGeometry(config.n, omega, config.alpha))


def _rho_in(config: ScanConfig, rho0: np.ndarray) -> np.ndarray:
    if config.rho_in == "psi-":
        return pure_state(PSI_MINUS)
    if config.rho_in == "phi+":
        return pure_state(PHI_PLUS)
    return rho0


def observe(config: ScanConfig, rho: np.ndarray, rho0: np.ndarray) -> list[tuple[str, float]]:
    """(observable label, value) pairs for one state."""
    obs = config.observable
    if obs == "negativity3":
        values = [(obs, tripartite_negativity(rho))]
    elif obs == "fidelity":
        values = [(obs, teleport_fidelity(rho, _rho_in(config, rho0)))]
    elif obs == "purity":
        values = [(obs, purity(rho))]
    else:
        pops = np.real(np.diag(rho))
        values = [(f"population_{k:0{config.n}b}", float(p)) for k, p in enumerate(pops)]
    for label, v in values:
        if not math.isfinite(v):
            raise RuntimeError(f"{label} evaluated to non-finite value {v}")
        if obs in BOUNDED_OBSERVABLES and not -BOUND_TOL <= v <= 1 + BOUND_TOL:
            raise RuntimeError(f"{label} = {v!r} outside [0, 1]")
    return values


def _evaluate_row(config: ScanConfig, point: tuple[float, float, float]) -> list[ScanRecord]:
    gamma, w, omega = point
    H = system_for(config, w, omega)
    rho0 = initial_state(config.initial, config.n)
    states = evolve_series(rho0, MilburnPropagator.from_hamiltonian(H, gamma), config.times)
    label = config.initial.label
    records = []
    for t, rho in zip(config.times, states):
        for obs, value in observe(config, rho, rho0):
            records.append(ScanRecord(label, gamma, w, omega, config.alpha, t, obs, value))
    return records


def run_scan(config: ScanConfig, workers: int = 1) -> list[ScanRecord]:
    """Evaluate every grid point; output order is independent of ``workers``."""
    points = config.grid_points()
    if workers <= 1 or len(points) == 1:
        rows = [_evaluate_row(config, p) for p in points]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_row, [config] * len(points), points))
    return [rec for row in rows for rec in row]


def _fixed_point(config: ScanConfig) -> tuple[float, float, float]:
    if config.swept_axis is not None:
        raise ConfigError(f"long-time values need fixed parameters; {config.swept_axis} is a range")
    (point,) = config.grid_points()
    if point[0] <= 0:
        raise ConfigError("long-time values need gamma > 0; with gamma = 0 the state never settles")
    return point


def long_time_values(config: ScanConfig) -> list[tuple[str, float]]:
    """Observables evaluated on the dephased infinite-time state."""
    gamma, w, omega = _fixed_point(config)
    H = system_for(config, w, omega)
    rho0 = initial_state(config.initial, config.n)
    rho_inf = dephased_limit(rho0, MilburnPropagator.from_hamiltonian(H, gamma))
    return observe(config, rho_inf, rho0)


def long_time_value(config: ScanConfig) -> float:
    if config.observable == "populations":
        raise ConfigError("populations are multi-valued; use long_time_values")
    ((_, value),) = long_time_values(config)
    return value


def long_time_sweep(config: ScanConfig) -> list[tuple[float, float]]:
    """Long-time value at each value of the swept axis, as (axis value, value) pairs."""
    axis = config.swept_axis
    if axis is None:
        return [(float("nan"), long_time_value(config))]
    out = []
    for v in getattr(config, axis):
        out.append((v, long_time_value(replace(config, **{axis: (v,)}))))
    return out


def write_csv(records: Sequence[ScanRecord], destination: str | Path) -> None:
    """Write records in the versioned CSV layout.

    Raises:
        ValueError: if ``records`` is empty (no file is created).
        OSError: if the destination cannot be written; the message names the path.
    """
    if not records:
        raise ValueError("refusing to write an empty scan")
    path = Path(destination)
    try:
        with open(path, "w", newline="") as fh:
            fh.write(CSV_MAGIC + "\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for rec in records:
                writer.writerow(rec.csv_row())
    except OSError as exc:
        raise OSError(f"cannot write scan output to {path}: {exc.strerror or exc}") from exc
