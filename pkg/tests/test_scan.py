import numpy as np
import pytest

from pendular_sim.entanglement import tripartite_negativity
from pendular_sim.errors import ConfigError, ConvergenceError
from pendular_sim.manybody import ChainGeometry, build_hamiltonian
from pendular_sim.milburn import MilburnPropagator, dephased_limit, evolve
from pendular_sim.pendular import solve_qubit
from pendular_sim.scan import (
    CSV_HEADER,
    CSV_MAGIC,
    InitialStateSpec,
    ScanConfig,
    ScanRecord,
    initial_state,
    long_time_sweep,
    long_time_value,
    long_time_values,
    parse_axis,
    run_scan,
    write_csv,
)

GHZ, W, SEP = (InitialStateSpec(k) for k in ("ghz", "w", "sep001"))
STATE_A = InitialStateSpec.amplitudes(np.sqrt(0.5), np.sqrt(0.5))
STATE_C = InitialStateSpec.amplitudes(1.0, 0.0)


def neg_config(initial=W, **kw) -> ScanConfig:
    base = dict(n=3, initial=initial, gamma=(0.5,), w=(6.0,), omega=(0.5,), times=(0.0, 1.0), observable="negativity3")
    base.update(kw)
    return ScanConfig(**base)


def fid_config(initial=STATE_A, **kw) -> ScanConfig:
    base = dict(n=2, initial=initial, gamma=(0.05,), w=(6.0,), omega=(1.0,), times=(0.0, 1.0), observable="fidelity")
    base.update(kw)
    return ScanConfig(**base)


def test_initial_states():
    ghz = initial_state(GHZ, 3)
    expected = np.zeros((8, 8))
    expected[np.ix_([0, 7], [0, 7])] = 0.5
    np.testing.assert_allclose(ghz, expected, atol=1e-15)
    w = initial_state(W, 3)
    expected = np.zeros((8, 8))
    expected[np.ix_([1, 2, 4], [1, 2, 4])] = 1 / 3
    np.testing.assert_allclose(w, expected, atol=1e-15)
    np.testing.assert_array_equal(initial_state(STATE_C, 2), np.diag([0, 1, 0, 0]))
    with pytest.raises(ConfigError):
        initial_state(GHZ, 2)


def test_initial_spec_parsing():
    assert InitialStateSpec.parse("GHZ") == GHZ
    spec = InitialStateSpec.parse("0.866025403784,0.5")
    assert abs(spec.a) ** 2 + abs(spec.b) ** 2 == pytest.approx(1, abs=1e-15)
    assert spec.label == "a=0.866025403784;b=0.5"
    for bad in ("bell", "1,1", "0.5", "x,y"):
        with pytest.raises(ConfigError):
            InitialStateSpec.parse(bad)
    with pytest.raises(ConfigError):
        InitialStateSpec.amplitudes(1.0, 0.1)


def test_parse_axis():
    assert parse_axis("0.5", "w") == (0.5,)
    assert parse_axis("0:1:3", "w") == (0.0, 0.5, 1.0)
    assert parse_axis("0:0:1", "t", allow_single_count=True) == (0.0,)
    for bad in ("0:1:1", "0:1", "a", "0:inf:3"):
        with pytest.raises(ConfigError):
            parse_axis(bad, "w")


def test_config_validation():
    with pytest.raises(ConfigError, match="at most one"):
        neg_config(gamma=(0.1, 0.2), w=(1.0, 2.0))
    with pytest.raises(ConfigError, match="n = 3"):
        ScanConfig(n=2, initial=STATE_A, gamma=(0.1,), w=(1.0,), omega=(1.0,), observable="negativity3")
    with pytest.raises(ConfigError, match="n = 2"):
        neg_config(observable="fidelity")
    with pytest.raises(ConfigError):
        neg_config(observable="concurrence")
    with pytest.raises(ConfigError):
        neg_config(gamma=(-0.1,))
    with pytest.raises(ConfigError, match="rho_in"):
        neg_config(rho_in="psi-")
    assert neg_config(omega=(0.0, 1.0)).swept_axis == "omega"


def test_scan_row_order():
    config = neg_config(gamma=(0.0, 0.1, 0.2), times=(0.0, 1.0, 2.0))
    records = run_scan(config)
    assert [(r.gamma, r.t) for r in records] == [(g, t) for g in (0.0, 0.1, 0.2) for t in (0.0, 1.0, 2.0)]


def test_scan_matches_direct_pipeline():
    config = neg_config(initial=GHZ, omega=(0.5, 2.0), times=(0.0, 3.0))
    records = run_scan(config)
    for rec in records:
        H = build_hamiltonian(solve_qubit(rec.w), ChainGeometry(3, rec.omega))
        rho = evolve(initial_state(GHZ, 3), MilburnPropagator.from_hamiltonian(H, rec.gamma), rec.t)
        assert rec.value == pytest.approx(tripartite_negativity(rho), abs=1e-12)


def test_ghz_without_decoherence_stays_entangled():
    records = run_scan(neg_config(initial=GHZ, gamma=(0.0, 0.5), times=tuple(np.linspace(0, 20, 81))))
    at_zero = [r.value for r in records if r.gamma == 0.0]
    assert min(at_zero) > 0.95


def test_w_state_at_t0():
    (rec,) = run_scan(neg_config(times=(0.0,)))
    assert rec.value == pytest.approx(2 * np.sqrt(2) / 3, abs=1e-6)


@pytest.mark.parametrize("initial", [STATE_A, STATE_C])
def test_uncoupled_fidelity_scan_is_one(initial):
    records = run_scan(fid_config(initial=initial, omega=(0.0,), times=tuple(np.linspace(0, 20, 21))))
    assert all(abs(r.value - 1) <= 1e-9 for r in records)


def test_rho_in_override():
    b = InitialStateSpec.amplitudes(np.sqrt(3) / 2, 0.5)
    default = run_scan(fid_config(initial=b, omega=(0.0,), times=(0.0,)))[0].value
    singlet = run_scan(fid_config(initial=b, omega=(0.0,), times=(0.0,), rho_in="psi-"))[0].value
    assert default == pytest.approx(0.90625, abs=1e-9)
    assert singlet == pytest.approx(0.875, abs=1e-9)


def test_purity_and_populations():
    purity = run_scan(neg_config(observable="purity", times=(0.0, 5.0)))
    assert purity[0].value == pytest.approx(1, abs=1e-12)
    assert purity[1].value < 1
    pops = run_scan(neg_config(initial=SEP, observable="populations", times=(0.0,)))
    assert [r.observable for r in pops] == [f"population_{k:03b}" for k in range(8)]
    assert [r.value for r in pops] == pytest.approx([0, 1, 0, 0, 0, 0, 0, 0], abs=1e-12)


def test_long_time_value_matches_dephased_oracle():
    config = neg_config(initial=SEP)
    H = build_hamiltonian(solve_qubit(6.0), ChainGeometry(3, 0.5))
    rho_inf = dephased_limit(initial_state(SEP, 3), MilburnPropagator.from_hamiltonian(H, 0.5))
    assert long_time_value(config) == pytest.approx(tripartite_negativity(rho_inf), abs=1e-9)


def test_long_time_value_matches_late_scan():
    config = neg_config(initial=W, gamma=(0.5,))
    late = run_scan(neg_config(initial=W, times=(5e4,)))[0].value
    assert long_time_value(config) == pytest.approx(late, abs=1e-6)


def test_long_time_ghz_decays_to_zero():
    assert long_time_value(neg_config(initial=GHZ)) < 0.01


def test_long_time_rejections():
    with pytest.raises(ConfigError, match="gamma > 0"):
        long_time_value(neg_config(gamma=(0.0,)))
    with pytest.raises(ConfigError, match="fixed"):
        long_time_value(neg_config(w=(1.0, 2.0)))
    with pytest.raises(ConfigError, match="multi-valued"):
        long_time_value(neg_config(observable="populations"))
    pops = long_time_values(neg_config(observable="populations"))
    assert sum(v for _, v in pops) == pytest.approx(1, abs=1e-12)


def test_long_time_sweep():
    sweep = long_time_sweep(neg_config(w=(1.0, 6.0)))
    assert [v for v, _ in sweep] == [1.0, 6.0]
    assert sweep[1][1] == pytest.approx(long_time_value(neg_config(w=(6.0,))))


def test_convergence_failure_names_grid_point():
    with pytest.raises(ConvergenceError, match="w=1e\\+07"):
        run_scan(neg_config(w=(1e7,), times=(0.0,)))


def test_write_csv(tmp_path):
    rec = ScanRecord("w", 0.5, 6.0, 0.5, np.pi / 2, 0.0, "negativity3", 2 * np.sqrt(2) / 3)
    path = tmp_path / "one.csv"
    write_csv([rec], path)
    text = path.read_text()
    assert text == (
        f"{CSV_MAGIC}\n"
        + ",".join(CSV_HEADER)
        + "\n"
        + "w,0.5,6,0.5,1.57079632679,0,negativity3,0.942809041582\n"
    )


def test_write_csv_grid_and_errors(tmp_path):
    records = run_scan(neg_config(gamma=(0.1, 0.2), times=(0.0, 1.0)))
    path = tmp_path / "grid.csv"
    write_csv(records, path)
    lines = path.read_text().split("\n")
    assert lines[-1] == ""
    assert len(lines[2:-1]) == 4
    assert all(line == line.rstrip() for line in lines)
    empty = tmp_path / "empty.csv"
    with pytest.raises(ValueError, match="empty"):
        write_csv([], empty)
    assert not empty.exists()
    with pytest.raises(OSError, match="missing"):
        write_csv(records, tmp_path / "missing" / "x.csv")


def test_negative_zero_is_normalized(tmp_path):
    rec = ScanRecord("w", 0.0, 0.0, 0.0, 0.0, 0.0, "purity", -0.0)
    write_csv([rec], tmp_path / "z.csv")
    assert "-0" not in (tmp_path / "z.csv").read_text()


def test_parallel_matches_serial():
    config = neg_config(initial=GHZ, w=tuple(np.linspace(0.5, 12, 5)), times=tuple(np.linspace(0, 5, 11)))
    assert run_scan(config, workers=3) == run_scan(config, workers=1)
