import math

import numpy as np
import pytest

import pykerrpair as kp


def blockade_params():
    p = kp.ModelParams()
    p.set_delta(0.97)
    p.set_u(1.0)
    p.j_hop = 0.75
    return p


def test_ladder_operators_match_numpy():
    a = kp.destroy(4)
    expected = np.diag(np.sqrt([1.0, 2.0, 3.0]), k=1)
    assert np.allclose(a, expected)
    n = kp.create(4) @ kp.destroy(4)
    assert np.allclose(n, np.diag([0.0, 1.0, 2.0, 3.0]))


def test_invalid_dimension_raises_value_error():
    with pytest.raises(ValueError):
        kp.destroy(1)


def test_steady_state_blockade_g2():
    p = blockade_params()
    space = kp.HilbertSpec.two_mode(5)
    liou = kp.liouvillian(kp.build_effective_hamiltonian(p, space),
                          kp.collapse_operators(p, space))
    rho = kp.steady_state(liou)
    g2 = kp.g2_auto(rho, 0, space)
    assert 0.05 < g2 < 0.3
    rep = kp.correlation_report(rho, space)
    assert rep.g2_a1 == pytest.approx(g2)
    assert rep.csi > 1.0  # nonclassical cross correlations at the dip


def test_decoupled_cavity_closed_form():
    p = kp.ModelParams()
    p.j_hop = 0.0
    p.e1 = 0.01
    p.e2 = 0.0
    p.set_u(1.0)
    p.set_delta(1.0)
    amps = kp.steady_amplitudes(p)
    g = 2.0 * abs(amps.c20) ** 2 / abs(amps.c10) ** 4
    assert g == pytest.approx(0.2, rel=1e-9)


def test_vacuum_correlations_are_undefined():
    space = kp.HilbertSpec.two_mode(5)
    vac = kp.DensityMatrix.vacuum(space)
    with pytest.raises(RuntimeError):
        kp.g2_auto(vac, 0, space)


def test_bell_state_chsh_and_fidelity():
    space = kp.HilbertSpec.two_mode(3)
    phi = kp.DensityMatrix.pure(kp.bell_state(kp.BellLabel.PhiPlus, space))
    assert kp.chsh_from_state(phi, space) == pytest.approx(2.0 * math.sqrt(2.0))
    vac = kp.DensityMatrix.vacuum(space)
    assert kp.bell_fidelity(vac, kp.BellLabel.PhiPlus, space) == pytest.approx(0.5)


def test_small_sweep_round_trip(tmp_path):
    spec = kp.SweepSpec()
    spec.fixed = blockade_params()
    spec.engine = kp.Engine.Analytic
    ax = kp.SweepAxis()
    ax.name = "delta"
    ax.min = -1.0
    ax.max = 1.0
    ax.points = 5
    spec.axes = [ax]
    spec.outputs = ["g2_a1", "csi"]
    spec.workers = 1

    res = kp.run_sweep(spec)
    rows = res.rows()
    assert len(rows) == 5
    assert rows[0]["engine"] == "analytic"
    assert all(r["valid"] for r in rows)

    path = tmp_path / "sweep.csv"
    kp.write_csv(res, path)
    back = kp.read_csv(path)
    assert back.rows() == rows
