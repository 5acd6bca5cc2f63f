import json
import math

import numpy as np
import pytest

import qavg


def test_anharmonic_coefficients():
    exp = qavg.expand(qavg.anharmonic(60), 2)
    for j in range(5):
        c = exp.eigenvalue_polynomial(j)
        assert c[0] == j + 0.5
        assert c[1] == pytest.approx(3 / 8 * (j * j + j) + 3 / 16, abs=1e-12)
        assert c[2] == pytest.approx(-(17 / 64 * j**3 + 51 / 128 * j**2 + 59 / 128 * j + 21 / 128), abs=1e-12)


def test_henon_heiles_ground_state():
    model = qavg.henon_heiles(14, 0.1, 0.1)
    assert model.dim == 15 * 16 // 2
    assert model.levels[2] == (3.0, 3)
    exp = qavg.expand(model, 2)
    level, slot, energy, _ = exp.states(1.0)[0]
    assert (level, slot) == (0, 0)
    assert energy == pytest.approx(1 - (11 / 8 + 5 / 24 + 3 / 4) * 0.01, abs=1e-13)
    assert np.abs(exp.k(1)).max() < 1e-15


def test_matrices_are_numpy():
    model = qavg.anharmonic(20)
    h1 = model.h(1)
    assert isinstance(h1, np.ndarray)
    assert h1.shape == (21, 21)
    assert np.allclose(h1, h1.conj().T)
    phi = qavg.expand(model, 2).phi_truncated(0.0)
    assert np.array_equal(phi, np.eye(21))


def test_exact_eigenvalues_two_level():
    model = qavg.parse_model(
        '{"h0_diagonal": [0, 1], "perturbations": {"1": [[[0,0],[1,0]], [[1,0],[0,0]]]}}'
    )
    eps = 0.1
    r = math.sqrt(1 + 4 * eps * eps)
    assert np.allclose(qavg.exact_eigenvalues(model, eps), [(1 - r) / 2, (1 + r) / 2], atol=1e-14)


def test_reports():
    report = qavg.run_verify(seed=42, dim=8, levels=3, order=2, trials=3)
    assert report.passed
    doc = json.loads(report.render("json"))
    assert doc["command"] == "verify"
    assert all(c["passed"] for c in doc["checks"])
    assert report.render("json") == qavg.run_verify(seed=42, dim=8, levels=3, order=2, trials=3).render("json")
    assert qavg.run_compare("anharmonic", orders=[2]).passed
    assert "PASSED" in qavg.run_example("anharmonic").render("table")


def test_errors():
    with pytest.raises(qavg.InputError):
        qavg.parse_model('{"h0_diagonal": [0, 1], "perturbations": {"1": [[[0,0],[0.3,0]], [[0.1,0],[0,0]]]}}')
    with pytest.raises(ValueError):
        qavg.expand(qavg.anharmonic(20), 13)
    with pytest.raises(qavg.InputError):
        qavg.run_example("duffing")
