import json
import os
import pathlib

import numpy as np
import pytest

import opframe

DATA = pathlib.Path(os.environ.get("OPFRAME_TEST_DATA", pathlib.Path(__file__).parents[1] / "data"))


def test_pencils():
    value, unbounded, _ = opframe.pencil_sup(np.diag([1.0, 0.0]), np.diag([2.0, 1.0]))
    assert not unbounded
    assert value == pytest.approx(0.5)
    _, unbounded, _ = opframe.pencil_sup(np.diag([0.0, 1.0]), np.diag([1.0, 0.0]))
    assert unbounded
    value, _, _ = opframe.pencil_inf(np.eye(2), np.diag([1.0, 0.0]))
    assert value == pytest.approx(1.0)


def test_frame_bounds_match_numpy_eigenvalues():
    rng = np.random.default_rng(0)
    ops = [rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)) for _ in range(3)]
    weights = [0.5, 1.0, 1.5]
    gram = sum(w * m @ m.conj().T for w, m in zip(weights, ops))
    eig = np.linalg.eigvalsh(gram)
    lower, upper = opframe.frame_bounds(weights, ops, 2, 2)
    assert lower == pytest.approx(eig[0], rel=1e-10)
    assert upper == pytest.approx(eig[-1], rel=1e-10)
    assert np.allclose(opframe.frame_gram(weights, ops, 2, 2), gram)


def test_k_frame_bounds():
    lower, upper, is_k = opframe.k_frame_bounds([1.0], [np.eye(2)], 2.0 * np.eye(2), 1, 2)
    assert lower == pytest.approx(0.25)
    assert upper == pytest.approx(1.0)
    assert is_k


def test_errors_are_raised():
    with pytest.raises(opframe.Error, match="DegenerateDenominator"):
        opframe.pencil_inf(np.eye(2), np.zeros((2, 2)))
    with pytest.raises(opframe.Error, match="ValidationError"):
        opframe.normalize_instance('{"format_version": 1, "algebra_dim": 0}')


def test_instance_round_trip_and_analysis():
    text = (DATA / "instances" / "diagonal_gram_1_4.json").read_text()
    canonical = opframe.normalize_instance(text)
    assert opframe.normalize_instance(canonical) == canonical
    analysis = opframe.analyze_instance(text)
    assert analysis["bounds"]["lower"] == pytest.approx(1.0)
    assert analysis["bounds"]["upper"] == pytest.approx(4.0)
    assert analysis["is_frame"] and not analysis["is_tight"]


def test_campaign_is_deterministic_and_encloses():
    a = opframe.run_campaign(seed=3, trials=5)
    b = opframe.run_campaign(seed=3, trials=5, threads=2)
    assert a == b
    assert a["summary"]["enclosure_failures"] == 0
    assert len(a["records"]) == 5 * len(opframe.theorems)


def test_cli_in_process():
    code, out, _ = opframe.run_cli(
        ["--format", "json", "certify", "bessel_sum_plus", str(DATA / "instances" / "bessel_sum_diagonal.json")]
    )
    assert code == 0
    assert json.loads(out)["certified"]["upper"] == pytest.approx(16.0)
