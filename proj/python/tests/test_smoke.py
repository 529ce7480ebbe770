import math

import numpy as np
import pytest

import ritzmaj



def example():
    # X spans e1, e2 (invariant, eigenvalues -1 and 1); Y spans e3, e2.
    a = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], dtype=float)
    x = np.eye(4)[:, [0, 1]]
    y = np.eye(4)[:, [2, 1]]
    return a, x, y


def test_angles_and_ritz():
    a, x, y = example()
    th = ritzmaj.principal_angles(x, y)
    assert th[0] == pytest.approx(math.pi / 2)
    assert th[1] == pytest.approx(0.0, abs=1e-15)
    assert ritzmaj.ritz_values(a, y) == pytest.approx([1.0, 0.0])
    assert ritzmaj.ritz_values(a, x) == pytest.approx([1.0, -1.0])
    assert ritzmaj.spread(a) == pytest.approx(2.0)


def test_complex_input():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
    th = ritzmaj.principal_angles(q[:, :2], q[:, :2])
    assert max(th) < 1e-7


def test_check_reports():
    a, x, y = example()
    reps = ritzmaj.check(a, x, y)
    assert [r["bound"] for r in reps] == ritzmaj.bound_names
    assert all(r["holds"] is not False for r in reps)
    (conj,) = ritzmaj.check(a, x, y, bounds="CONJECTURE_SIN2")
    assert conj["lhs"] == pytest.approx([1.0, 0.0])
    assert conj["rhs"] == pytest.approx([2.0, 0.0])


def test_errors():
    a, x, _ = example()
    with pytest.raises(ritzmaj.ContractError):
        ritzmaj.principal_angles(x * 2.0, x)
    assert ritzmaj.principal_angles(x * 2.0, x, orthonormalize=True) == pytest.approx([0.0, 0.0], abs=1e-12)
    with pytest.raises(ritzmaj.ContractError):
        ritzmaj.check(a, x, x, bounds=["NOPE"])
    with pytest.raises(ritzmaj.Error):
        ritzmaj.run_campaign(trials=0)


def test_majorization():
    v = ritzmaj.majorization([1, 0], [2, 0])
    assert v["holds"]
    assert not ritzmaj.majorization([2, 1], [2, 0], strong=True)["holds"]


def test_campaign_deterministic():
    r1 = ritzmaj.run_campaign(trials=50, seed=7)
    r2 = ritzmaj.run_campaign(trials=50, seed=7, jobs=2)
    assert r1 == r2
    assert r1["theorem_violations"] == 0
    assert r1["rng_algorithm"] == ritzmaj.rng_algorithm


def test_repro_and_properties():
    rec = ritzmaj.repro_sharp(2, [0.4, 0.1])
    assert rec["holds"] and rec["proven"]
    inter = ritzmaj.repro_intermediate()
    assert inter["majorant"] == pytest.approx([1.0, -2.0])
    suite = ritzmaj.properties(seed=1, trials=20)
    assert len(suite["properties"]) == 8
    assert all(p["failures"] == 0 for p in suite["properties"])
