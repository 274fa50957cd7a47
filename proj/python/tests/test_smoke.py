import math

import numpy as np
import pytest

import hnls

SQRT2 = math.sqrt(2.0)


def test_pair_evaluation_is_periodic():
    p = hnls.PeriodicPair.exponential(1.0, 1.0, complex(-SQRT2, 0.0))
    g0, g1 = p.eval(0.0)
    assert g0 == pytest.approx(1.0)
    assert g1 == pytest.approx(-SQRT2)
    assert p.eval(p.tau)[0] == pytest.approx(g0, abs=1e-14)
    assert p.to_json()["type"] == "exponential"


def test_zero_pair_monodromy():
    p = hnls.PeriodicPair.zero()
    k = 0.3 + 0.2j
    z = hnls.monodromy(p, k, 1e-11)
    assert z.shape == (2, 2)
    assert abs(z[0, 0] - np.exp(-2j * k * k * p.tau)) < 1e-10
    assert abs(z[0, 1]) < 1e-12


def test_classify():
    c = hnls.classify(1.0, 1.0, complex(-SQRT2, 0.0))
    assert c["family"] == "FamilyD_minus"
    assert c["verdict"] == "EventuallyAdmissible"
    assert hnls.classify(1.0, 0.0, -1.0)["verdict"] == "NotAdmissible"


def test_build_and_dress_family_d():
    report = hnls.build(hnls.family_d_pair(1.0, 1.0))
    assert report["admissibility"]["verdict"] == "admissible"
    sol = hnls.DressedSolution.from_json(report["pole_data"])
    assert sol.n == 1
    x = np.linspace(0.0, 5.0, 6)
    t = np.linspace(0.0, 2 * sol.tau, 5)
    u = sol.grid(x, t, threads=2)
    exact = np.array([[hnls.u_family_d(1.0, 1.0, xi, tj) for tj in t] for xi in x])
    assert np.max(np.abs(u - exact) / np.abs(exact)) < 1e-8
    h1 = -1j / (1.0 + SQRT2)
    assert report["pole_data"]["residues"][0][1] == pytest.approx(h1.imag, abs=1e-9)


def test_rejected_pair_raises():
    with pytest.raises(hnls.Error):
        hnls.build(hnls.PeriodicPair.exponential(1.0, 1.0, complex(SQRT2, 0.0)))


def test_singular_point_raises():
    sol = hnls.DressedSolution([0.5j], [-10j], 1.0)
    with pytest.raises(hnls.SingularSystemError):
        sol.u(math.log(10.0), 0.0)


def test_two_pole_descriptor_matches_closed_form():
    sol = hnls.DressedSolution([1j, 2j], [-1.0, -1.0 - 1.0j], 4.0)
    for x in (0.5, 1.5, 3.0):
        for t in (0.0, 0.7, 2.0):
            assert abs(sol.u(x, t) - hnls.u_two_pole(x, t)) < 1e-9 * abs(hnls.u_two_pole(x, t))


def test_verify_report():
    sol = hnls.DressedSolution([0.5j], [complex(0.0, 1.0 - SQRT2)], 1.0)
    r = hnls.verify(sol, 0.0, 5.0, 11, 0.0, 2 * sol.tau, 9, hnls.family_d_pair(1.0, 1.0))
    assert r["pass"]
    assert r["residual_order"] > 1.9
