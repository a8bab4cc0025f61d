import math

import numpy as np
import pytest

import cosparse


def test_version():
    assert cosparse.__version__ == "0.1.0"


def test_parseval_frame():
    op = cosparse.make_random_parseval_frame(10, 8, 7)
    gram = op.omega.T @ op.omega
    assert op.parseval
    assert np.abs(gram - np.eye(8)).max() < 1e-10


def test_constants_known_point():
    inputs = cosparse.BoundInputs(p=0.5, s=100, M=600, delta_M=0.4, delta_sM=0.5, sigma=1e-4)
    c = cosparse.K_constants(inputs)
    assert math.isclose(c.K1, 0.5298902467280146, rel_tol=1e-12)
    assert math.isclose(c.K2, 0.18856806591091916, rel_tol=1e-12)
    assert math.isclose(c.C0, 3.7743665076865863, rel_tol=1e-12)
    assert math.isclose(c.C1, 0.7117249923934100, rel_tol=1e-12)


def test_exhaustive_recovery_noiseless():
    op = cosparse.make_random_parseval_frame(10, 8, 3 * 1000003 + 41)
    sig = cosparse.generate_cosparse_signal(op, 7, 3 * 1000003 + 42)
    A = cosparse.make_gaussian_measurement(6, 8, 3 * 1000003 + 43)
    prob = cosparse.build_problem(A, op, sig, 0.0, 3 * 1000003 + 44)
    res = cosparse.solve_l0_exhaustive(prob)
    assert np.linalg.norm(res.x_hat - sig.x) < 1e-8


def test_rip_sampled_below_exact():
    op = cosparse.make_random_parseval_frame(10, 8, 21)
    A = cosparse.make_gaussian_measurement(6, 8, 22)
    exact = cosparse.omega_rip_exact(A, op, 2)
    sampled = cosparse.omega_rip_sampled(A, op, 2, 20, 23)
    assert sampled.delta <= exact.delta + 1e-12


def test_invalid_inputs_raise():
    with pytest.raises(Exception):
        cosparse.BoundInputs(p=1.5, s=100, M=600)


def test_suite_single_seed():
    cfg = cosparse.SuiteConfig()
    cfg.seed_lo = 1
    cfg.seed_hi = 1
    cfg.families = ["norm", "cone", "block"]
    res = cosparse.run_suite(cfg)
    assert res.ok()
    assert "result: PASS" in res.summary_text()
