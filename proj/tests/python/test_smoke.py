"""Smoke tests for the python bindings (plain asserts, no test framework)."""

import json
import math
import os
import tempfile

import lplsim


def test_version():
    assert lplsim.__version__ == "0.1.0"


def test_so3_operations():
    s = lplsim.make_so3()
    b = s.bracket([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    assert max(abs(b[0]), abs(b[1]), abs(b[2] - 1.0)) < 1e-15
    a = s.ad_star([0.0, 0.0, 1.0], [1.0, 0.0, 0.0])
    assert max(abs(a[0]), abs(a[1] - 1.0), abs(a[2])) < 1e-15
    vals = dict(s.casimir_values([3.0, 4.0, 0.0]))
    assert abs(vals["Pi_sq"] - 25.0) < 1e-12


def test_double_bracket_dissipates():
    s = lplsim.make_so3([[1.0, 0, 0], [0, 2.0, 0], [0, 0, 3.0]])
    mu = [1.0, 1.0, 1.0]
    grad = [1.0, 0.5, 1.0 / 3.0]
    d = s.double_bracket_drift(grad, mu, 0.7)
    assert sum(g * x for g, x in zip(grad, d)) <= 1e-14


def test_brownian_determinism():
    a = lplsim.brownian_increments(2, 0.0, 1.0, 100, seed=5)
    b = lplsim.brownian_increments(2, 0.0, 1.0, 100, seed=5)
    assert a == b
    assert all(abs(dt - 0.01) < 1e-15 for dt in a[0])  # clock component


def test_vortex_energy():
    h = lplsim.vortex_hamiltonian(
        1.0, [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]], [1.0, 1.0]
    )
    assert abs(h + math.log(2.0) / (4 * math.pi)) < 1e-12


def test_harmonic_gram_identity():
    g = lplsim.harmonic_gram(2, 1.0)
    n = len(g)
    worst = max(
        abs(g[i][j] - (1.0 if i == j else 0.0)) for i in range(n) for j in range(n)
    )
    assert worst < 1e-6


def test_run_from_preset():
    cfg = lplsim.preset("rigidbody-dissipative")
    cfg["noise"]["t_final"] = 1.0  # keep the smoke test quick
    with tempfile.TemporaryDirectory() as out:
        lplsim.run(cfg, out)
        with open(os.path.join(out, "summary.json")) as f:
            summary = json.load(f)
        assert summary["config"]["system"] == "rigid_body"
        assert summary["invariant_report"]["energy"]["monotone_nonincreasing"]
        assert os.path.exists(os.path.join(out, "trajectory.csv"))


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
