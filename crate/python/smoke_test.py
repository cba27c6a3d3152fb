"""Smoke test for the Python extension module.

Build it first with `cargo build -p elliptic-canon-py --release` (or without
--release); the module is loaded straight from the cargo target directory.
Pass a path to a built library to override the lookup.
"""

import importlib.machinery
import importlib.util
import math
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load(path=None):
    candidates = [Path(path)] if path else [
        ROOT / "target" / profile / "libelliptic_canon.so" for profile in ("release", "debug")
    ]
    found = [p for p in candidates if p.exists()]
    if not found:
        sys.exit("extension not built; run: cargo build -p elliptic-canon-py --release")
    newest = max(found, key=lambda p: p.stat().st_mtime)
    loader = importlib.machinery.ExtensionFileLoader("elliptic_canon", str(newest))
    spec = importlib.util.spec_from_file_location("elliptic_canon", newest, loader=loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    ec = load(sys.argv[1] if len(sys.argv) > 1 else None)

    lap = ec.System.laplace()
    assert lap.is_elliptic()
    assert lap.characteristic_quartic() == [1.0, 0.0, 2.0, 0.0, 1.0]
    decision = ec.energy_decision(lap)
    assert decision["exists"] is False and decision["reason"] == "Reducible"

    bitsadze = ec.System.from_complex(1, 1j, -1)
    c = ec.classify(bitsadze)
    assert c["elliptic"] and not c["strongly_elliptic"] and not c["reducible"]

    s = ec.System.from_canonical(0.2, 0.6)
    report = ec.canonicalize(s)
    assert abs(report["params"]["tau"] - 0.2) < 1e-9
    assert abs(report["params"]["sigma"] - 0.6) < 1e-9

    d = ec.energy_decision(ec.System.from_canonical(0.0, 0.5))
    assert d["exists"] and abs(d["min_eigenvalue"] - 0.125) < 1e-12
    e = ec.construct_energy_matrix(0.0, 0.5)
    assert all(e[i][j] == e[j][i] for i in range(4) for j in range(4))
    el = ec.euler_lagrange(0.0, 0.5)
    assert el.a == [[0.75, 0.0], [0.0, 0.25]], el

    wave = ec.System([[1, 0], [0, 1]], [[0, 0], [0, 0]], [[-1, 0], [0, -1]])
    assert not ec.classify(wave)["elliptic"]
    try:
        ec.energy_decision(wave)
        raise AssertionError("expected NotEllipticError")
    except ec.NotEllipticError:
        pass

    expr = ec.BoundaryExpr("re_zn(3)")
    assert expr(1.0, 1.0) == -2.0
    try:
        ec.BoundaryExpr("x + * y")
        raise AssertionError("expected ValueError")
    except ValueError as err:
        assert "byte 4" in str(err)

    rep, u, v = ec.verify(ec.System.from_canonical(0.0, 0.5), "x", "y", 7)
    assert rep["energy_exists"] and rep["consistency"]["max_difference"] < 1e-10
    h = rep["h"]
    assert len(u) == 9 and all(math.isclose(u[j][i], i * h, abs_tol=1e-12) for j in range(9) for i in range(9))
    assert all(math.isclose(v[j][i], j * h, abs_tol=1e-12) for j in range(9) for i in range(9))

    assert ec.selftest(3)["passed"]
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
