"""Smoke test for the gradalg_py extension.

Install first, e.g. `pip install --no-build-isolation -e crates/py`, then run
`python python/smoke_test.py`.
"""
import json

import gradalg_py as g


def main():
    assert g.hilbert("builtin:S", 6) == [1, 4, 10, 20, 35, 56, 84]
    assert len(g.groebner_basis("builtin:S", 5)) == 9

    text = "vars x y\nrel x*y - y*x\n"
    assert g.hilbert(text, 4) == [1, 2, 3, 4, 5]
    dual = g.quadratic_dual(text)
    assert g.hilbert(dual, 3) == [1, 2, 1, 0]

    coeffs, fac = g.poincare("D8", ["r", "r*rho", "r*rho^2"])
    assert coeffs == [1, 3, 3, 1] and fac == [(2, 3)]

    report = json.loads(g.verify_claims(["R_original"], 6))
    assert all(c["verdict"] != "Fail" for c in report["claims"])

    try:
        g.builtin("nonexistent")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown key accepted")
    print("ok")


if __name__ == "__main__":
    main()
