#!/usr/bin/env python3
"""Smoke test for the effint_py extension module.

Builds the cdylib if needed, loads it from the cargo target directory, and
exercises the main types and operations end to end with exact expected
values. Run from anywhere:

    python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def load_module():
    lib = None
    for profile in ("release", "debug"):
        candidate = REPO_ROOT / "target" / profile / "libeffint_py.so"
        if candidate.exists():
            lib = candidate
            break
    if lib is None:
        print("building effint-py (cargo build -p effint-py) ...")
        subprocess.run(
            ["cargo", "build", "-p", "effint-py"], cwd=REPO_ROOT, check=True
        )
        lib = REPO_ROOT / "target" / "debug" / "libeffint_py.so"
    staging = Path(tempfile.mkdtemp(prefix="effint_py_"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(lib, staging / f"effint_py{suffix}")
    sys.path.insert(0, str(staging))
    import effint_py

    return effint_py


def main():
    fx = load_module()
    checks = 0

    def check(label, got, want):
        nonlocal checks
        assert got == want, f"{label}: got {got!r}, want {want!r}"
        checks += 1

    # Polynomial arithmetic and parsing.
    f = fx.Poly("x^2*y - 3/2")
    check("degree", f.degree(), 3)
    check("eval", fx.Poly("x^2 + y").eval(["1/2", "1/4"]), "1/2")
    check("binomial", fx.Poly("(x+y)^2"), fx.Poly("x^2 + 2*x*y + y^2"))
    check("diff", str(fx.Poly("x^2*y").diff(0)), "2*x*y")
    check("homogenize", str(fx.Poly("x^2 + y").homogenize(3)), "x^2*z + y*z^2")
    try:
        fx.Poly("x^2 + * y")
        raise AssertionError("parse error expected")
    except ValueError as e:
        check("parse offset", "offset 6" in str(e), True)

    # Foliation calculus.
    diag = fx.VectorField("x", "2*y")
    check("degree_info", diag.degree_info(), (1, 1, True))
    check("divergence", str(diag.divergence()), "3")
    check("cofactor", str(diag.cofactor(fx.Poly("y"))[1]), "2")
    check("not invariant", diag.cofactor(fx.Poly("x + y")), None)
    rot = fx.VectorField("y", "-1*x")
    check("extactic", str(fx.extactic(rot, 1)), "-1*x^2 - y^2")
    check("detector", fx.detect_rational_first_integral(rot, 2), True)

    # Invariant-curve search and Darboux assembly.
    result = fx.search_invariant_curves(diag, 1)
    check("search", result["candidates"], [("x", "1"), ("y", "2")])
    regime = fx.search_invariant_curves(rot, 2)
    check("regime", regime["first_integral_regime"], 2)
    fi = fx.assemble_first_integral(diag, ["x", "y"])
    check("first integral exponents", [c[1] for c in fi["curves"]], ["2", "-1"])
    itf = fx.assemble_integrating_factor(diag, ["x", "y"])
    check("integrating factor exponents", [c[1] for c in itf["curves"]], ["-1", "-1"])
    check("budget", itf["budget_ok"], True)
    check("mu_infinity", itf["mu_infinity"], "1")
    check("residue at infinity", itf["eta0_residue_at_infinity"], "2")

    # Degree-bound profiles.
    check("bound thmA", fx.degree_bound(3, "thmA"), 24)
    check("bound a2hyp", fx.degree_bound(2, "a2hyp"), 42)

    # Sumset verification.
    check("speyer m=6", fx.verify_speyer(6)["worst_n"], 6)
    check("speyer m=4", fx.verify_speyer(4)["worst_n"], 4)
    check("speyer2 m=12", fx.verify_speyer2(12)["worst_n"], 12)
    check("min index", fx.min_sumset_index([1, 2], 5), 3)
    check("decompositions", len(fx.unit_decompositions(5)), 4)
    check("cauchy-davenport", fx.cauchy_davenport_check([[0, 1], [0, 1]], 5), True)

    # Orbifold tables.
    check("kmin 237", fx.k_min(0, b=[2, 3, 7])["k_min"], 42)
    check("kmin 444", fx.k_min(0, b=[4, 4, 4])["k_min"], 4)
    check("delta 42", fx.delta_k(0, 42, b=[2, 3, 7]), 1)
    check("sigma", fx.sigma_k(0, 4, c=1, d=[3], e=[2]), 22)
    scan = fx.scan_triples("all", 12)
    check("scan worst", scan["worst"], ((2, 3, 7), 42))
    check("scan monotone", scan["monotonicity_ok"], True)

    print(f"effint_py smoke test: {checks} checks passed")


if __name__ == "__main__":
    main()
