"""Acceptance gate: the thirteen criteria, each at its pinned tolerance.

Every criterion runs through the `verify` registry (the same code the CLI
`verify` verb executes) and prints one PASS/FAIL line per check.  Seeds are
fixed here so the run is reproducible.
"""

from nilquant.verify import CRITERIA, SUITES

SEED = 0


def _run(name):
    idx = CRITERIA.index(name)
    results = SUITES[name](seed=SEED + idx, tol_scale=1.0)
    print()
    for res in results:
        print(f"  [{idx + 1:2d}] {res.line()}   ({res.seconds:.2f}s)")
    failures = [r for r in results if not r.passed]
    assert not failures, "failed: " + "; ".join(r.line() for r in failures)


def test_criterion_01_bch_exactness():
    _run("bch")


def test_criterion_02_ccr_relations():
    _run("ccr")


def test_criterion_03_weyl_composition():
    _run("weyl")


def test_criterion_04_orthogonality():
    _run("orthogonality")


def test_criterion_05_inversion_reproducing():
    _run("inversion")


def test_criterion_06_berezin_core():
    _run("berezin-core")


def test_criterion_07_berezin_examples():
    _run("berezin-examples")


def test_criterion_08_covariance():
    _run("covariance")


def test_criterion_09_covariant_symbols():
    _run("covariant")


def test_criterion_10_pseudodiff_bridge():
    _run("pseudodiff")


def test_criterion_11_tau():
    _run("tau")


def test_criterion_12_magnetic():
    _run("magnetic")


def test_criterion_13_convergence_trend():
    _run("convergence")
