"""Acceptance run: one test per criterion, each with its own runtime bound.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion lines.
"""

import pytest

from curvlab.suites import run_suite

CRITERIA = [
    (1, "berger", 5.0),
    (2, "product", 1.0),
    (3, "chen-euclid", 1.0),
    (4, "chen-spaceform", 1.0),
    (5, "isoparametric", 2.0),
    (6, "hypersurface", 30.0),
    (7, "chen-inequality", 60.0),
    (8, "two-stein", 30.0),
    (9, "r6", 60.0),
    (10, "singer-thorpe", 120.0),
]


@pytest.mark.parametrize("number,suite,budget", CRITERIA, ids=[f"criterion_{c[0]:02d}_{c[1]}" for c in CRITERIA])
def test_criterion(number, suite, budget):
    res = run_suite(suite, seed=0)
    ok = res.passed and res.elapsed < budget
    print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({suite}, {res.elapsed:.2f}s of {budget:g}s)")
    for case in res.cases:
        print("   ", case.line())
    for note in res.notes:
        print("    note:", note)
    failed = [c.line() for c in res.cases if not c.ok]
    assert res.passed, failed
    assert res.elapsed < budget
