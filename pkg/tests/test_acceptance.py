"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines, or use
``leglab acceptance``.
"""

import pytest

from leglab.acceptance import CRITERIA

_results = {}


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, len(CRITERIA) + 1)])
def test_criterion(criterion, capsys):
    res = criterion()
    _results[res.number] = res
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.details


def test_summary(capsys):
    with capsys.disabled():
        print()
        for n in sorted(_results):
            print(_results[n].line())
        print(f"{sum(r.passed for r in _results.values())}/{len(_results)} criteria pass")
