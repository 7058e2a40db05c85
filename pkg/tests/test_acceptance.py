"""Acceptance criteria 1-11; prints one PASS/FAIL line per criterion."""

import pytest

from realbrauer.acceptance import CRITERIA, run_criterion


@pytest.fixture(scope="module")
def results():
    out = {}
    yield out
    print()
    for number in sorted(out):
        print(out[number].line(timing=True))


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}_{c[1].replace(' ', '_')}" for c in CRITERIA])
def test_criterion(number, results, capsys):
    r = run_criterion(number)
    results[number] = r
    with capsys.disabled():
        print(f"\n{r.line(timing=True)}")
    assert r.ok, "\n".join(r.details)
