"""The acceptance gate: every criterion of the verification suite must
pass at its stated tolerance (all exact except the labeled Monte Carlo
confirmations, which use three-standard-error bands with fixed seeds).

Run with `pytest -s tests/test_acceptance.py` to see one line per
criterion.
"""

import pytest

from prefixpoly.verification import CRITERIA, MASTER_SEED


@pytest.mark.parametrize(
    "suite,number,title,func",
    CRITERIA,
    ids=[f"{number:02d}-{title.replace(' ', '-')}" for _, number, title, _ in CRITERIA],
)
def test_criterion(suite, number, title, func):
    ok, detail = func(MASTER_SEED)
    line = f"criterion {number:02d} [{suite}] {title}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    assert ok, line
