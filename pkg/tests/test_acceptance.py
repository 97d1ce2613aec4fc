"""Runs every acceptance criterion and prints one pass/fail line per criterion."""

import pytest

from qgrade import acceptance
from qgrade.acceptance import CRITERIA, DEFAULT_SEED, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number, DEFAULT_SEED)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


def test_criteria_are_numbered_consecutively():
    assert [c[0] for c in CRITERIA] == list(range(1, len(CRITERIA) + 1))


@pytest.mark.parametrize("seed", [1, 99])
def test_adjoin_law_other_seeds(seed):
    ok, detail = acceptance.c9_adjoin_law(seed)
    assert ok, detail


def test_brute_signature_matches_invariants():
    # Z2 x Z4 by tuple arithmetic versus the canonical invariants
    elems = [(a, b) for a in range(2) for b in range(4)]
    add = lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 4)  # noqa: E731
    from qgrade.abelgroup import AbelianGroup
    assert acceptance.brute_group_signature(elems, add, (0, 0)) == \
        acceptance._signature(AbelianGroup.parse("Z2 x Z4"))
