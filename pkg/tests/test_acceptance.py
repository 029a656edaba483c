"""The ten acceptance criteria, one pass/fail line each."""

import pytest

from apollopack.acceptance import CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda fn: fn.__name__)
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print("\n" + result.line)
    assert result.passed, result.detail
