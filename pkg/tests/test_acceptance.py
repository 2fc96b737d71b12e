"""One test per acceptance criterion; each prints a single pass/fail line."""

import pytest

from incidence.acceptance import CRITERIA, _Cache


@pytest.fixture(scope="module")
def cache():
    return _Cache()


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{k}" for k in range(1, 12)])
def test_criterion(cache, criterion, capsys):
    res = criterion(cache)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, "\n".join(res.failures)
