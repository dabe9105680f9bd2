"""One test per acceptance criterion; each prints its pass/fail line."""
import pytest

from toda_stability import acceptance


@pytest.mark.parametrize("check", acceptance.ALL, ids=[f.__name__ for f in acceptance.ALL])
def test_criterion(check, capsys):
    c = check()
    with capsys.disabled():
        print("\n" + c.line())
    assert c.passed, c.details
