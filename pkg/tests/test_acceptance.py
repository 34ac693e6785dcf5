"""One test per acceptance criterion; each prints a PASS/FAIL line (run with -s to see them live)."""

import pytest

from netfix import acceptance


@pytest.fixture(scope="module", autouse=True)
def fresh_witnesses():
    acceptance._WITNESSES.clear()
    yield


@pytest.mark.parametrize("number", [c[0] for c in acceptance.CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in acceptance.CRITERIA])
def test_criterion(number, capsys):
    res = acceptance.run_criterion(number)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
