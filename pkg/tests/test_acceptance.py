"""One test per acceptance criterion.  Each result line also appears in the
"acceptance criteria" section of the pytest summary."""
import pytest

from gkmforge.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, report_line):
    result = run_criterion(number)
    print(result.line())
    report_line(result.line())
    assert result.passed, result.line()
