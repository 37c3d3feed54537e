from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def rationals(max_num=50, max_den=12):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


@pytest.fixture(scope="session")
def domain_curves():
    from pinchuk.render import Window, preimage_curve
    return {n: preimage_curve(Window(-10, -10, 10, 10, n)) for n in (256, 512)}


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
