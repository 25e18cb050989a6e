import functools

import pytest

from fusionring import named_group, subgroup_classes
from fusionring.twisted_fusion import TwistedBurnsideRing

TEST_GROUPS = ["C6", "S3", "C2xC2", "D4", "Q8", "A4", "D6"]


@functools.lru_cache(maxsize=None)
def group(spec):
    return named_group(spec)


@functools.lru_cache(maxsize=None)
def classes(spec):
    return subgroup_classes(group(spec))


@functools.lru_cache(maxsize=None)
def ring(spec):
    """Shared twisted ring per group; its untwisted ring hangs off ``.untwisted``."""
    return TwistedBurnsideRing(group(spec), classes=classes(spec))


@pytest.fixture(params=TEST_GROUPS)
def spec(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
