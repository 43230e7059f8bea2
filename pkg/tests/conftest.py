import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hdetkit.cli import read_source
from hdetkit.presentation import parse_presentation
from hdetkit.report import run_pipeline

REGULAR = ["poly1", "poly2", "poly3", "qplane2", "qplane_m1", "qplane3", "qspace3", "jordan", "cubic", "twisted_cubic", "weighted"]
DEGREE_ONE = [n for n in REGULAR if n != "weighted"]


@functools.lru_cache(maxsize=None)
def load(name):
    return parse_presentation(read_source(name))


@functools.lru_cache(maxsize=None)
def pipeline(name):
    """Objects of a full pipeline run at the default caps (cached per session)."""
    return run_pipeline(load(name))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)


@pytest.fixture
def qq():
    from hdetkit.field import QQ

    return QQ
