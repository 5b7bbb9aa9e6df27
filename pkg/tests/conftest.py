import pathlib
import sys

import pytest
from hypothesis import settings, strategies as st

from mealywords.machine import load_machine
from mealywords.words import normalize_up

sys.path.insert(0, str(pathlib.Path(__file__).parent))

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ROOT = pathlib.Path(__file__).resolve().parent.parent
MACHINES = ROOT / "data" / "machines"
KEYS = ROOT / "data" / "keys"


@pytest.fixture(scope="session")
def machines():
    return {p.stem: load_machine(p) for p in MACHINES.glob("*.json")}


letters2 = st.sampled_from(["0", "1"])
raw_pairs = st.tuples(st.lists(letters2, max_size=5).map(tuple),
                      st.lists(letters2, min_size=1, max_size=6).map(tuple))
up_words = raw_pairs.map(lambda uv: normalize_up(uv[0], uv[1], ("0", "1")))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
