import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from thetacodes.words import Alphabet, make_map  # noqa: E402

DATA = Path(__file__).parent / "data"

WORKED_X = frozenset({"ab", "cb", "ca", "ba", "bc", "ac"})
WORKED_Z = frozenset({"bbbbcbbbcccc", "aaaacccacccc", "aaaabaaabbbb",
                        "ccccbbbcbbbb", "ccccacccaaaa", "bbbbaaabaaaa"})


@pytest.fixture
def abc():
    return Alphabet.of("abc")


@pytest.fixture
def ab():
    return Alphabet.of("ab")


@pytest.fixture
def cycle3(abc):
    return make_map(abc, {"a": "b", "b": "c", "c": "a"}, "antimorphism")


@pytest.fixture
def swap_anti(ab):
    return make_map(ab, {"a": "b", "b": "a"}, "antimorphism")


@pytest.fixture
def swap_morph(ab):
    return make_map(ab, {"a": "b", "b": "a"}, "morphism")


@pytest.fixture
def data_dir():
    return DATA


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
