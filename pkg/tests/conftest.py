import itertools
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acmoves.word import Word  # noqa: E402
from acceptance_log import ACCEPTANCE_LINES  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def all_reduced_words(n, max_len):
    """Every freely reduced word over ``n`` generators up to ``max_len`` letters."""
    letters = [c for g in range(1, n + 1) for c in (g, -g)]
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for c in letters:
                if w and w[-1] == -c:
                    continue
                nxt.append(w + (c,))
        out.extend(nxt)
        frontier = nxt
    return [Word(w) for w in out]


def naive_reduce(codes):
    """Repeated pairwise cancellation until a fixed point."""
    s = list(codes)
    changed = True
    while changed:
        changed = False
        for k in range(len(s) - 1):
            if s[k] == -s[k + 1]:
                del s[k : k + 2]
                changed = True
                break
    return tuple(s)


def random_word(rng, n, max_len):
    codes = [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(0, max_len))]
    return Word(codes)


@pytest.fixture
def rng():
    return random.Random(20241018)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=str):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
