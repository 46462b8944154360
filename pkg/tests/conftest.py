from __future__ import annotations

import random
import sys
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hodge_fusion.complex import DeltaComplex, closure, random_open_set, whitney_complex  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def fraction_rank(M) -> int:
    """Plain Gauss-Jordan over Fractions; independent of the library's elimination."""
    rows = [[Fraction(int(v)) if not isinstance(v, Fraction) else v for v in row] for row in M]
    if not rows or not rows[0]:
        return 0
    r = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def random_graph_complex(rng: random.Random, max_vertices: int = 15) -> DeltaComplex:
    n = rng.randint(2, max_vertices)
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    m = rng.randint(0, min(len(pairs), int(2.5 * n)))
    return whitney_complex(range(1, n + 1), rng.sample(pairs, m))


def random_closed_part(rng: random.Random, G: DeltaComplex) -> list[tuple[int, ...]]:
    """Either the closure of random cells or the complement of a random open set."""
    if rng.random() < 0.5:
        picks = [c for c in G.cells if rng.random() < rng.uniform(0.05, 0.5)]
        return list(closure(picks).cells) if picks else []
    U = set(random_open_set(G, rng.randint(1, max(1, len(G) // 5)), rng.randrange(2 ** 32)))
    return [c for c in G.cells if c not in U]


@lru_cache(maxsize=None)
def whitney_corpus(count: int = 1000, seed: int = 20240917) -> tuple:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        G = random_graph_complex(rng)
        out.append((G, tuple(random_closed_part(rng, G))))
    return tuple(out)


@pytest.fixture
def criterion():
    """Records one summary line per acceptance criterion."""
    def report(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
