from __future__ import annotations

from pathlib import Path

import pytest

CORPUS_PATH = Path(__file__).parent / "data" / "golden_corpus.smi"


def corpus_rows() -> list[list[str]]:
    """Corpus lines as [primary, *alternate_spellings] lists."""
    rows = []
    for line in CORPUS_PATH.read_text().splitlines():
        line = line.strip()
        if line:
            rows.append(line.split("\t"))
    return rows


@pytest.fixture(scope="session")
def corpus() -> list[str]:
    return [row[0] for row in corpus_rows()]


@pytest.fixture(scope="session")
def corpus_with_alternates() -> list[list[str]]:
    return corpus_rows()
