import json
import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from isocat.pipeline import classify_corpus
from isocat.presentation import parse_group_file, realize

REPO = Path(__file__).resolve().parent.parent
CORPUS = REPO / "corpus"
DATA = Path(__file__).resolve().parent / "data"

_group_cache = {}


def load_group(path):
    path = Path(path)
    key = str(path)
    if key not in _group_cache:
        _group_cache[key] = realize(parse_group_file(path.read_text()))
    return _group_cache[key]


def corpus_group(stem):
    return load_group(CORPUS / f"{stem}.grp")


def word_element(G, word):
    """Evaluate a word like 'f1f4' over the group's declared generators."""
    gens = {i + 1: g for i, g in enumerate(G.gen_ids)}
    x = G.identity
    for tok in word.replace("f", " ").split():
        x = G.m(x, gens[int(tok)])
    return x


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS


@pytest.fixture(scope="session")
def sidecar():
    return json.loads((CORPUS / "expected.json").read_text())


@pytest.fixture(scope="session")
def full_report():
    """The complete corpus classification, shared across acceptance tests."""
    jobs = min(8, os.cpu_count() or 1)
    return classify_corpus(CORPUS, jobs=jobs)
