"""Shared fixtures: parsed corpus programs and their graph sets.

Graph sets are built once per session because the string matching example
takes tens of seconds to supercompile; everything downstream (queries,
residualization, acceptance checks) reuses the same immutable structures.
"""

from __future__ import annotations

import importlib.resources

import pytest

from mrsc import mrscp, parse_program_text

EXAMPLES = ("double_append", "exp_growth", "eqbool_sym", "kmp")


def corpus_path(name: str) -> str:
    resource = importlib.resources.files("mrsc") / "corpus" / f"{name}.prog"
    return str(resource)


def load_example(name: str):
    with open(corpus_path(name), encoding="utf-8") as handle:
        program, root = parse_program_text(handle.read())
    assert root is not None
    return program, root


@pytest.fixture(scope="session")
def corpus():
    """Mapping example name -> (program, root expression)."""
    return {name: load_example(name) for name in EXAMPLES}


class _LazyGraphSets:
    """Builds each example's graph set on first request and caches it.

    Laziness matters because the kmp build takes tens of seconds; tests that
    only need the small examples should not pay for it.
    """

    def __init__(self, corpus):
        self._corpus = corpus
        self._cache = {}

    def __getitem__(self, name: str):
        if name not in self._cache:
            program, root = self._corpus[name]
            self._cache[name] = mrscp(program, root)
        return self._cache[name]


@pytest.fixture(scope="session")
def graph_sets(corpus):
    """Lazy mapping example name -> graph set (each built once per session)."""
    return _LazyGraphSets(corpus)


@pytest.fixture(scope="session")
def doub(corpus, graph_sets):
    program, root = corpus["double_append"]
    return program, root, graph_sets["double_append"]


@pytest.fixture(scope="session")
def expg(corpus, graph_sets):
    program, root = corpus["exp_growth"]
    return program, root, graph_sets["exp_growth"]


@pytest.fixture(scope="session")
def eqb(corpus, graph_sets):
    program, root = corpus["eqbool_sym"]
    return program, root, graph_sets["eqbool_sym"]


@pytest.fixture(scope="session")
def kmp(corpus, graph_sets):
    program, root = corpus["kmp"]
    return program, root, graph_sets["kmp"]
