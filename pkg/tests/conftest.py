from __future__ import annotations

import pathlib

import pytest

from uniprior.graph import InformationFlowGraph, load_ifg

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fixture_graph(name: str) -> InformationFlowGraph:
    return load_ifg(FIXTURES / f"{name}.ifg")


FIXTURE_NAMES = [
    "fix_a",
    "fix_b",
    "fix_c1",
    "fix_c2",
    "fix_c3",
    "fix_c4",
    "fix_c5",
    "fix_e",
    "fix_f",
    "fix_g",
]


@pytest.fixture(scope="session")
def graphs() -> dict[str, InformationFlowGraph]:
    return {name: fixture_graph(name) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def fix_a():
    return fixture_graph("fix_a")


@pytest.fixture(scope="session")
def fix_b():
    return fixture_graph("fix_b")


@pytest.fixture(scope="session")
def fix_e():
    return fixture_graph("fix_e")


@pytest.fixture(scope="session")
def fix_f():
    return fixture_graph("fix_f")


@pytest.fixture(scope="session")
def fix_g():
    return fixture_graph("fix_g")
