"""Shared fixtures: the small hand-built games used throughout the suite."""

import pathlib

import pytest

from gamedyn import parse_game, parse_spp

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load_game(name):
    return parse_game((FIXTURES / name).read_text())


def load_spp(name, **kw):
    return parse_spp((FIXTURES / name).read_text(), **kw)


@pytest.fixture(scope="session")
def gdis():
    return load_game("gdis.json")


@pytest.fixture(scope="session")
def fig2():
    return load_game("fig2.json")


@pytest.fixture(scope="session")
def fig3():
    return load_game("fig3.json")


@pytest.fixture(scope="session")
def fig4():
    return load_game("fig4.json")


@pytest.fixture(scope="session")
def fig5():
    return load_game("fig5.json")
