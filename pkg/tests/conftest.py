import importlib.resources

import pytest

from toffa import parse_model, parse_scenarios

_FIXTURES = importlib.resources.files("toffa") / "fixtures"


def fixture_text(name: str) -> str:
    return (_FIXTURES / name).read_text(encoding="utf-8")


def fixture_path(name: str) -> str:
    return str(_FIXTURES / name)


@pytest.fixture(scope="session")
def gridstix():
    return parse_model(fixture_text("gridstix.toffa"))


@pytest.fixture(scope="session")
def gridstix_reconfig():
    return parse_model(fixture_text("gridstix_reconfig.toffa"))


@pytest.fixture(scope="session")
def base_scenario():
    (s,) = parse_scenarios(fixture_text("base.scn"))
    return s


@pytest.fixture(scope="session")
def order_scenario():
    (s,) = parse_scenarios(fixture_text("reconfig.scn"))
    return s


@pytest.fixture(scope="session")
def pair_scenarios():
    return {s.id: s for s in parse_scenarios(fixture_text("pairs.scn"))}
