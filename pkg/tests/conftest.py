import json
from importlib import resources

import pytest

from belyi.dessin import Dessin
from belyi.perm import parse_cycles


def load_fixture_text(name: str) -> str:
    return resources.files("belyi.fixtures").joinpath(name).read_text()


@pytest.fixture(scope="session")
def s30() -> Dessin:
    """The printed degree-30 example dessin (parsed from its two rotations)."""
    return Dessin.from_json_obj(json.loads(load_fixture_text("s30.json")))


@pytest.fixture(scope="session")
def s30_printed_sigma_inf():
    return parse_cycles(load_fixture_text("s30_printed_sigma_inf.txt").strip(), degree=30)
