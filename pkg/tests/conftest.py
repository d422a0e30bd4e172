import json
from importlib import resources
from pathlib import Path

import pytest

from tfrunner.rational import RealBasis

ORACLES = Path(__file__).parent / "oracles" / "frozen.json"


@pytest.fixture(scope="session")
def oracle():
    return json.loads(ORACLES.read_text())


@pytest.fixture(scope="session")
def B():
    return RealBasis.from_labels(["1", "sqrt2", "sqrt3"])


def _schemas():
    root = resources.files("tfrunner") / "schemas"
    return {p.name: json.loads(p.read_text()) for p in root.iterdir() if p.name.endswith(".json")}


@pytest.fixture(scope="session")
def validate():
    jsonschema = pytest.importorskip("jsonschema")
    from referencing import Registry, Resource

    schemas = _schemas()
    registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())

    def check(obj, name):
        jsonschema.Draft202012Validator(schemas[name + ".json"], registry=registry).validate(obj)

    return check
