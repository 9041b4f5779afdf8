import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from nkcontact.engine import analyze
from nkcontact.geomfile import load_manifold_file
from nkcontact.scalar import parse_scalar

DATA = Path(__file__).resolve().parents[1] / "src" / "nkcontact" / "data"
ORACLE = Path(__file__).resolve().parent / "data" / "oracle_family.json"

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def family_doc(a=None):
    doc = load_manifold_file(DATA / "example_nk.geom")
    return doc if a is None else doc.substitute(a)


def sa(text):
    """Scalar in Q(a) from text."""
    return parse_scalar(text, "a")


@pytest.fixture(scope="session")
def oracle():
    return json.loads(ORACLE.read_text())


@pytest.fixture(scope="session")
def family():
    return analyze(family_doc(), 1)


@pytest.fixture(scope="session")
def family_a1():
    return analyze(family_doc(1), 1)
