import os

import pytest

from frobcheck.budget import Budget
from frobcheck.cli import parse_model

MODELS_DIR = os.path.join(os.path.dirname(__file__), "models")


def load_model(name):
    with open(os.path.join(MODELS_DIR, name), "rb") as fh:
        return parse_model(fh.read())


def model_path(name):
    return os.path.join(MODELS_DIR, name)


# session scope so ring-level caches (ideal bases, resolutions, pushforwards)
# persist across tests
@pytest.fixture(scope="session")
def model_a():
    return load_model("a.json")


@pytest.fixture(scope="session")
def model_b():
    return load_model("b.json")


@pytest.fixture(scope="session")
def model_c():
    return load_model("c.json")


@pytest.fixture(scope="session")
def model_d():
    return load_model("d.json")


@pytest.fixture(scope="session")
def model_e():
    return load_model("e.json")


@pytest.fixture(scope="session")
def corpus(model_a, model_b, model_c, model_d, model_e):
    return {"A": model_a, "B": model_b, "C": model_c, "D": model_d,
            "E": model_e}


@pytest.fixture(scope="session")
def big_budget():
    # ring C needs q^v = 125 pushforward generators and, at n = 2 with
    # weights (3,4,5), matrix entries of weighted degree past 200
    return Budget(max_pushforward_generators=256, max_degree=800)
