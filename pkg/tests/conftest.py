import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hermlat import make_bundle, shipped_field

FIXDIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def field_q():
    return shipped_field("q")


@pytest.fixture(scope="session")
def field_qi():
    return shipped_field("gaussian")


@pytest.fixture(scope="session")
def field_sqrt2():
    return shipped_field("sqrt2")


@pytest.fixture(scope="session")
def field_sqrt_minus2():
    return shipped_field("sqrt_minus2")


@pytest.fixture(scope="session")
def field_sqrt_minus3():
    return shipped_field("sqrt_minus3")


@pytest.fixture(scope="session")
def field_zeta5():
    return shipped_field("zeta5")


@pytest.fixture(scope="session")
def all_fields(field_q, field_qi, field_sqrt2, field_sqrt_minus2, field_sqrt_minus3, field_zeta5):
    return {
        "q": field_q,
        "gaussian": field_qi,
        "sqrt2": field_sqrt2,
        "sqrt_minus2": field_sqrt_minus2,
        "sqrt_minus3": field_sqrt_minus3,
        "zeta5": field_zeta5,
    }


def identity_bundle(nf, rank=1):
    return make_bundle(nf, rank, [np.eye(rank) for _ in range(nf.degree)])
