import pytest

from superweil import QQ, make_space
from superweil.liesuper import check_quadratic, make_lie

# The bundled algebra corpus, built directly (the JSON files under
# superweil/data mirror these and are exercised by the cli tests).


@pytest.fixture(scope="session")
def sl2():
    space = make_space([("e", 0, 0), ("h", 0, 0), ("f", 0, 0)])
    return make_lie(space, {
        ("e", "f"): {"h": QQ(1)},
        ("h", "e"): {"e": QQ(2)},
        ("h", "f"): {"f": QQ(-2)},
    })


@pytest.fixture(scope="session")
def sl2_form(sl2):
    return check_quadratic(sl2, {("e", "f"): QQ(1), ("h", "h"): QQ(2)})


@pytest.fixture(scope="session")
def abelian1():
    return make_lie(make_space([("x", 0, 0)]), {})


@pytest.fixture(scope="session")
def abelian2():
    return make_lie(make_space([("x", 0, 0), ("y", 0, 0)]), {})


@pytest.fixture(scope="session")
def abelian3():
    return make_lie(make_space([("x", 0, 0), ("y", 0, 0), ("z", 0, 0)]), {})


@pytest.fixture(scope="session")
def odd2():
    """Odd abelian (0|2) with symplectic form."""
    return make_lie(make_space([("q1", 1, 0), ("q2", 1, 0)]), {})


@pytest.fixture(scope="session")
def odd2_form(odd2):
    return check_quadratic(odd2, {("q1", "q2"): QQ(1)})


@pytest.fixture(scope="session")
def gl11():
    space = make_space([("e11", 0, 0), ("e22", 0, 0), ("e12", 1, 0), ("e21", 1, 0)])
    return make_lie(space, {
        ("e11", "e12"): {"e12": QQ(1)},
        ("e11", "e21"): {"e21": QQ(-1)},
        ("e22", "e12"): {"e12": QQ(-1)},
        ("e22", "e21"): {"e21": QQ(1)},
        ("e12", "e21"): {"e11": QQ(1), "e22": QQ(1)},
    })


@pytest.fixture(scope="session")
def gl11_form(gl11):
    return check_quadratic(gl11, {
        ("e11", "e11"): QQ(1),
        ("e22", "e22"): QQ(-1),
        ("e12", "e21"): QQ(1),
    })
