import pytest

from gal import build_sieve

# twenty targets outside Q(i): square-root, e and pi combinations
SEED_THETAS = [
    "sqrt:2+i*sqrt:3",
    "sqrt:3+i*sqrt:2",
    "sqrt:5+i*sqrt:2",
    "sqrt:2-i*sqrt:5",
    "sqrt:7+i*sqrt:3",
    "e+i*pi",
    "pi+i*sqrt:2",
    "sqrt:6+i*e",
    "e-i*sqrt:7",
    "pi-i*sqrt:10",
    "sqrt:2+sqrt:3+i*sqrt:5",
    "sqrt:10+i*0.5",
    "0.25+i*sqrt:11",
    "sqrt:13+i*sqrt:7",
    "e+i*sqrt:2",
    "sqrt:2+i*e",
    "pi+i*pi",
    "sqrt:17-i*sqrt:19",
    "1.5+sqrt:2+i*sqrt:3-i*0.25",
    "sqrt:23+i*sqrt:29",
]

FIVE_THETAS = SEED_THETAS[:5]


@pytest.fixture(scope="session")
def sieve_1e4():
    return build_sieve(10**4)


@pytest.fixture(scope="session")
def sieve_1e6():
    return build_sieve(10**6)
