import random
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from uvt.algebra import QuantumGroup, UElement
from uvt.cartan import type_a
from uvt.pairing import Pairing
from uvt.scalars import monomial

settings.register_profile(
    "uvt", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("uvt")

SEED = 20240


@lru_cache(maxsize=None)
def group(n: int, troot: int = 1) -> QuantumGroup:
    return QuantumGroup(type_a(n), troot)


@lru_cache(maxsize=None)
def pairing(n: int) -> Pairing:
    return Pairing(group(n))


@pytest.fixture(scope="session")
def qg1():
    return group(1)


@pytest.fixture(scope="session")
def qg2():
    return group(2)


@pytest.fixture(scope="session")
def qg3():
    return group(3)


def random_word(rng: random.Random, rank: int, max_len: int) -> tuple:
    return tuple(rng.randrange(rank) for _ in range(rng.randint(0, max_len)))


def random_coeff(rng: random.Random):
    return monomial(rng.randint(-2, 2), rng.randint(-2, 2)) * rng.choice([1, -1, 2, 3])


def random_monomial(qg: QuantumGroup, rng: random.Random, max_len: int = 2, box: int = 1) -> UElement:
    n = qg.rank
    y = random_word(rng, n, max_len)
    x = random_word(rng, n, max_len)
    a = [rng.randint(-box, box) for _ in range(n)]
    b = [rng.randint(-box, box) for _ in range(n)]
    u = qg.one()
    for i in y:
        u = u * qg.F(i)
    u = u * qg.cartan(tuple(a), tuple(b))
    for i in x:
        u = u * qg.E(i)
    return u.scale(random_coeff(rng))


def random_element(qg: QuantumGroup, rng: random.Random, terms: int = 2, max_len: int = 2) -> UElement:
    u = qg.zero()
    for _ in range(terms):
        u = u + random_monomial(qg, rng, max_len)
    return u


def random_borel(qg: QuantumGroup, rng: random.Random, upper: bool, terms: int = 2, max_len: int = 2) -> UElement:
    """Random element of U^>= (E, K) or U^<= (F, K')."""
    n = qg.rank
    u = qg.zero()
    for _ in range(terms):
        w = random_word(rng, n, max_len)
        c = tuple(rng.randint(-1, 1) for _ in range(n))
        z = qg.zero_vec
        if upper:
            m = qg.cartan(c, z)
            for i in w:
                m = m * qg.E(i)
        else:
            m = qg.one()
            for i in w:
                m = m * qg.F(i)
            m = m * qg.cartan(z, c)
        u = u + m.scale(random_coeff(rng))
    return u
