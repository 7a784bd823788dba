import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from vdwtif.epset import EpSet

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def naive_member(raw: tuple[int, int, int, int], n: int) -> bool:
    """Membership straight from an uncanonicalized (a, w, p, v)."""
    a, w, p, v = raw
    if n <= a:
        return bool(w >> (n - 1) & 1)
    return bool(v >> ((n - a - 1) % p) & 1)


def naive_set(raw, upto: int) -> set[int]:
    return {n for n in range(1, upto + 1) if naive_member(raw, n)}


@st.composite
def raw_shapes(draw, max_a=8, max_p=12, infinite=False):
    a = draw(st.integers(0, max_a))
    p = draw(st.integers(1, max_p))
    w = draw(st.integers(0, (1 << a) - 1))
    lo = 1 if infinite else 0
    v = draw(st.integers(lo, (1 << p) - 1))
    return a, w, p, v


def epsets(max_a=8, max_p=12, infinite=False):
    return raw_shapes(max_a, max_p, infinite).map(lambda r: EpSet.make(*r))


def random_epset(rng: random.Random, max_a=8, max_p=12, infinite=False) -> EpSet:
    a = rng.randint(0, max_a)
    p = rng.randint(1, max_p)
    v = rng.getrandbits(p)
    if infinite and v == 0:
        v = 1 << rng.randrange(p)
    return EpSet.make(a, rng.getrandbits(a) if a else 0, p, v)


@pytest.fixture
def rng():
    return random.Random(20240601)


def biased_epset(rng: random.Random, max_a=4, max_p=6) -> EpSet:
    """Random set whose bits are ones with a random bias, so near-cofinite
    roots (the hard case for FIP) show up often."""
    bias = rng.choice([0.5, 0.8, 0.95])
    a, p = rng.randint(0, max_a), rng.randint(1, max_p)
    w = sum(1 << i for i in range(a) if rng.random() < bias)
    v = sum(1 << i for i in range(p) if rng.random() < bias)
    return EpSet.make(a, w, p, v)


def random_family(rng: random.Random):
    from vdwtif.filters import FipFamily

    roots = [biased_epset(rng) for _ in range(rng.randint(0, 2))]
    singles = [biased_epset(rng) for _ in range(rng.randint(0, 3))]
    return FipFamily(roots, singles)
