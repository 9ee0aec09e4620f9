"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from ringmat.matrix import Mat
from ringmat.ring import ring_spec

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# moduli that exercise every ring shape: prime, prime power, squarefree
# composite, and mixed prime powers
SMALL_MODULI = (2, 3, 4, 5, 6, 8, 9, 12, 18)


@st.composite
def moduli(draw):
    return draw(st.sampled_from(SMALL_MODULI))


@st.composite
def elements(draw):
    ring = ring_spec(draw(moduli()))
    return ring, draw(st.integers(min_value=0, max_value=ring.h - 1))


@st.composite
def matrices(draw, max_dim: int = 3):
    ring = ring_spec(draw(moduli()))
    rows = draw(st.integers(min_value=1, max_value=max_dim))
    cols = draw(st.integers(min_value=1, max_value=max_dim))
    entries = draw(
        st.tuples(*[st.integers(min_value=0, max_value=ring.h - 1)] * (rows * cols))
    )
    return Mat(ring, rows, cols, entries)


@st.composite
def matrix_pairs(draw, max_dim: int = 3):
    """Two square matrices over the same ring, same size (for products)."""
    ring = ring_spec(draw(moduli()))
    n = draw(st.integers(min_value=1, max_value=max_dim))
    def one():
        entries = draw(
            st.tuples(*[st.integers(min_value=0, max_value=ring.h - 1)] * (n * n))
        )
        return Mat(ring, n, n, entries)
    return one(), one()


@pytest.fixture
def rng():
    return random.Random(0)
