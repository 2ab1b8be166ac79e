import pytest
from hypothesis import strategies as st

from rcring.group import Params

SMALL = [(3, 1, 3), (3, 2, 3), (3, 3, 3), (4, 1, 4), (4, 2, 4), (4, 4, 3), (2, 1, 4), (6, 2, 3), (6, 3, 4)]


@st.composite
def params(draw, max_order=512):
    n = draw(st.integers(2, 6))
    d = draw(st.integers(1, n))
    mults = [r for r in range(3, max_order // 2**n + 1) if (d * r) % n == 0]
    if not mults:
        return Params(n, n, 3)
    return Params(n, d, draw(st.sampled_from(mults)))


@st.composite
def instance_and_vertex(draw, max_order=512):
    p = draw(params(max_order))
    return p, draw(st.integers(0, p.order - 1))


@pytest.fixture(params=SMALL, ids=lambda t: "Q%d(%d,%d)" % t)
def small(request):
    return Params(*request.param)
