import itertools

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def shapes_up_to(max_total, max_parts=None, min_total=1):
    out = []
    for total in range(min_total, max_total + 1):
        for k in range(1, total + 1):
            if max_parts is not None and k > max_parts:
                break
            for c in itertools.product(range(1, total + 1), repeat=k):
                if sum(c) == total:
                    out.append(c)
    return out


@st.composite
def small_shapes(draw, max_total=4, max_parts=3, allow_zero=False):
    lo = 0 if allow_zero else 1
    k = draw(st.integers(1, max_parts))
    parts = draw(st.lists(st.integers(lo, max_total), min_size=k, max_size=k))
    if sum(parts) > max_total or sum(parts) == 0:
        parts = [1] * k
    return tuple(parts)


@st.composite
def shape_and_weights(draw, max_total=4, max_parts=3):
    shape = draw(small_shapes(max_total, max_parts))
    a = tuple(draw(st.integers(0, d)) for d in shape)
    return shape, a
