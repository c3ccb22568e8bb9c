from hypothesis import strategies as st

from twistext.partition import Partition


@st.composite
def partitions(draw, min_weight=0, max_weight=8):
    """Random partition: split n into random positive parts, then sort."""
    n = draw(st.integers(min_value=min_weight, max_value=max_weight))
    parts = []
    left = n
    while left:
        a = draw(st.integers(min_value=1, max_value=left))
        parts.append(a)
        left -= a
    return Partition(sorted(parts, reverse=True))


primes = st.sampled_from([2, 3, 5])
small_primes = st.sampled_from([2, 3])


@st.composite
def poincare_coeffs(draw, max_degree=5, max_coeff=3):
    coeffs = draw(st.lists(st.integers(min_value=0, max_value=max_coeff), max_size=max_degree + 1))
    return coeffs
