from hypothesis import strategies as st

from witnesscodes import Code


@st.composite
def codes(draw, max_n=8, max_size=20, min_size=0):
    n = draw(st.integers(1, max_n))
    words = draw(st.sets(st.integers(0, (1 << n) - 1), min_size=min(min_size, 1 << n), max_size=min(max_size, 1 << n)))
    return Code(n, frozenset(words))
