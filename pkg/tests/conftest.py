import random

from hypothesis import strategies as st

from esakia.posets import FinitePoset

_LETTERS = "abcdefgh"


@st.composite
def posets(draw, max_size: int = 5):
    """Random poset: a DAG on index-ordered pairs, transitively closed by
    the constructor."""
    n = draw(st.integers(min_value=1, max_value=max_size))
    labels = list(_LETTERS[:n])
    pairs = draw(
        st.lists(
            st.tuples(
                st.integers(0, n - 1), st.integers(0, n - 1)
            ).filter(lambda p: p[0] < p[1]),
            max_size=n * n,
        )
    )
    return FinitePoset(labels, [(labels[i], labels[j]) for i, j in pairs])


def random_poset(rng: random.Random, n: int) -> FinitePoset:
    labels = list(_LETTERS[:n])
    pairs = [
        (labels[i], labels[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < 0.4
    ]
    return FinitePoset(labels, pairs)
