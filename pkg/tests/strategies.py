from fractions import Fraction

from hypothesis import strategies as st


@st.composite
def strict_rationals(draw, min_n=2, max_n=12, max_den=60):
    """Sorted, pairwise distinct rationals in [0, 1]."""
    den = draw(st.integers(min_value=max(min_n, 2), max_value=max_den))
    n = draw(st.integers(min_value=min_n, max_value=min(max_n, den + 1)))
    nums = draw(st.lists(st.integers(0, den), min_size=n, max_size=n, unique=True))
    return [Fraction(k, den) for k in sorted(nums)]


@st.composite
def stochastic_rows(draw, n=3, colors=3, dens=(4, 5, 6, 8, 10, 12)):
    rows = []
    for _ in range(n):
        den = draw(st.sampled_from(dens))
        cuts = sorted(draw(st.lists(st.integers(0, den), min_size=colors - 1, max_size=colors - 1)))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [den])]
        rows.append([Fraction(p, den) for p in parts])
    return rows
