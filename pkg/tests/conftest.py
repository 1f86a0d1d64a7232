from fractions import Fraction

from hypothesis import strategies as st

from fairdiv import Instance


@st.composite
def instances(draw, n=st.integers(1, 4), m=st.integers(0, 6), values=st.integers(0, 6)):
    n_agents, m_goods = draw(n), draw(m)
    rows = draw(st.lists(st.lists(values, min_size=m_goods, max_size=m_goods),
                         min_size=n_agents, max_size=n_agents))
    return Instance(tuple(tuple(r) for r in rows))


positive_rationals = st.fractions(min_value=Fraction(1, 50), max_value=50)
