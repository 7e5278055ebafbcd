from fractions import Fraction

from hypothesis import strategies as st

small_int = st.integers(min_value=-10 ** 6, max_value=10 ** 6)
nonzero_int = small_int.filter(bool)
rationals = st.builds(Fraction, small_int, st.integers(min_value=1, max_value=10 ** 6))
nonzero_rationals = rationals.filter(bool)
