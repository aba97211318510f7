"""
tests/test_properties.py

Tests de propriétés (hypothesis) sur les formes closes :
- symétrie en (x, y)
- encadrement de la moyenne logarithmique, homogénéité de degré 1
- translation du pendant additif de seconde espèce
- moyenne géométrique du pendant logarithmique de seconde espèce
- périodicité du pendant "addition du sinus"
"""

import math
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from cauchybeta.gamma import euler_beta_closed
from cauchybeta.pendants import (
    add2_beta,
    log1_beta,
    log2_beta,
    mult_beta_closed,
    sine_add_beta,
)

above_one = st.floats(min_value=1.001, max_value=100.0, allow_nan=False, allow_infinity=False)
positive = st.floats(min_value=0.05, max_value=50.0, allow_nan=False, allow_infinity=False)
real = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def close(a: float, b: float, rel: float, abs_: float = 0.0) -> bool:
    return abs(a - b) <= max(rel * max(abs(a), abs(b)), abs_)


class TestSymmetry(unittest.TestCase):
    @settings(max_examples=200, deadline=None)
    @given(x=above_one, y=above_one)
    def test_domain_above_one(self, x, y):
        for f in (mult_beta_closed, log1_beta, log2_beta):
            self.assertTrue(close(f(x, y), f(y, x), 1e-14, 1e-300))

    @settings(max_examples=200, deadline=None)
    @given(x=positive, y=positive)
    def test_euler(self, x, y):
        self.assertEqual(euler_beta_closed(x, y), euler_beta_closed(y, x))

    @settings(max_examples=200, deadline=None)
    @given(x=real, y=real)
    def test_real_line(self, x, y):
        self.assertEqual(add2_beta(x, y), add2_beta(y, x))
        self.assertEqual(sine_add_beta(x, y), sine_add_beta(y, x))


class TestMeans(unittest.TestCase):
    @settings(max_examples=300, deadline=None)
    @given(x=above_one, y=above_one)
    def test_log_mean_bounds(self, x, y):
        m = mult_beta_closed(x, y)
        lo, hi = min(x, y) - 1.0, max(x, y) - 1.0
        self.assertGreaterEqual(m, lo * (1.0 - 1e-14))
        self.assertLessEqual(m, hi * (1.0 + 1e-14))

    @settings(max_examples=200, deadline=None)
    @given(
        a=st.floats(min_value=0.5, max_value=10.0),
        b=st.floats(min_value=0.5, max_value=10.0),
        t=st.floats(min_value=0.5, max_value=5.0),
    )
    def test_log_mean_homogeneity(self, a, b, t):
        scaled = mult_beta_closed(1.0 + t * a, 1.0 + t * b)
        base = mult_beta_closed(1.0 + a, 1.0 + b)
        self.assertTrue(close(scaled, t * base, 1e-12))

    @settings(max_examples=200, deadline=None)
    @given(x=above_one, y=above_one)
    def test_log2_geometric_mean(self, x, y):
        geometric = math.sqrt((x - 1.0) * (y - 1.0))
        self.assertTrue(close(math.exp(log2_beta(x, y)), geometric, 1e-12))


class TestTranslationAndPeriod(unittest.TestCase):
    @settings(max_examples=200, deadline=None)
    @given(x=real, y=real, c=real)
    def test_add2_translation(self, x, y, c):
        lhs = add2_beta(x + c, y + c)
        rhs = add2_beta(x, y) + c
        self.assertLessEqual(abs(lhs - rhs), 1e-12 * (1.0 + abs(x) + abs(y) + abs(c)))

    @settings(max_examples=200, deadline=None)
    @given(
        x=st.floats(min_value=-100.0, max_value=100.0),
        y=st.floats(min_value=-100.0, max_value=100.0),
    )
    def test_sine_period(self, x, y):
        self.assertLessEqual(abs(sine_add_beta(x + 2.0 * math.pi, y) - sine_add_beta(x, y)), 1e-12)


if __name__ == "__main__":
    unittest.main()
