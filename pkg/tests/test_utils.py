"""
tests/test_utils.py

Ce qui est testé ici :
- la lecture des arguments CLI (points, axes, grilles)
- le format des nombres et l'indice rationnel
- les tirages quasi-aléatoires et l'écriture atomique
"""

import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from cauchybeta.exceptions import DataExportError, ValidationError
from cauchybeta.models import AxisRange
from cauchybeta.utils import (
    format_number,
    format_table,
    parse_axis,
    parse_grid,
    parse_point,
    quasi_random_points,
    rational_hint,
    write_atomic,
)


class TestParsing(unittest.TestCase):
    def test_parse_point(self):
        self.assertEqual(parse_point("2, 3.5"), (2.0, 3.5))
        for bad in ("", "2,", "a,1", "nan,1", "inf"):
            with self.subTest(text=bad):
                with self.assertRaises(ValidationError):
                    parse_point(bad)

    def test_parse_axis(self):
        axis = parse_axis("x=2:3:0.5")
        self.assertEqual(axis, AxisRange("x", 2.0, 3.0, 0.5))
        self.assertEqual(axis.values(), [2.0, 2.5, 3.0])
        for bad in ("x2:3:1", "x=2:3", "=1:2:1", "x=3:2:1", "x=1:2:0"):
            with self.subTest(text=bad):
                with self.assertRaises(ValidationError):
                    parse_axis(bad)

    def test_axis_values_tolerate_rounding(self):
        self.assertEqual(len(AxisRange("x", 0.0, 1.0, 0.1).values()), 11)

    def test_parse_grid(self):
        self.assertEqual(parse_grid("1:2:16"), (1.0, 2.0, 16))
        with self.assertRaises(ValidationError):
            parse_grid("1:2")
        with self.assertRaises(ValidationError):
            parse_grid("1:2:x")


class TestFormatting(unittest.TestCase):
    def test_format_number(self):
        self.assertEqual(format_number(2.0), "2")
        self.assertEqual(format_number(-0.125), "-0.125")
        self.assertEqual(format_number(0.0), "0")
        self.assertIn("e", format_number(1e-5))
        self.assertIn("e", format_number(1e6))

    def test_format_number_round_trips(self):
        for value in (1.0 / 3.0, -1.0 / 12.0, 2.0 ** 0.5, 1e-7 / 3.0, 123456789.123, 1e300):
            with self.subTest(value=value):
                self.assertEqual(float(format_number(value)), value)

    def test_rational_hint(self):
        self.assertEqual(rational_hint(-0.125), Fraction(-1, 8))
        self.assertEqual(rational_hint(1.0 / 6.0), Fraction(1, 6))
        self.assertEqual(rational_hint(-7.0 / 96.0 + 1e-15), Fraction(-7, 96))

    def test_format_table(self):
        text = format_table(["a", "bb"], [["1", "2"], ["333", "4"]])
        lines = text.splitlines()
        self.assertEqual(len(lines), 4)
        self.assertEqual(lines[0], "a   | bb")
        self.assertEqual(format_table(["a"], []), "(aucune donnée)")


class TestSampling(unittest.TestCase):
    def test_reproducible_and_bounded(self):
        a = quasi_random_points(1.5, 6.0, 3, 64, seed=9)
        b = quasi_random_points(1.5, 6.0, 3, 64, seed=9)
        self.assertEqual(a, b)
        self.assertEqual(len(a), 64)
        for point in a:
            self.assertEqual(len(point), 3)
            self.assertTrue(all(1.5 <= v <= 6.0 for v in point))

    def test_seed_changes_points(self):
        self.assertNotEqual(quasi_random_points(0.0, 1.0, 2, 8, seed=1), quasi_random_points(0.0, 1.0, 2, 8, seed=2))

    def test_no_samples(self):
        with self.assertRaises(ValidationError):
            quasi_random_points(0.0, 1.0, 2, 0, seed=1)


class TestWriteAtomic(unittest.TestCase):
    def test_write_and_replace(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "out.csv"
            write_atomic(str(path), "a\n")
            write_atomic(str(path), "b\n")
            self.assertEqual(path.read_text(encoding="utf-8"), "b\n")
            self.assertEqual([p.name for p in Path(tmp).iterdir()], ["out.csv"])

    def test_missing_directory(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(DataExportError):
                write_atomic(str(Path(tmp) / "absent" / "out.csv"), "x\n")


if __name__ == "__main__":
    unittest.main()
