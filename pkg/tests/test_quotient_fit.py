"""
tests/test_quotient_fit.py

Ce qui est testé ici :
- le résidu de l'équation "pendant = quotient de Cauchy de f"
- l'invariance de jauge des quotients
- la vérification de l'identité d'Euler
- le fitter : cas d'Euler (retrouve ln Γ), cible synthétique exacte,
  décroissance de l'objectif, déterminisme, erreurs de validation
"""

import json
import math
import unittest

import numpy as np

from cauchybeta.exceptions import DomainError, InvalidInputError, NonConvergenceError, ValidationError
from cauchybeta.gamma import gamma_fn, log_gamma
from cauchybeta.models import Family, FamilySpec, FitProblem, FitReport, Gauge, QuotientClass
from cauchybeta.quotient_fit import (
    fit_quotient,
    quotient_residual,
    quotient_value,
    verify_euler_identity,
)


def detrended_max(values: np.ndarray, nodes: np.ndarray) -> float:
    """Écart maximal une fois retirée la meilleure droite a + b·x."""
    coeffs = np.polyfit(nodes, values, 1)
    return float(np.max(np.abs(values - np.polyval(coeffs, nodes))))


class TestQuotientResidual(unittest.TestCase):
    def test_euler_gamma_quotient(self):
        r = quotient_residual(FamilySpec(Family.EULER_EXP), QuotientClass.EXP, gamma_fn, 2.0, 3.0)
        self.assertLessEqual(abs(r), 1e-12)

    def test_additive_identity(self):
        spec = FamilySpec(Family.ADD2)
        self.assertLessEqual(abs(quotient_residual(spec, QuotientClass.ADD, lambda x: x, 2.0, 2.0)), 1e-15)
        self.assertLessEqual(abs(quotient_residual(spec, QuotientClass.ADD, lambda x: x, 2.0, 4.0) - 1.0), 1e-15)

    def test_sine_with_exponential(self):
        x, y = 0.3, 1.1
        r = quotient_residual(FamilySpec(Family.SINE_ADD), QuotientClass.EXP, math.exp, x, y)
        self.assertLessEqual(abs(r - (0.5 * math.sin(x + y) - 1.0)), 1e-14)

    def test_gauge_scaling(self):
        f = lambda v: math.exp(0.2 * v * v)
        for c in (0.5, 3.0, 17.0):
            scaled = quotient_value(QuotientClass.EXP, lambda v: c * f(v), 1.5, 2.5)
            base = quotient_value(QuotientClass.EXP, f, 1.5, 2.5)
            self.assertLessEqual(abs(scaled - c * base), 1e-14 * abs(c * base))

    def test_gauge_scaling_multiplicative_argument(self):
        f = lambda v: v ** 1.5 + 1.0
        for c in (0.5, 3.0, 17.0):
            scaled = quotient_value(QuotientClass.MULT, lambda v: c * f(v), 2.0, 3.5)
            base = quotient_value(QuotientClass.MULT, f, 2.0, 3.5)
            self.assertLessEqual(abs(scaled - c * base), 1e-14 * abs(c * base))

    def test_positivity_required(self):
        with self.assertRaises(InvalidInputError):
            quotient_value(QuotientClass.MULT, lambda v: -1.0, 2.0, 3.0)

    def test_domain(self):
        with self.assertRaises(DomainError):
            quotient_residual(FamilySpec(Family.MULT), QuotientClass.MULT, lambda v: v, 1.0, 3.0)


class TestVerifyEulerIdentity(unittest.TestCase):
    def test_forced_point(self):
        self.assertLessEqual(verify_euler_identity(1, 0, points=[(1.0, 1.0)]), 1e-10)

    def test_gamma_quotient_point(self):
        self.assertLessEqual(verify_euler_identity(1, 0, points=[(3.5, 2.25)]), 1e-10)

    def test_quasi_random(self):
        self.assertLessEqual(verify_euler_identity(100, 42), 1e-8)

    def test_no_samples(self):
        with self.assertRaises(ValidationError):
            verify_euler_identity(0, 42)


class TestFitQuotient(unittest.TestCase):
    def test_euler_recovers_log_gamma(self):
        problem = FitProblem(FamilySpec(Family.EULER_EXP), QuotientClass.EXP, 1.0, 2.0, 16)
        report = fit_quotient(problem)
        self.assertTrue(report.converged)
        self.assertLessEqual(report.rms_residual, 1e-6)
        nodes = np.array(report.nodes)
        diff = np.array(report.logf_values) - np.array([log_gamma(float(x)) for x in nodes])
        self.assertLessEqual(detrended_max(diff, nodes), 1e-5)

    def test_synthetic_exact_solution(self):
        lo, hi = 1.0, 2.0

        def log_g(x: float) -> float:
            return 0.3 * math.sin(math.pi * (x - lo) / (hi - lo))

        def target(x: float, y: float) -> float:
            return math.exp(log_g(x) + log_g(y) - log_g(x + y))

        problem = FitProblem(FamilySpec(Family.EULER_EXP), QuotientClass.EXP, lo, hi, 12, tol=1e-30)
        report = fit_quotient(problem, target_fn=target)
        self.assertLessEqual(report.rms_residual, 1e-10)
        nodes = np.array(report.nodes)
        diff = np.array(report.logf_values) - np.array([log_g(float(x)) for x in nodes])
        self.assertLessEqual(detrended_max(diff, nodes), 1e-8)

    def test_objective_never_increases(self):
        problem = FitProblem(FamilySpec(Family.MULT), QuotientClass.MULT, 2.0, 8.0, 10)
        trace = fit_quotient(problem).objective_trace
        self.assertGreaterEqual(len(trace), 1)
        for before, after in zip(trace, trace[1:]):
            self.assertLessEqual(after, before)

    def test_deterministic(self):
        problem = FitProblem(FamilySpec(Family.EULER_EXP), QuotientClass.EXP, 1.0, 2.0, 10)
        self.assertEqual(fit_quotient(problem).to_dict(), fit_quotient(problem).to_dict())

    def test_other_targets_report_finite_residuals(self):
        cases = [
            FitProblem(FamilySpec(Family.ADD2), QuotientClass.ADD, 1.0, 3.0, 16),
            FitProblem(FamilySpec(Family.MULT), QuotientClass.MULT, 2.0, 8.0, 16),
            FitProblem(FamilySpec(Family.LOG2), QuotientClass.LOG, 2.0, 6.0, 12, gauge=Gauge.SINGLE),
        ]
        for problem in cases:
            with self.subTest(target=problem.target.family, quotient=problem.quotient):
                report = fit_quotient(problem)
                self.assertTrue(math.isfinite(report.rms_residual))
                self.assertTrue(math.isfinite(report.max_residual))
                self.assertGreaterEqual(report.max_residual, report.rms_residual)
                self.assertTrue(all(math.isfinite(v) for v in report.logf_values))
                json.dumps(report.to_dict(), allow_nan=False)

    def test_gauge_description(self):
        problem = FitProblem(FamilySpec(Family.EULER_EXP), QuotientClass.EXP, 1.0, 2.0, 8, gauge=Gauge.SINGLE)
        report = fit_quotient(problem)
        self.assertEqual(report.gauge, "u=0 en x=2.0")
        self.assertEqual(json.loads(json.dumps(report.to_dict()))["gauge"], "u=0 en x=2.0")
        ends = fit_quotient(FitProblem(FamilySpec(Family.EULER_EXP), QuotientClass.EXP, 1.0, 2.0, 8))
        self.assertEqual(ends.gauge, "u=0 en x=1.0, x=2.0")
        self.assertEqual(report.logf_values[report.nodes.index(2.0)], 0.0)

    def test_strict_mode_raises_with_partial_report(self):
        problem = FitProblem(FamilySpec(Family.EULER_EXP), QuotientClass.EXP, 1.0, 2.0, 16, max_iters=1)
        self.assertFalse(fit_quotient(problem).converged)
        with self.assertRaises(NonConvergenceError) as ctx:
            fit_quotient(problem, strict=True)
        self.assertIsInstance(ctx.exception.partial, FitReport)
        self.assertEqual(ctx.exception.partial.iterations, 1)

    def test_problem_validation(self):
        target = FamilySpec(Family.EULER_EXP)
        with self.assertRaises(ValidationError):
            FitProblem(target, QuotientClass.EXP, 1.0, 2.0, 4)
        with self.assertRaises(ValidationError):
            FitProblem(target, QuotientClass.EXP, 2.0, 1.0, 16)
        with self.assertRaises(ValidationError):
            FitProblem(target, QuotientClass.EXP, 1.0, 2.0, 16, tol=0.0)

    def test_grid_outside_domain(self):
        with self.assertRaises(DomainError):
            fit_quotient(FitProblem(FamilySpec(Family.MULT), QuotientClass.EXP, 1.0, 2.0, 16))
        with self.assertRaises(DomainError):
            fit_quotient(FitProblem(FamilySpec(Family.ADD2), QuotientClass.MULT, -1.0, 2.0, 16))


if __name__ == "__main__":
    unittest.main()
