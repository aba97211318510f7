"""
services.py — Cas d'usage (entre la CLI et les modules numériques)

Pourquoi ce fichier ?
- Centraliser l'orchestration : évaluation, tabulation, vérification,
  coefficients additifs, fit de quotients.
- La CLI reste une couche de présentation : elle n'appelle que `BetaWorkbench`.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .config import SAMPLING_BOX_MULTIVARIATE, SAMPLING_BOXES, AppConfig, QuadConfig
from .exceptions import ValidationError
from .models import EvalRequest, Family, FamilySpec, FitProblem, FitReport, Method, TabulationSpec
from .pendants import add1_coefficient, oracle_deviation, pendant_closed, pendant_integral, validate_point
from .quotient_fit import fit_quotient
from .utils import format_number, quasi_random_points, rational_hint, write_atomic

logger = logging.getLogger(__name__)


@dataclass
class VerificationRow:
    point: Tuple[float, ...]
    closed: float
    integral: float
    deviation: float


@dataclass
class VerificationSummary:
    spec: FamilySpec
    tol: float
    rows: List[VerificationRow] = field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        return max((row.deviation for row in self.rows), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol


class BetaWorkbench:
    """Service principal : pendants, vérification et fit."""

    def __init__(self, config: Optional[AppConfig] = None) -> None:
        self.config = config or AppConfig()

    def _quad(self, tol: Optional[float]) -> QuadConfig:
        return self.config.quad if tol is None else self.config.quad.with_tolerance(tol)

    def evaluate(self, request: EvalRequest) -> float:
        """Valeur du pendant par forme close ou par intégrale."""
        if request.method is Method.CLOSED:
            return pendant_closed(request.spec, request.point)
        result = pendant_integral(request.spec, request.point, self._quad(request.tol))
        logger.info(
            "eval %s%s : %r (err %.3g, %d évaluations)",
            request.spec.family.value, request.point, result.value,
            result.abs_error_estimate, result.evaluations,
        )
        return result.value

    def tabulate(self, tab: TabulationSpec) -> str:
        """CSV complet (en mémoire) : en-tête x1..xk,value, dernier axe le plus rapide."""
        if len(tab.axes) != tab.spec.arity:
            raise ValidationError(
                f"{len(tab.axes)} axe(s) pour une famille à {tab.spec.arity} variables."
            )
        lattice = list(itertools.product(*(axis.values() for axis in tab.axes)))
        # Tout le réseau est contrôlé avant la première évaluation.
        for point in lattice:
            validate_point(tab.spec, point)

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([f"x{i}" for i in range(1, tab.spec.arity + 1)] + ["value"])
        for point in lattice:
            value = self.evaluate(EvalRequest(tab.spec, point, tab.method))
            writer.writerow([format_number(v) for v in point] + [format_number(value)])
        logger.info("tabulate %s : %d ligne(s)", tab.spec.family.value, len(lattice))

        text = buffer.getvalue()
        if tab.out:
            write_atomic(tab.out, text)
        return text

    def verify(self, spec: FamilySpec, samples: int, seed: int, tol: float = 1e-8) -> VerificationSummary:
        """Forme close contre intégrale sur des points quasi-aléatoires reproductibles."""
        if samples < 1:
            raise ValidationError(f"samples={samples} : au moins 1 échantillon requis.")
        if spec.arity > 2 and spec.family is Family.MULT:
            lo, hi = SAMPLING_BOX_MULTIVARIATE
        else:
            lo, hi = SAMPLING_BOXES[spec.family.value]
        floor = 0.0 if spec.family is Family.EULER_EXP else 0.1

        summary = VerificationSummary(spec=spec, tol=tol)
        for point in quasi_random_points(lo, hi, spec.arity, samples, seed):
            closed, integral, deviation = oracle_deviation(spec, point, self.config.quad, floor)
            summary.rows.append(VerificationRow(point, closed, integral.value, deviation))
        logger.info(
            "verify %s (k=%d) : %d échantillon(s), écart max %.3g",
            spec.family.value, spec.arity, samples, summary.max_deviation,
        )
        return summary

    def coefficient(self, k: int) -> Tuple[float, Fraction]:
        """Coefficient c_k des pendants additifs de première espèce et son indice rationnel."""
        value = add1_coefficient(k)
        return value, rational_hint(value)

    def fit(self, problem: FitProblem, out: Optional[str] = None) -> Tuple[FitReport, str]:
        """Lance le fitter ; renvoie le rapport et sa forme JSON."""
        report = fit_quotient(problem, damping_max=self.config.fit.damping_max)
        text = json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"
        if out:
            write_atomic(out, text)
        return report, text
