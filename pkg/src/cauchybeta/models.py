"""
models.py — Modèles de données (dataclasses + type hints)

Pourquoi ce fichier ?
- Représenter les objets échangés entre couches : résultat d'intégration,
  famille de pendants, requête d'évaluation, problème et rapport de fit,
  spécification de tabulation.
- Utiliser ces classes partout au lieu de manipuler des dicts bruts.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from .exceptions import ArityError, ValidationError

MAX_ARITY = 6


@dataclass(frozen=True)
class QuadResult:
    """Valeur d'une intégrale numérique, borne d'erreur estimée, nombre d'évaluations."""

    value: float
    abs_error_estimate: float
    evaluations: int


class Family(str, Enum):
    """Familles de pendants ; la valeur est le nom utilisé par la CLI."""

    EULER_EXP = "euler"
    MULT = "mult"
    ADD1 = "add1"
    ADD2 = "add2"
    LOG1 = "log1"
    LOG2 = "log2"
    SINE_ADD = "sine"


# Borne inférieure ouverte par coordonnée (None : tous les réels).
LOWER_OPEN_BOUNDS: Dict[Family, Optional[float]] = {
    Family.EULER_EXP: 0.0,
    Family.MULT: 1.0,
    Family.LOG1: 1.0,
    Family.LOG2: 1.0,
    Family.ADD1: None,
    Family.ADD2: None,
    Family.SINE_ADD: None,
}

# Arités supportées (bornes incluses).
ARITY_RANGES: Dict[Family, Tuple[int, int]] = {
    Family.EULER_EXP: (2, 2),
    Family.SINE_ADD: (2, 2),
    Family.MULT: (2, MAX_ARITY),
    Family.ADD1: (2, MAX_ARITY),
    Family.ADD2: (2, MAX_ARITY),
    Family.LOG1: (2, MAX_ARITY),
    Family.LOG2: (2, MAX_ARITY),
}

# Familles dont la forme close n'existe qu'à deux variables.
CLOSED_FORM_ARITY_TWO_ONLY = frozenset({Family.ADD2, Family.LOG1, Family.LOG2})


@dataclass(frozen=True)
class DomainConstraint:
    """Borne inférieure ouverte appliquée à chaque coordonnée."""

    lower_open_bound: Optional[float]

    def admits(self, value: float) -> bool:
        return self.lower_open_bound is None or value > self.lower_open_bound

    def describe(self) -> str:
        if self.lower_open_bound is None:
            return "tous les réels"
        return f"> {self.lower_open_bound:g} (borne ouverte {self.lower_open_bound:g})"


@dataclass(frozen=True)
class FamilySpec:
    """Une famille de pendants et son nombre de variables."""

    family: Family
    arity: int = 2

    def __post_init__(self) -> None:
        lo, hi = ARITY_RANGES[self.family]
        if not lo <= self.arity <= hi:
            raise ArityError(
                f"Famille '{self.family.value}' : arité {self.arity} non supportée "
                f"(attendu {lo}..{hi})."
            )

    @property
    def domain(self) -> DomainConstraint:
        return DomainConstraint(LOWER_OPEN_BOUNDS[self.family])

    @property
    def has_closed_form(self) -> bool:
        return self.arity == 2 or self.family not in CLOSED_FORM_ARITY_TWO_ONLY


class Method(str, Enum):
    """Forme close ou intégrale de définition."""

    CLOSED = "closed"
    QUAD = "quad"


@dataclass(frozen=True)
class EvalRequest:
    """Point(s) à évaluer, méthode et tolérance."""

    spec: FamilySpec
    point: Tuple[float, ...]
    method: Method = Method.CLOSED
    tol: Optional[float] = None


class QuotientClass(str, Enum):
    """Les quatre quotients de Cauchy."""

    EXP = "exp"     # f(x) f(y) / f(x+y)
    MULT = "mult"   # f(x) f(y) / f(xy)
    ADD = "add"     # (f(x) + f(y)) / f(x+y)
    LOG = "log"     # (f(x) + f(y)) / f(xy)

    @property
    def multiplicative_argument(self) -> bool:
        """Argument combiné x·y (grille géométrique) plutôt que x+y."""
        return self in (QuotientClass.MULT, QuotientClass.LOG)

    @property
    def product_numerator(self) -> bool:
        return self in (QuotientClass.EXP, QuotientClass.MULT)


class Gauge(str, Enum):
    """Choix des noeuds épinglés dans le fitter."""

    ENDS = "ends"
    SINGLE = "single"


@dataclass(frozen=True)
class FitProblem:
    """Problème de moindres carrés pour une équation de quotient de Cauchy."""

    target: FamilySpec
    quotient: QuotientClass
    grid_lo: float
    grid_hi: float
    grid_n: int
    max_iters: int = 500
    tol: float = 1e-12
    damping_init: float = 1e-3
    gauge: Gauge = Gauge.ENDS

    def __post_init__(self) -> None:
        if self.target.arity != 2:
            raise ArityError("Le fitter ne traite que des cibles à deux variables.")
        if not (math.isfinite(self.grid_lo) and math.isfinite(self.grid_hi)):
            raise ValidationError("Bornes de grille non finies.")
        if self.grid_n < 8:
            raise ValidationError(f"grid_n={self.grid_n} : au moins 8 noeuds requis.")
        if not self.grid_hi > self.grid_lo:
            raise ValidationError("grid_hi doit être > grid_lo.")
        if self.max_iters < 1:
            raise ValidationError("max_iters doit être >= 1.")
        if not self.tol > 0:
            raise ValidationError("tol doit être > 0.")
        if not self.damping_init > 0:
            raise ValidationError("damping_init doit être > 0.")


@dataclass
class FitReport:
    """Résultat du fitter, sérialisable en JSON."""

    logf_values: List[float]
    rms_residual: float
    max_residual: float
    iterations: int
    converged: bool
    gauge: str
    nodes: List[float] = field(default_factory=list)
    pairs: int = 0
    objective_trace: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class AxisRange:
    """Axe d'une tabulation : start, stop, step."""

    label: str
    start: float
    stop: float
    step: float

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.start, self.stop, self.step)):
            raise ValidationError(f"Axe '{self.label}' : valeurs non finies.")
        if not self.step > 0:
            raise ValidationError(f"Axe '{self.label}' : step doit être > 0.")
        if not self.start < self.stop:
            raise ValidationError(f"Axe '{self.label}' : start doit être < stop.")

    def values(self) -> List[float]:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(count)]


@dataclass(frozen=True)
class TabulationSpec:
    """Famille, axes, méthode et destination d'une tabulation CSV."""

    spec: FamilySpec
    axes: Tuple[AxisRange, ...]
    method: Method = Method.CLOSED
    out: Optional[str] = None
