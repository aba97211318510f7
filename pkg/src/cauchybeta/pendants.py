"""
pendants.py — Les pendants de Cauchy de la fonction Beta

Pourquoi ce fichier ?
- Chaque famille (exponentielle/Euler, multiplicative, additives, logarithmiques,
  addition du sinus) y est disponible sous deux formes : intégrale de
  définition (via `quadrature`) et forme close.
- `pendant_closed` et `pendant_integral` donnent une interface uniforme
  par `FamilySpec`, utilisée par la vérification, la tabulation et la CLI.

Les intégrandes sont construites à partir des poids duaux (t_1, ..., t_{k-1},
1 - Σ t_i), combinés coordonnée par coordonnée comme pour k = 2.
"""

from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .config import QuadConfig
from .exceptions import (
    ArityError,
    ClosedFormUnavailableError,
    DomainError,
    InvalidInputError,
)
from .gamma import euler_beta_closed, euler_beta_integral
from .models import MAX_ARITY, Family, FamilySpec, QuadResult
from .quadrature import integrate_1d, integrate_cube

logger = logging.getLogger(__name__)

# En deçà, le facteur (e^u - 1)/u est évalué par son développement limité.
DIAGONAL_SWITCH = 1e-6


def validate_point(spec: FamilySpec, point: Sequence[float]) -> Tuple[float, ...]:
    """Contrôle arité, finitude et borne ouverte ; renvoie le point en floats."""
    values = tuple(float(v) for v in point)
    if len(values) != spec.arity:
        raise ArityError(
            f"Famille '{spec.family.value}' : {len(values)} argument(s) reçu(s), "
            f"{spec.arity} attendu(s)."
        )
    for i, v in enumerate(values, start=1):
        if not math.isfinite(v):
            raise InvalidInputError(f"x{i}={v!r} n'est pas un réel fini.")
        if not spec.domain.admits(v):
            raise DomainError(
                f"x{i}={v:g} hors du domaine de '{spec.family.value}' : "
                f"attendu {spec.domain.describe()}."
            )
    return values


def _spec(family: Family, values: Sequence[float]) -> FamilySpec:
    if len(values) > MAX_ARITY:
        raise ArityError(f"Arité {len(values)} > {MAX_ARITY} non supportée.")
    return FamilySpec(family, len(values))


def _diagonal_series(u: float) -> float:
    """(e^u - 1)/u au voisinage de u = 0 (trois termes)."""
    return 1.0 + u / 2.0 + u * u / 6.0


def _log_ratio(diff: float, c: float, top: float) -> float:
    """log((top-1)/c) = log1p(diff/c), avec diff = top - (c+1) ; différence des logs si diff/c déborde."""
    u = math.log1p(diff / c)
    if math.isinf(u):
        return math.log(top - 1.0) - math.log(c)
    return u


def mult_beta_closed(x: float, y: float) -> float:
    """M(x,y) = (x-y)/log((x-1)/(y-1)), moyenne logarithmique de x-1 et y-1."""
    x, y = validate_point(FamilySpec(Family.MULT), (x, y))
    # Ordre canonique : symétrie exacte.
    hi, lo = (x, y) if x >= y else (y, x)
    c = lo - 1.0
    diff = hi - lo
    u = _log_ratio(diff, c, hi)
    if abs(u) < DIAGONAL_SWITCH:
        return c * _diagonal_series(u)
    return diff / u


def mult_beta_k_closed(xs: Sequence[float]) -> float:
    """M_k(x_1..x_k) = (x_k-1) Π_{i<k} (x_i-x_k)/[(x_k-1) log((x_i-1)/(x_k-1))]."""
    values = validate_point(_spec(Family.MULT, xs), xs)
    if len(values) == 2:
        return mult_beta_closed(*values)
    last = values[-1]
    c = last - 1.0
    result = c
    for xi in values[:-1]:
        diff = xi - last
        u = _log_ratio(diff, c, xi)
        if abs(u) < DIAGONAL_SWITCH:
            result *= _diagonal_series(u)
        else:
            result *= diff / (c * u)
    return result


@lru_cache(maxsize=None)
def add1_coefficient(k: int) -> float:
    """c_k = ∫_{[0,1]^{k-1}} t_1···t_{k-1} (1 - Σ t_i) dt, calculé par cubature."""
    if not 2 <= k <= MAX_ARITY:
        raise ArityError(f"k={k} hors de [2, {MAX_ARITY}].")

    def integrand(points: np.ndarray) -> np.ndarray:
        return np.prod(points, axis=1) * (1.0 - np.sum(points, axis=1))

    result = integrate_cube(integrand, k - 1, QuadConfig())
    logger.info("add1_coefficient(k=%d) = %r (err %.3g)", k, result.value, result.abs_error_estimate)
    return result.value


def add1_beta(xs: Sequence[float]) -> float:
    """A_{1,k}(x) = c_k Π (x_i - 1)."""
    values = validate_point(_spec(Family.ADD1, xs), xs)
    return add1_coefficient(len(values)) * math.prod(v - 1.0 for v in values)


def add2_beta(x: float, y: float) -> float:
    """A_2(x,y) = A(x-1, y-1) = (x+y)/2 - 1."""
    x, y = validate_point(FamilySpec(Family.ADD2), (x, y))
    # Demi-sommes : x + y peut déborder.
    return x / 2.0 + y / 2.0 - 1.0


def log1_beta(x: float, y: float) -> float:
    """L_1(x,y) = (1/6) log(x-1) log(y-1)."""
    x, y = validate_point(FamilySpec(Family.LOG1), (x, y))
    return math.log(x - 1.0) * math.log(y - 1.0) / 6.0


def log2_beta(x: float, y: float) -> float:
    """L_2(x,y) = A(log(x-1), log(y-1))."""
    x, y = validate_point(FamilySpec(Family.LOG2), (x, y))
    return (math.log(x - 1.0) + math.log(y - 1.0)) / 2.0


def sine_add_beta(x: float, y: float) -> float:
    """S(x,y) = sin(x+y)/2, développé en sin x cos y + cos x sin y (x + y peut déborder)."""
    x, y = validate_point(FamilySpec(Family.SINE_ADD), (x, y))
    return 0.5 * (math.sin(x) * math.cos(y) + math.cos(x) * math.sin(y))


def pendant_closed(spec: FamilySpec, point: Sequence[float]) -> float:
    """Forme close de la famille au point donné."""
    values = validate_point(spec, point)
    if not spec.has_closed_form:
        raise ClosedFormUnavailableError(
            f"Famille '{spec.family.value}' à {spec.arity} variables : "
            "pas de forme close, utiliser la méthode intégrale."
        )
    family = spec.family
    if family is Family.EULER_EXP:
        return euler_beta_closed(*values)
    if family is Family.MULT:
        return mult_beta_k_closed(values)
    if family is Family.ADD1:
        return add1_beta(values)
    if family is Family.ADD2:
        return add2_beta(*values)
    if family is Family.LOG1:
        return log1_beta(*values)
    if family is Family.LOG2:
        return log2_beta(*values)
    return sine_add_beta(*values)


def _dual_integrand(spec: FamilySpec, values: Tuple[float, ...]) -> Callable[[np.ndarray], np.ndarray]:
    """Intégrande en fonction de la matrice des poids duaux W (n, k), lignes de somme 1."""
    x = np.asarray(values)
    family = spec.family

    if family is Family.MULT:
        log_base = np.log(x - 1.0)
        return lambda w: np.exp(w @ log_base)
    if family is Family.ADD1:
        shifted = x - 1.0
        return lambda w: np.prod(w * shifted, axis=1)
    if family is Family.ADD2:
        shifted = x - 1.0
        return lambda w: w @ shifted
    if family is Family.LOG1:
        logs = np.log(x - 1.0)
        return lambda w: np.prod(w * logs, axis=1)
    if family is Family.LOG2:
        logs = np.log(x - 1.0)
        return lambda w: w @ logs
    if family is Family.SINE_ADD:
        sx, cx = math.sin(values[0]), math.cos(values[0])
        sy, cy = math.sin(values[1]), math.cos(values[1])
        return lambda w: w[:, 0] * sx * cy + w[:, 1] * sy * cx
    raise ValueError(f"Pas d'intégrande duale pour {family}")


def pendant_integral(
    spec: FamilySpec, point: Sequence[float], config: Optional[QuadConfig] = None
) -> QuadResult:
    """Valeur du pendant par son intégrale de définition."""
    values = validate_point(spec, point)
    config = config or QuadConfig()

    if spec.family is Family.EULER_EXP:
        return euler_beta_integral(values[0], values[1], config)

    integrand = _dual_integrand(spec, values)
    if spec.arity == 2:
        return integrate_1d(lambda t: integrand(np.column_stack([t, 1.0 - t])), config)

    def on_cube(points: np.ndarray) -> np.ndarray:
        last = 1.0 - np.sum(points, axis=1)
        return integrand(np.column_stack([points, last]))

    return integrate_cube(on_cube, spec.arity - 1, config)


def oracle_deviation(
    spec: FamilySpec,
    point: Sequence[float],
    config: Optional[QuadConfig] = None,
    floor: float = 0.1,
) -> Tuple[float, QuadResult, float]:
    """Forme close, intégrale et écart |intégrale - close| / max(|close|, floor)."""
    closed = pendant_closed(spec, point)
    integral = pendant_integral(spec, point, config)
    scale = max(abs(closed), floor)
    deviation = abs(integral.value - closed) / scale if scale > 0 else abs(integral.value - closed)
    return closed, integral, deviation
