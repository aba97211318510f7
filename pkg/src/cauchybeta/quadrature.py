"""
quadrature.py — Moteurs d'intégration numérique déterministes

Pourquoi ce fichier ?
- Chaque pendant est défini par une intégrale sur [0,1] ou sur le cube
  [0,1]^(k-1) : ce module en est l'oracle.
- 1-D : Gauss-Kronrod 7/15 adaptatif, après les substitutions t = u^p sur
  [0,1/2] et 1-t = v^p sur [1/2,1] (p = 2 par défaut) qui absorbent les
  singularités en puissance t^a, (1-t)^b dès que p(1+a) >= 1 et p(1+b) >= 1.
- Cube : produit tensoriel de règles de Gauss-Legendre, erreur estimée par
  différence entre deux niveaux de raffinement.

Convention : les intégrandes sont vectorisées (tableaux numpy).
"""

from __future__ import annotations

import heapq
import itertools
import logging
import math
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import numpy as np

from .config import QuadConfig
from .exceptions import (
    DimensionTooLargeError,
    InvalidInputError,
    InvalidOrderError,
    NonConvergenceError,
)
from .models import QuadResult

logger = logging.getLogger(__name__)

Integrand1D = Callable[[np.ndarray], np.ndarray]
IntegrandND = Callable[[np.ndarray], np.ndarray]

MIN_GAUSS_ORDER = 2
MAX_GAUSS_ORDER = 64
MAX_CUBE_DIM = 6

# Nombre maximal de points évalués en un seul appel d'intégrande.
_CHUNK_POINTS = 1 << 18

_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny

# Noeuds de Kronrod positifs (ordre décroissant) ; indices impairs = noeuds de Gauss.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
])
_WGK_CENTER = 0.209482141084727828012999174891714
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
])
_WG_CENTER = 0.417959183673469387755102040816327


def _kronrod_rule() -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Règle G7/K15 complète sur [-1,1] : noeuds, poids Kronrod, poids Gauss."""
    nodes = np.concatenate([-_XGK, [0.0], _XGK[::-1]])
    wk_half = _WGK
    wg_half = np.zeros(7)
    wg_half[1::2] = _WG
    wk = np.concatenate([wk_half, [_WGK_CENTER], wk_half[::-1]])
    wg = np.concatenate([wg_half, [_WG_CENTER], wg_half[::-1]])
    return nodes, wk, wg


_GK_NODES, _GK_WK, _GK_WG = _kronrod_rule()


@lru_cache(maxsize=None)
def _gauss_arrays(order: int) -> Tuple[np.ndarray, np.ndarray]:
    if not MIN_GAUSS_ORDER <= order <= MAX_GAUSS_ORDER:
        raise InvalidOrderError(
            f"Ordre de Gauss {order} hors de [{MIN_GAUSS_ORDER}, {MAX_GAUSS_ORDER}]."
        )
    x, w = np.polynomial.legendre.leggauss(order)
    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_nodes(order: int) -> List[Tuple[float, float]]:
    """Règle de Gauss-Legendre à `order` points ramenée sur [0,1] : (noeud, poids)."""
    nodes, weights = _gauss_arrays(order)
    return [(float(x), float(w)) for x, w in zip(nodes, weights)]


def _evaluate(f: Callable[[np.ndarray], np.ndarray], points: np.ndarray, n: int) -> np.ndarray:
    """Évalue f, diffuse un scalaire, refuse les valeurs non finies."""
    values = np.asarray(f(points), dtype=float)
    if values.ndim == 0:
        values = np.full(n, float(values))
    if values.shape != (n,):
        raise InvalidInputError(
            f"Intégrande : forme {values.shape} renvoyée, ({n},) attendue."
        )
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("Intégrande non finie en un noeud intérieur.")
    return values


class _Panel:
    """Sous-intervalle [a,b] d'une moitié substituée, avec son estimation."""

    __slots__ = ("g", "a", "b", "value", "error")

    def __init__(self, g: Integrand1D, a: float, b: float) -> None:
        self.g = g
        self.a = a
        self.b = b
        center = 0.5 * (a + b)
        half = 0.5 * (b - a)
        fx = _evaluate(g, center + half * _GK_NODES, _GK_NODES.size)
        kronrod = half * float(np.dot(_GK_WK, fx))
        gauss = half * float(np.dot(_GK_WG, fx))
        resabs = half * float(np.dot(_GK_WK, np.abs(fx)))
        mean = kronrod / (2.0 * half) if half > 0 else 0.0
        resasc = half * float(np.dot(_GK_WK, np.abs(fx - mean)))
        err = abs(kronrod - gauss)
        # Estimation QUADPACK (qk15) avec plancher d'arrondi.
        if resasc != 0.0 and err != 0.0:
            err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
        if resabs > _UFLOW / (50.0 * _EPS):
            err = max(50.0 * _EPS * resabs, err)
        self.value = kronrod
        self.error = err


def integrate_1d(
    f: Integrand1D,
    config: Optional[QuadConfig] = None,
    *,
    reflected: Optional[Integrand1D] = None,
    power: float = 2.0,
) -> QuadResult:
    """Intègre f sur (0,1).

    `reflected`, si fourni, vaut s -> f(1-s) évaluée sans former 1-t par
    soustraction ; la moitié droite l'utilise près de t = 1.
    `power` est l'exposant p des substitutions t = u^p et 1-t = v^p (p >= 1).
    """
    config = config or QuadConfig()
    if not (math.isfinite(power) and power >= 1.0):
        raise InvalidInputError(f"Exposant de substitution {power!r} invalide (>= 1 attendu).")

    def jacobian(u: np.ndarray) -> np.ndarray:
        return power * np.power(u, power - 1.0)

    def left(u: np.ndarray) -> np.ndarray:
        return _evaluate(f, np.power(u, power), u.size) * jacobian(u)

    if reflected is not None:
        def right(v: np.ndarray) -> np.ndarray:
            return _evaluate(reflected, np.power(v, power), v.size) * jacobian(v)
    else:
        def right(v: np.ndarray) -> np.ndarray:
            return _evaluate(f, 1.0 - np.power(v, power), v.size) * jacobian(v)

    split = 0.5 ** (1.0 / power)
    panels = [_Panel(left, 0.0, split), _Panel(right, 0.0, split)]
    evaluations = 2 * _GK_NODES.size

    # Tas max sur l'erreur ; le compteur départage les égalités.
    counter = itertools.count()
    heap = [(-p.error, next(counter), p) for p in panels]
    heapq.heapify(heap)

    bisections = 0
    while True:
        total = math.fsum(entry[2].value for entry in heap)
        error = math.fsum(entry[2].error for entry in heap)
        if error <= max(config.abs_tol, config.rel_tol * abs(total)):
            logger.debug("integrate_1d: value=%r err=%.3g panels=%d", total, error, len(heap))
            return QuadResult(value=total, abs_error_estimate=error, evaluations=evaluations)

        if bisections >= config.max_subdivisions:
            partial = QuadResult(value=total, abs_error_estimate=error, evaluations=evaluations)
            raise NonConvergenceError(
                f"Quadrature 1-D : tolérance non atteinte après {bisections} subdivisions "
                f"(erreur estimée {error:.3g}).",
                partial=partial,
            )

        _, _, worst = heapq.heappop(heap)
        mid = 0.5 * (worst.a + worst.b)
        if not worst.a < mid < worst.b:
            partial = QuadResult(value=total, abs_error_estimate=error, evaluations=evaluations)
            raise NonConvergenceError(
                "Quadrature 1-D : sous-intervalle irréductible (limite d'arrondi).",
                partial=partial,
            )
        for child in (_Panel(worst.g, worst.a, mid), _Panel(worst.g, mid, worst.b)):
            heapq.heappush(heap, (-child.error, next(counter), child))
        evaluations += 2 * _GK_NODES.size
        bisections += 1


def _refinement_levels(config: QuadConfig) -> List[int]:
    order = min(config.cubature_order, MAX_GAUSS_ORDER)
    levels = sorted({max(MIN_GAUSS_ORDER, order >> j) for j in range(max(config.cubature_refinements, 2))})
    if len(levels) == 1:
        levels.append(levels[0] + 1)
    return levels


def _tensor_rule(f: IntegrandND, d: int, order: int) -> float:
    """Règle produit à `order` points par axe, évaluée par blocs dans un ordre fixe."""
    nodes, weights = _gauss_arrays(order)

    inner = 1
    while inner < d and order ** (inner + 1) <= _CHUNK_POINTS:
        inner += 1
    outer = d - inner

    grids = np.meshgrid(*([nodes] * inner), indexing="ij")
    inner_points = np.stack([g.ravel() for g in grids], axis=1)
    inner_weights = weights
    for _ in range(inner - 1):
        inner_weights = np.multiply.outer(inner_weights, weights)
    inner_weights = np.ravel(inner_weights)
    n_inner = inner_points.shape[0]

    partials = []
    points = np.empty((n_inner, d))
    points[:, outer:] = inner_points
    for prefix in itertools.product(range(order), repeat=outer):
        prefix_weight = 1.0
        for axis, idx in enumerate(prefix):
            points[:, axis] = nodes[idx]
            prefix_weight *= weights[idx]
        values = _evaluate(f, points, n_inner)
        partials.append(prefix_weight * float(np.dot(inner_weights, values)))
    return math.fsum(partials)


def integrate_cube(f: IntegrandND, d: int, config: Optional[QuadConfig] = None) -> QuadResult:
    """Intègre f sur [0,1]^d ; f reçoit un tableau de points de forme (n, d)."""
    config = config or QuadConfig()
    if d < 1:
        raise InvalidInputError(f"Dimension {d} invalide (>= 1 attendu).")
    if d > MAX_CUBE_DIM:
        raise DimensionTooLargeError(
            f"Dimension {d} > {MAX_CUBE_DIM} : coût de cubature non supporté."
        )

    evaluations = 0
    previous: Optional[float] = None
    value = 0.0
    estimate = 0.0
    for order in _refinement_levels(config):
        value = _tensor_rule(f, d, order)
        evaluations += order ** d
        if previous is not None:
            estimate = abs(value - previous)
            if estimate <= max(config.abs_tol, config.rel_tol * abs(value)):
                break
        previous = value
    else:
        logger.warning(
            "integrate_cube: d=%d, niveaux épuisés, écart entre niveaux %.3g", d, estimate
        )

    logger.debug("integrate_cube: d=%d value=%r err=%.3g evals=%d", d, value, estimate, evaluations)
    return QuadResult(value=value, abs_error_estimate=estimate, evaluations=evaluations)
