"""
quotient_fit.py — Les pendants sont-ils des quotients de Cauchy ?

Pourquoi ce fichier ?
- Vérifier numériquement l'identité B = Γ(x)Γ(y)/Γ(x+y).
- Pour les autres pendants, chercher par moindres carrés une fonction
  positive f (discrétisée, paramétrée par u = log f) qui rend l'équation
  "pendant = quotient de f" la plus juste possible, et rapporter l'écart.

Le fitter n'affirme rien : il rapporte un résidu.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .config import FitDefaults, QuadConfig, SAMPLING_BOXES
from .exceptions import (
    DegenerateProblemError,
    DomainError,
    InvalidInputError,
    NonConvergenceError,
    ValidationError,
)
from .gamma import euler_beta_closed, euler_beta_integral, gamma_fn
from .models import Family, FamilySpec, FitProblem, FitReport, Gauge, QuotientClass
from .pendants import pendant_closed, validate_point
from .utils import quasi_random_points

logger = logging.getLogger(__name__)

PositiveFunction = Callable[[float], float]
TargetFunction = Callable[[float, float], float]

# Plancher du paramètre d'amortissement (évite une matrice normale singulière).
_DAMPING_FLOOR = 1e-12
# Deux noeuds plus proches que cette tolérance relative sont fusionnés.
_MERGE_TOL = 1e-12
# Au-delà, Γ(x) n'est plus représentable en double précision.
_GAMMA_FINITE_MAX = 171.0


def combine(quotient: QuotientClass, x: float, y: float) -> float:
    """Argument du dénominateur : x+y ou x·y."""
    return x * y if quotient.multiplicative_argument else x + y


def _call(f: PositiveFunction, v: float) -> float:
    try:
        value = float(f(v))
    except (ArithmeticError, ValueError) as e:
        raise InvalidInputError(f"f({v!r}) n'a pas pu être évaluée : {e}") from e
    if not math.isfinite(value):
        raise InvalidInputError(f"f({v!r}) = {value!r} n'est pas finie.")
    return value


def quotient_value(quotient: QuotientClass, f: PositiveFunction, x: float, y: float) -> float:
    """Valeur du quotient de Cauchy de f en (x, y)."""
    fx, fy, fc = _call(f, x), _call(f, y), _call(f, combine(quotient, x, y))
    if quotient.product_numerator:
        if min(fx, fy, fc) <= 0.0:
            raise InvalidInputError(
                f"Quotient '{quotient.value}' : f doit être > 0 (f(x)={fx!r}, f(y)={fy!r}, f(c)={fc!r})."
            )
        return fx * fy / fc
    if fc == 0.0:
        raise InvalidInputError(f"Quotient '{quotient.value}' : dénominateur f(c) nul.")
    return (fx + fy) / fc


def quotient_residual(
    target: FamilySpec, quotient: QuotientClass, f: PositiveFunction, x: float, y: float
) -> float:
    """pendant(x, y) - quotient(f; x, y) ; nul ssi l'équation est satisfaite en (x, y)."""
    x, y = validate_point(target, (x, y))
    c = combine(quotient, x, y)
    if not target.domain.admits(c):
        raise DomainError(
            f"Argument combiné {c:g} hors du domaine de '{target.family.value}' "
            f"(attendu {target.domain.describe()})."
        )
    return pendant_closed(target, (x, y)) - quotient_value(quotient, f, x, y)


def verify_euler_identity(
    samples: int,
    seed: int,
    config: Optional[QuadConfig] = None,
    points: Optional[Sequence[Tuple[float, float]]] = None,
) -> float:
    """Écart relatif maximal entre l'intégrale d'Euler, la forme close et Γ(x)Γ(y)/Γ(x+y).

    Le quotient direct de `gamma_fn` n'est contrôlé que si Γ(x+y) est représentable.
    """
    if samples < 1:
        raise ValidationError(f"samples={samples} : au moins 1 échantillon requis.")
    if points is None:
        lo, hi = SAMPLING_BOXES[Family.EULER_EXP.value]
        points = quasi_random_points(lo, hi, 2, samples, seed)
    worst = 0.0
    for x, y in points[:samples]:
        closed = euler_beta_closed(x, y)
        integral = euler_beta_integral(x, y, config)
        worst = max(worst, abs(integral.value - closed) / closed)
        if x + y < _GAMMA_FINITE_MAX:
            quotient = quotient_value(QuotientClass.EXP, gamma_fn, x, y)
            worst = max(worst, abs(quotient - closed) / closed)
    logger.info("verify_euler_identity: %d échantillon(s), écart max %.3g", samples, worst)
    return worst


@dataclass
class _Lattice:
    """Noeuds de f, paires admissibles et opérateurs linéaires associés."""

    nodes: np.ndarray           # coordonnées des noeuds (croissantes)
    base_index: np.ndarray      # indice dans `nodes` de chaque noeud de base
    targets: np.ndarray         # valeur du pendant pour chaque paire
    numerator_x: np.ndarray     # (P, M) sélection de u(x)
    numerator_y: np.ndarray     # (P, M) sélection de u(y)
    combined: np.ndarray        # (P, M) interpolation linéaire de u à l'argument combiné


def _base_grid(problem: FitProblem) -> np.ndarray:
    if problem.quotient.multiplicative_argument:
        return np.geomspace(problem.grid_lo, problem.grid_hi, problem.grid_n)
    return np.linspace(problem.grid_lo, problem.grid_hi, problem.grid_n)


def _combined_grid(problem: FitProblem) -> np.ndarray:
    n = 2 * problem.grid_n - 1
    if problem.quotient.multiplicative_argument:
        return np.geomspace(problem.grid_lo ** 2, problem.grid_hi ** 2, n)
    return np.linspace(2.0 * problem.grid_lo, 2.0 * problem.grid_hi, n)


def _merge_nodes(base: np.ndarray, extra: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Union triée ; un noeud de base absorbe un noeud combiné quasi confondu."""
    tagged = sorted([(float(v), 0, i) for i, v in enumerate(base)] + [(float(v), 1, i) for i, v in enumerate(extra)])
    nodes: List[float] = []
    base_index = np.zeros(base.size, dtype=int)
    last_is_base = False
    for value, kind, i in tagged:
        if nodes and abs(value - nodes[-1]) <= _MERGE_TOL * max(1.0, abs(value)):
            if kind == 0:
                if not last_is_base:
                    nodes[-1] = value
                    last_is_base = True
                base_index[i] = len(nodes) - 1
            continue
        nodes.append(value)
        last_is_base = kind == 0
        if kind == 0:
            base_index[i] = len(nodes) - 1
    return np.array(nodes), base_index


def _build_lattice(problem: FitProblem, target_fn: Optional[TargetFunction] = None) -> _Lattice:
    quotient = problem.quotient
    base = _base_grid(problem)
    nodes, base_index = _merge_nodes(base, _combined_grid(problem))
    coord = np.log(nodes) if quotient.multiplicative_argument else nodes
    m = nodes.size

    rows_x: List[int] = []
    rows_y: List[int] = []
    rows_c: List[Tuple[int, float]] = []
    targets: List[float] = []
    for i in range(base.size):
        for j in range(i, base.size):
            x, y = float(base[i]), float(base[j])
            c = combine(quotient, x, y)
            if not problem.target.domain.admits(c):
                continue
            s = math.log(c) if quotient.multiplicative_argument else c
            if s < coord[0] - _MERGE_TOL * max(1.0, abs(coord[0])):
                continue
            if s > coord[-1] + _MERGE_TOL * max(1.0, abs(coord[-1])):
                continue
            k = int(np.searchsorted(coord, s, side="right")) - 1
            k = min(max(k, 0), m - 2)
            lam = (s - coord[k]) / (coord[k + 1] - coord[k])
            lam = min(max(lam, 0.0), 1.0)
            rows_x.append(int(base_index[i]))
            rows_y.append(int(base_index[j]))
            rows_c.append((k, lam))
            if target_fn is None:
                targets.append(pendant_closed(problem.target, (x, y)))
            else:
                targets.append(float(target_fn(x, y)))

    p = len(targets)
    if p < problem.grid_n:
        raise DegenerateProblemError(
            f"{p} paire(s) admissible(s) pour {problem.grid_n} noeuds : problème dégénéré."
        )

    numerator_x = np.zeros((p, m))
    numerator_y = np.zeros((p, m))
    combined = np.zeros((p, m))
    for row, (ix, iy, (k, lam)) in enumerate(zip(rows_x, rows_y, rows_c)):
        numerator_x[row, ix] = 1.0
        numerator_y[row, iy] = 1.0
        combined[row, k] += 1.0 - lam
        combined[row, k + 1] += lam
    return _Lattice(nodes, base_index, np.array(targets), numerator_x, numerator_y, combined)


def _residuals(lattice: _Lattice, quotient: QuotientClass, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Résidus r = cible - quotient et leur jacobienne dr/du."""
    ux = lattice.numerator_x @ u
    uy = lattice.numerator_y @ u
    uc = lattice.combined @ u
    with np.errstate(over="ignore", invalid="ignore"):
        if quotient.product_numerator:
            q = np.exp(ux + uy - uc)
            dq = q[:, None] * (lattice.numerator_x + lattice.numerator_y - lattice.combined)
        else:
            ex = np.exp(ux - uc)
            ey = np.exp(uy - uc)
            q = ex + ey
            dq = (
                ex[:, None] * lattice.numerator_x
                + ey[:, None] * lattice.numerator_y
                - q[:, None] * lattice.combined
            )
    return lattice.targets - q, -dq


def _check_problem(problem: FitProblem) -> None:
    if not problem.target.domain.admits(problem.grid_lo):
        raise DomainError(
            f"grid_lo={problem.grid_lo:g} hors du domaine de '{problem.target.family.value}' "
            f"(attendu {problem.target.domain.describe()})."
        )
    if problem.quotient.multiplicative_argument and problem.grid_lo <= 0.0:
        raise DomainError(
            f"Quotient '{problem.quotient.value}' : grille géométrique, grid_lo doit être > 0."
        )


def fit_quotient(
    problem: FitProblem,
    *,
    strict: bool = False,
    damping_max: Optional[float] = None,
    target_fn: Optional[TargetFunction] = None,
) -> FitReport:
    """Gauss-Newton amorti sur u = log f aux noeuds, jauge fixée par épinglage.

    `target_fn(x, y)` remplace la forme close de la cible (problèmes synthétiques).
    """
    _check_problem(problem)
    damping_max = damping_max if damping_max is not None else FitDefaults().damping_max
    lattice = _build_lattice(problem, target_fn)
    m = lattice.nodes.size

    if problem.gauge is Gauge.ENDS:
        pinned = [int(lattice.base_index[0]), int(lattice.base_index[-1])]
    else:
        pinned = [int(lattice.base_index[-1])]
    free = np.array([i for i in range(m) if i not in pinned])
    gauge = "u=0 en " + ", ".join(f"x={float(lattice.nodes[i])!r}" for i in pinned)

    u = np.zeros(m)
    r, jac = _residuals(lattice, problem.quotient, u)
    objective = float(r @ r)
    trace = [objective]
    damping = problem.damping_init
    converged = False
    iterations = 0
    identity = np.eye(free.size)

    while iterations < problem.max_iters:
        iterations += 1
        jf = jac[:, free]
        normal = jf.T @ jf + damping * identity
        gradient = jf.T @ r
        try:
            step = np.linalg.solve(normal, -gradient)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(normal, -gradient, rcond=None)[0]

        candidate = u.copy()
        candidate[free] += step
        r_new, jac_new = _residuals(lattice, problem.quotient, candidate)
        objective_new = float(r_new @ r_new) if np.all(np.isfinite(r_new)) else math.inf

        if objective_new < objective:
            decrease = objective - objective_new
            u, r, jac, objective = candidate, r_new, jac_new, objective_new
            trace.append(objective)
            damping = max(damping / 2.0, _DAMPING_FLOOR)
            logger.debug("fit: it=%d objectif=%.6g amortissement=%.3g", iterations, objective, damping)
            if decrease < problem.tol:
                converged = True
                break
        else:
            damping *= 2.0
            if damping > damping_max:
                # Plus aucune direction de descente : point stationnaire.
                converged = True
                break

    report = FitReport(
        logf_values=[float(v) for v in u],
        rms_residual=float(math.sqrt(objective / r.size)),
        max_residual=float(np.max(np.abs(r))),
        iterations=iterations,
        converged=converged,
        gauge=gauge,
        nodes=[float(v) for v in lattice.nodes],
        pairs=int(r.size),
        objective_trace=trace,
    )
    if converged:
        logger.info(
            "fit %s/%s : convergé en %d itérations, rms=%.3g",
            problem.target.family.value, problem.quotient.value, iterations, report.rms_residual,
        )
    else:
        logger.warning(
            "fit %s/%s : non convergé après %d itérations, rms=%.3g",
            problem.target.family.value, problem.quotient.value, iterations, report.rms_residual,
        )
        if strict:
            raise NonConvergenceError(
                f"Fit non convergé après {iterations} itérations.", partial=report
            )
    return report
