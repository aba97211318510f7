"""
gamma.py — Log-gamma et fonction Beta d'Euler

Pourquoi ce fichier ?
- Fournir le côté "quotient de Gamma" de l'identité B(x,y) = Γ(x)Γ(y)/Γ(x+y).
- Tout est calculé en espace logarithmique puis exponentié en dernier
  (le quotient direct déborde dès des arguments modérés).
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .config import QuadConfig
from .exceptions import DomainError
from .models import QuadResult
from .quadrature import integrate_1d

# Approximation de Lanczos, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def check_positive(x: float, name: str = "x") -> float:
    """Valide un réel strictement positif et fini (type PositiveReal)."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name}={x!r} hors du domaine (réel > 0, borne ouverte 0).")
    return x


def log_gamma(x: float) -> float:
    """ln Γ(x) pour x > 0."""
    x = check_positive(x)
    if x < 0.5:
        # Pas de réflexion : on remonte d'un cran par Γ(x+1) = x Γ(x).
        return log_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    series = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        series += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(series)


def gamma_fn(x: float) -> float:
    """Γ(x) = exp(ln Γ(x))."""
    return math.exp(log_gamma(x))


def log_euler_beta(x: float, y: float) -> float:
    """ln B(x,y) = ln Γ(x) + ln Γ(y) - ln Γ(x+y)."""
    x = check_positive(x, "x")
    y = check_positive(y, "y")
    # Addition commutative : symétrie exacte en (x, y).
    return (log_gamma(x) + log_gamma(y)) - log_gamma(x + y)


def euler_beta_closed(x: float, y: float) -> float:
    """B(x,y) par le quotient de Gamma."""
    return math.exp(log_euler_beta(x, y))


def euler_beta_integral(x: float, y: float, config: Optional[QuadConfig] = None) -> QuadResult:
    """B(x,y) par son intégrale de définition sur (0,1)."""
    x = check_positive(x, "x")
    y = check_positive(y, "y")
    a, b = x - 1.0, y - 1.0

    def integrand(t: np.ndarray) -> np.ndarray:
        return np.power(t, a) * np.power(1.0 - t, b)

    def reflected(s: np.ndarray) -> np.ndarray:
        return np.power(1.0 - s, a) * np.power(s, b)

    # p(1+a) >= 1 et p(1+b) >= 1 : intégrande bornée après substitution.
    power = max(2.0, 1.0 / min(x, y))
    return integrate_1d(integrand, config, reflected=reflected, power=power)
