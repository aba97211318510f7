"""
config.py — Configuration numérique et applicative

Pourquoi ce fichier ?
- Centraliser les tolérances de quadrature, les paramètres du fitter
  et les boîtes d'échantillonnage de la vérification.
- Éviter des constantes "magiques" dispersées dans les modules de calcul.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

from .exceptions import ValidationError


@dataclass(frozen=True)
class QuadConfig:
    """Tolérances et tailles des moteurs d'intégration."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 200
    cubature_order: int = 32
    cubature_refinements: int = 3

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise ValidationError(f"rel_tol invalide ({self.rel_tol}), attendu > 0.")
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise ValidationError(f"abs_tol invalide ({self.abs_tol}), attendu > 0.")
        if self.max_subdivisions < 1:
            raise ValidationError("max_subdivisions doit être >= 1.")
        if self.cubature_order < 2:
            raise ValidationError("cubature_order doit être >= 2.")
        if self.cubature_refinements < 1:
            raise ValidationError("cubature_refinements doit être >= 1.")

    def with_tolerance(self, rel_tol: float) -> "QuadConfig":
        """Copie avec une tolérance relative différente (option --tol)."""
        return QuadConfig(
            rel_tol=rel_tol,
            abs_tol=min(self.abs_tol, rel_tol),
            max_subdivisions=self.max_subdivisions,
            cubature_order=self.cubature_order,
            cubature_refinements=self.cubature_refinements,
        )


@dataclass(frozen=True)
class FitDefaults:
    """Valeurs par défaut du Gauss-Newton amorti."""

    max_iters: int = 500
    tol: float = 1e-12
    damping_init: float = 1e-3
    damping_max: float = 1e15


# Boîtes de tirage quasi-aléatoire par famille (bornes ouvertes respectées).
SAMPLING_BOXES: Dict[str, Tuple[float, float]] = {
    "euler": (0.5, 10.0),
    "mult": (1.1, 20.0),
    "add1": (-5.0, 5.0),
    "add2": (-5.0, 5.0),
    "log1": (1.1, 50.0),
    "log2": (1.1, 50.0),
    "sine": (-math.pi, math.pi),
}

# Boîte utilisée pour les familles à k > 2 variables (cubature plus coûteuse).
SAMPLING_BOX_MULTIVARIATE: Tuple[float, float] = (1.5, 6.0)


@dataclass(frozen=True)
class AppConfig:
    """Configuration de l'application (construite par la CLI)."""

    quad: QuadConfig = field(default_factory=QuadConfig)
    fit: FitDefaults = field(default_factory=FitDefaults)
    log_level: str = "INFO"
    log_file: str = "cauchybeta.log"
