"""
exceptions.py — Exceptions du domaine

Pourquoi ce fichier ?
- Avoir des erreurs "propres" et lisibles, indépendantes de numpy/scipy.
- Permettre à `cli.py` de traduire chaque famille d'erreur en code de sortie
  (2 pour une entrée invalide, 3/1 pour une non-convergence).
"""

from __future__ import annotations

from typing import Any, Optional


class CauchyBetaError(Exception):
    """Erreur applicative générique."""


class ValidationError(CauchyBetaError):
    """Entrée invalide."""


class InvalidInputError(ValidationError):
    """Argument ou valeur d'intégrande non fini(e)."""


class DomainError(ValidationError):
    """Point hors du domaine (borne inférieure ouverte)."""


class ArityError(ValidationError):
    """Nombre de variables non supporté par la famille."""


class ClosedFormUnavailableError(ArityError):
    """Aucune forme close pour cette famille à cette arité."""


class DimensionTooLargeError(ValidationError):
    """Dimension de cubature au-delà du plafond supporté."""


class InvalidOrderError(ValidationError):
    """Ordre de Gauss hors de l'intervalle supporté."""


class DegenerateProblemError(ValidationError):
    """Trop peu de paires admissibles pour le fitter."""


class NumericalError(CauchyBetaError):
    """Échec d'un calcul numérique."""


class NonConvergenceError(NumericalError):
    """Tolérance non atteinte ; le résultat partiel est conservé."""

    def __init__(self, message: str, partial: Optional[Any] = None) -> None:
        super().__init__(message)
        self.partial = partial


class DataExportError(CauchyBetaError):
    """Erreur lors de l'écriture d'un CSV ou d'un rapport JSON."""
