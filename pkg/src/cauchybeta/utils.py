"""
utils.py — Fonctions utilitaires (conversion, validation, formatage, E/S)

Pourquoi ce fichier ?
- Éviter de dupliquer les conversions d'arguments CLI partout.
- Centraliser le format des nombres (17 chiffres significatifs, relisibles
  à l'identique) et l'écriture atomique des fichiers de sortie.
- Fournir les tirages quasi-aléatoires reproductibles de la vérification.
"""

from __future__ import annotations

import math
import os
import tempfile
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from .exceptions import DataExportError, ValidationError
from .models import AxisRange


def to_float(value: Any, field: str) -> float:
    try:
        result = float(value)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"Champ '{field}' invalide (réel attendu) : {value!r}.") from e
    if not math.isfinite(result):
        raise ValidationError(f"Champ '{field}' invalide (réel fini attendu) : {value!r}.")
    return result


def to_int(value: Any, field: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"Champ '{field}' invalide (entier attendu) : {value!r}.") from e


def parse_point(text: str) -> Tuple[float, ...]:
    """'2,3.5' -> (2.0, 3.5)."""
    parts = [p.strip() for p in (text or "").split(",")]
    if not parts or any(not p for p in parts):
        raise ValidationError(f"Liste d'arguments invalide : {text!r}.")
    return tuple(to_float(p, f"x{i}") for i, p in enumerate(parts, start=1))


def parse_axis(text: str) -> AxisRange:
    """'x=2:3:0.5' -> AxisRange('x', 2, 3, 0.5)."""
    label, sep, body = (text or "").partition("=")
    if not sep or not label.strip():
        raise ValidationError(f"Axe invalide (attendu nom=start:stop:step) : {text!r}.")
    bounds = body.split(":")
    if len(bounds) != 3:
        raise ValidationError(f"Axe invalide (attendu nom=start:stop:step) : {text!r}.")
    start, stop, step = (to_float(b, f"{label}.{n}") for b, n in zip(bounds, ("start", "stop", "step")))
    return AxisRange(label.strip(), start, stop, step)


def parse_grid(text: str) -> Tuple[float, float, int]:
    """'1:2:16' -> (1.0, 2.0, 16)."""
    bounds = (text or "").split(":")
    if len(bounds) != 3:
        raise ValidationError(f"Grille invalide (attendu lo:hi:n) : {text!r}.")
    return to_float(bounds[0], "grid.lo"), to_float(bounds[1], "grid.hi"), to_int(bounds[2], "grid.n")


def format_number(value: float) -> str:
    """17 chiffres significatifs ; notation scientifique hors de [1e-4, 1e6)."""
    magnitude = abs(value)
    if value == 0.0 or 1e-4 <= magnitude < 1e6:
        return format(value, ".17g")
    return format(value, ".16e")


def rational_hint(value: float, max_denominator: int = 1000) -> Fraction:
    """Fraction la plus proche à dénominateur borné (fractions continues)."""
    return Fraction(value).limit_denominator(max_denominator)


def quasi_random_points(lo: float, hi: float, dim: int, n: int, seed: int) -> List[Tuple[float, ...]]:
    """n points d'une suite de Halton brouillée dans [lo, hi]^dim, reproductibles."""
    if n < 1:
        raise ValidationError(f"Nombre d'échantillons invalide : {n} (>= 1 attendu).")
    sampler = qmc.Halton(d=dim, scramble=True, seed=seed)
    unit = sampler.random(n)
    scaled = qmc.scale(unit, [lo] * dim, [hi] * dim)
    return [tuple(float(v) for v in row) for row in np.asarray(scaled)]


def write_atomic(path: str, text: str) -> None:
    """Écrit dans un fichier temporaire voisin puis renomme : jamais de sortie partielle."""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    except OSError as e:
        raise DataExportError(f"Impossible d'écrire {path} : {e}") from e
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except OSError as e:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise DataExportError(f"Impossible d'écrire {path} : {e}") from e


def format_table(headers: List[str], rows: Sequence[Sequence[str]]) -> str:
    """Petit rendu tabulaire en monospace."""
    if not rows:
        return "(aucune donnée)"

    widths = [len(h) for h in headers]
    for r in rows:
        for i, cell in enumerate(r):
            widths[i] = max(widths[i], len(cell))

    def fmt_row(r: Sequence[str]) -> str:
        return " | ".join(cell.ljust(widths[i]) for i, cell in enumerate(r)).rstrip()

    sep = "-+-".join("-" * w for w in widths)
    out = [fmt_row(headers), sep]
    out.extend(fmt_row(r) for r in rows)
    return "\n".join(out)
