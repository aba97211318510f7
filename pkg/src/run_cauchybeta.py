"""
run_cauchybeta.py — Script de lancement

Équivalent de `python -m cauchybeta`, sans configurer PYTHONPATH :
exécuté depuis la racine (`python src/run_cauchybeta.py eval ...`), Python
ajoute `src/` au chemin des modules. Aucune logique ici.
"""

from __future__ import annotations

from cauchybeta.cli import main


if __name__ == "__main__":
    raise SystemExit(main())
