"""
cauchybeta/

Fonction Beta d'Euler et ses pendants de Cauchy (multiplicatif, additifs,
logarithmiques, addition du sinus), par intégrale et par forme close.

Organisation : quadrature.py (intégration), gamma.py (log-gamma, Beta),
pendants.py (familles), quotient_fit.py (quotients de Cauchy),
services.py (cas d'usage), cli.py (ligne de commande).
"""

__version__ = "1.0.0"
