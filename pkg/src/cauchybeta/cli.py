"""
cli.py — Interface en ligne de commande

Pourquoi ce fichier ?
- C'est la couche "présentation" : lecture des options, affichage, codes de sortie.
- Pas de calcul ici : tout passe par `BetaWorkbench`.

Sous-commandes : eval, tabulate, verify, coeff, fit.
Codes de sortie : 0 succès, 2 entrée invalide (domaine, arité, options),
3 non-convergence d'une quadrature (eval/tabulate), 1 échec de vérification,
fit non convergé ou erreur d'écriture.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from .config import AppConfig, FitDefaults
from .exceptions import (
    CauchyBetaError,
    DataExportError,
    NonConvergenceError,
    ValidationError,
)
from .logging_conf import configure_logging
from .models import (
    EvalRequest,
    Family,
    FamilySpec,
    FitProblem,
    Gauge,
    Method,
    QuotientClass,
    TabulationSpec,
)
from .services import BetaWorkbench, VerificationSummary
from .utils import format_number, format_table, parse_axis, parse_grid, parse_point

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_NON_CONVERGENCE = 3

FAMILY_CHOICES = [f.value for f in Family]


def _family_spec(name: str, arity: int) -> FamilySpec:
    return FamilySpec(Family(name), arity)


def cmd_eval(app: BetaWorkbench, args: argparse.Namespace) -> int:
    point = parse_point(args.args)
    spec = _family_spec(args.family, len(point))
    value = app.evaluate(EvalRequest(spec, point, Method(args.method), args.tol))
    print(format_number(value))
    return EXIT_OK


def cmd_tabulate(app: BetaWorkbench, args: argparse.Namespace) -> int:
    axes = tuple(parse_axis(text) for text in args.range)
    spec = _family_spec(args.family, len(axes))
    text = app.tabulate(TabulationSpec(spec, axes, Method(args.method), args.out))
    if not args.out:
        sys.stdout.write(text)
    return EXIT_OK


def render_verification(summary: VerificationSummary) -> str:
    headers = ["#", "point", "closed", "integral", "deviation"]
    rows = [
        [
            str(i),
            ",".join(format_number(v) for v in row.point),
            format_number(row.closed),
            format_number(row.integral),
            f"{row.deviation:.3e}",
        ]
        for i, row in enumerate(summary.rows, start=1)
    ]
    verdict = "PASS" if summary.passed else "FAIL"
    footer = f"max deviation {summary.max_deviation:.3e} (tol {summary.tol:g}) : {verdict}"
    return format_table(headers, rows) + "\n" + footer


def cmd_verify(app: BetaWorkbench, args: argparse.Namespace) -> int:
    if args.samples < 1:
        raise ValidationError(f"--samples {args.samples} : au moins 1 échantillon requis.")
    spec = _family_spec(args.family, args.arity)
    summary = app.verify(spec, args.samples, args.seed, args.tol)
    print(render_verification(summary))
    return EXIT_OK if summary.passed else EXIT_FAILURE


def cmd_coeff(app: BetaWorkbench, args: argparse.Namespace) -> int:
    value, hint = app.coefficient(args.k)
    print(f"{format_number(value)}  (≈ {hint})")
    return EXIT_OK


def cmd_fit(app: BetaWorkbench, args: argparse.Namespace) -> int:
    lo, hi, n = parse_grid(args.grid)
    problem = FitProblem(
        target=_family_spec(args.target, 2),
        quotient=QuotientClass(args.quotient_class),
        grid_lo=lo,
        grid_hi=hi,
        grid_n=n,
        max_iters=args.iters,
        tol=args.tol,
        damping_init=args.damping,
        gauge=Gauge(args.gauge),
    )
    report, text = app.fit(problem, args.out)
    if not args.out:
        sys.stdout.write(text)
    return EXIT_OK if report.converged else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    defaults = FitDefaults()
    p = argparse.ArgumentParser(
        prog="cauchybeta",
        description="Fonction Beta d'Euler et ses pendants de Cauchy",
    )
    p.add_argument("--log-level", default="INFO", help="DEBUG/INFO/WARNING/ERROR")
    p.add_argument("--log-file", default="cauchybeta.log", help="Fichier de logs ('' : aucun)")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="Évaluer un pendant en un point")
    pe.add_argument("--family", required=True, choices=FAMILY_CHOICES)
    pe.add_argument("--args", required=True, help="Réels séparés par des virgules")
    pe.add_argument("--method", default=Method.CLOSED.value, choices=[m.value for m in Method])
    pe.add_argument("--tol", type=float, default=None, help="Tolérance relative de quadrature")
    pe.set_defaults(handler=cmd_eval, non_convergence_exit=EXIT_NON_CONVERGENCE)

    pt = sub.add_parser("tabulate", help="Tabuler un pendant en CSV")
    pt.add_argument("--family", required=True, choices=FAMILY_CHOICES)
    pt.add_argument("--range", action="append", required=True, help="nom=start:stop:step (un par axe)")
    pt.add_argument("--method", default=Method.CLOSED.value, choices=[m.value for m in Method])
    pt.add_argument("--out", default=None, help="Fichier CSV (défaut : sortie standard)")
    pt.set_defaults(handler=cmd_tabulate, non_convergence_exit=EXIT_NON_CONVERGENCE)

    pv = sub.add_parser("verify", help="Forme close contre intégrale de définition")
    pv.add_argument("--family", required=True, choices=FAMILY_CHOICES)
    pv.add_argument("--arity", type=int, default=2)
    pv.add_argument("--samples", type=int, default=100)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--tol", type=float, default=1e-8)
    pv.set_defaults(handler=cmd_verify, non_convergence_exit=EXIT_FAILURE)

    pc = sub.add_parser("coeff", help="Coefficient c_k du pendant additif de première espèce")
    pc.add_argument("--k", type=int, required=True)
    pc.set_defaults(handler=cmd_coeff, non_convergence_exit=EXIT_FAILURE)

    pf = sub.add_parser("fit", help="Fit d'un quotient de Cauchy")
    pf.add_argument("--target", required=True, choices=FAMILY_CHOICES)
    pf.add_argument("--class", dest="quotient_class", required=True, choices=[q.value for q in QuotientClass])
    pf.add_argument("--grid", required=True, help="lo:hi:n")
    pf.add_argument("--iters", type=int, default=defaults.max_iters)
    pf.add_argument("--tol", type=float, default=defaults.tol)
    pf.add_argument("--damping", type=float, default=defaults.damping_init)
    pf.add_argument("--gauge", default=Gauge.ENDS.value, choices=[g.value for g in Gauge])
    pf.add_argument("--out", default=None, help="Fichier JSON (défaut : sortie standard)")
    pf.set_defaults(handler=cmd_fit, non_convergence_exit=EXIT_FAILURE)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    config = AppConfig(log_level=args.log_level, log_file=args.log_file)
    configure_logging(log_level=config.log_level, log_file=config.log_file)
    app = BetaWorkbench(config)
    logger.debug("Commande %s", args.command)

    try:
        return args.handler(app, args)
    except ValidationError as e:
        logger.warning("Entrée invalide: %s", e)
        print(f"Erreur: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergenceError as e:
        logger.error("Non-convergence: %s", e)
        print(f"Erreur: {e}", file=sys.stderr)
        return args.non_convergence_exit
    except DataExportError as e:
        logger.error("Erreur d'écriture: %s", e)
        print(f"Erreur: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except CauchyBetaError as e:
        logger.error("Erreur: %s", e)
        print(f"Erreur: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except KeyboardInterrupt:
        print("\nInterruption utilisateur.", file=sys.stderr)
        return 130
    except Exception:
        logger.exception("Unexpected error")
        print("Erreur inattendue. Consultez le fichier de logs.", file=sys.stderr)
        return EXIT_FAILURE
