"""Base commune des commandes de calcul : options, registre, historique et code de sortie."""

import logging

from django.core.management.base import BaseCommand, CommandError

from dolbeault.exceptions import DolbeaultError
from dolbeault.registry import load_registry

from cli.history import finish_run, start_run
from cli.interpreter import (
    COMPUTATION_ERRORS,
    EXIT_ASSERTION,
    EXIT_COMPUTATION,
    EXIT_OK,
    EXIT_USAGE,
    USAGE_ERRORS,
    Session,
)
from cli.problems import Arg, Statement
from cli.reports import render

logger = logging.getLogger(__name__)

# Options ajoutées par Django à toutes les commandes.
_DJANGO_OPTIONS = {"verbosity", "settings", "pythonpath", "traceback", "no_color", "force_color", "skip_checks"}

STATUS_BY_EXIT = {
    EXIT_OK: "success",
    EXIT_ASSERTION: "assertion_failed",
    EXIT_COMPUTATION: "failed",
    EXIT_USAGE: "failed",
}


def name_arg(name):
    return Arg("name", name)


def str_arg(text):
    return Arg("str", text)


def int_arg(value):
    return Arg("int", int(value))


def let(name, op, *args, text=None, **options):
    """Instruction ``let`` construite par programme."""
    text = text or f"let {name} = {op} {' '.join(str(a) for a in args)}".strip()
    return Statement("let", 1, text, name=name, op=op, args=args, options=options)


def koszul(name, p, q, ring):
    text = f"let {name} = koszul [{', '.join(p)}] ; [{', '.join(q)}] in {ring}"
    return Statement("koszul", 1, text, name=name, fields={"p": list(p), "q": list(q), "ring": ring})


def cmd(op, *args, text=None, **options):
    text = text or f"cmd {op} {' '.join(str(a) for a in args)}".strip()
    return Statement("cmd", 1, text, op=op, args=args, options=options)


def numbered(statements):
    """Renumérote les instructions dans l'ordre d'exécution."""
    return [
        Statement(s.kind, k, s.text, s.name, s.op, s.args, s.options, s.fields)
        for k, s in enumerate(statements, start=1)
    ]


class ReportCommand(BaseCommand):
    """
    Commande produisant un rapport.

    Les sous-classes implémentent ``run(options)`` et retournent
    ``(rapport, code de sortie, message d'erreur)``; la base gère ``--json``,
    ``--seed``, ``--registry`` et l'historique des exécutions.
    """

    run_name = None

    def add_arguments(self, parser):
        parser.add_argument("--json", action="store_true", help="Rapport au format JSON")
        parser.add_argument(
            "--seed", type=int, default=None, help="Graine des vérifications aléatoires"
        )
        parser.add_argument(
            "--registry",
            type=str,
            default=None,
            help="Fichier du registre des conventions (réglage DOLBEAULT_REGISTRY_PATH par défaut)",
        )

    def registry(self, options):
        try:
            return load_registry(options.get("registry"))
        except DolbeaultError as e:
            raise CommandError(f"Registre illisible: {e}", returncode=EXIT_USAGE) from e

    def session(self, options):
        return Session(seed=options.get("seed") or 0, registry=self.registry(options))

    def render_outcome(self, outcome, options, title=None):
        return render(outcome, options.get("json", False), title), outcome.exit_code, outcome.error

    def run_statements(self, session, statements, options, title=None):
        outcome = session.run(numbered(statements))
        return self.render_outcome(outcome, options, title)

    def run(self, options):
        raise NotImplementedError

    def handle(self, *args, **options):
        arguments = {k: v for k, v in options.items() if k not in _DJANGO_OPTIONS}
        name = self.run_name or self.__module__.rsplit(".", 1)[-1]
        record = start_run(name, arguments, options.get("seed"))
        try:
            report, exit_code, error = self.run(options)
        except CommandError as e:
            finish_run(record, "failed", e.returncode, error=str(e))
            raise
        except USAGE_ERRORS as e:
            finish_run(record, "failed", EXIT_USAGE, error=str(e))
            raise CommandError(f"Erreur d'usage: {e}", returncode=EXIT_USAGE) from e
        except COMPUTATION_ERRORS as e:
            finish_run(record, "failed", EXIT_COMPUTATION, error=str(e))
            raise CommandError(f"Erreur de calcul: {e}", returncode=EXIT_COMPUTATION) from e

        self.stdout.write(report)
        logger.info(f"Commande {name} terminée, code {exit_code}")
        finish_run(record, STATUS_BY_EXIT[exit_code], exit_code, report=report, error=error)
        if exit_code == EXIT_ASSERTION:
            raise CommandError("Au moins une vérification a échoué", returncode=exit_code)
        if exit_code != EXIT_OK:
            raise CommandError(error or f"Échec (code {exit_code})", returncode=exit_code)