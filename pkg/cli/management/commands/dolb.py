"""Commande lançant les vérifications de Dolbeault sur des graines."""

from django.conf import settings

from dolbeault.harness import run_batch

from cli.commands import ReportCommand
from cli.interpreter import EXIT_ASSERTION, EXIT_OK, HARNESS_COMMANDS
from cli.reports import harness_json, harness_text


class Command(ReportCommand):
    """Vérifications sur instances aléatoires, une instance par graine."""

    help = (
        "Vérifications de Dolbeault : verify-mc, verify-corrections, verify-monoidal, "
        "first-order, corollaries"
    )

    def add_arguments(self, parser):
        """Ajoute les arguments à la commande."""
        parser.add_argument("action", choices=list(HARNESS_COMMANDS), help="Vérification à lancer")
        parser.add_argument("--dim", type=int, default=2, help="Dimension du polydisque")
        parser.add_argument(
            "--seeds",
            type=int,
            default=None,
            help="Nombre de graines 0..N-1 (réglage HARNESS_DEFAULT_SEEDS par défaut)",
        )
        parser.add_argument(
            "--n", type=int, choices=[1, 2], default=1, help="Niveau de la structure monoïdale"
        )
        parser.add_argument(
            "--curved", action="store_true", help="Connexion de Christoffel aléatoire"
        )
        parser.add_argument(
            "--jobs", type=int, default=None, help="Nombre de travailleurs (réglage HARNESS_N_JOBS)"
        )
        super().add_arguments(parser)

    def run(self, options):
        action = options["action"]
        kind = HARNESS_COMMANDS[action]
        if options["seed"] is not None:
            seeds = [options["seed"]]
        else:
            seeds = list(range(options["seeds"] or settings.HARNESS_DEFAULT_SEEDS))
        extra = {"n": options["dim"], "registry": self.registry(options)}
        if kind == "monoidal":
            extra["level"] = options["n"]
        if kind == "corrections":
            extra["curved"] = options["curved"]
        reports = run_batch(kind, seeds, options["jobs"], **extra)
        report = harness_json(reports) if options["json"] else harness_text(reports)
        failed = [r.seed for r in reports if not r.passed]
        error = f"Graines en échec: {failed}" if failed else ""
        return report, EXIT_ASSERTION if failed else EXIT_OK, error
