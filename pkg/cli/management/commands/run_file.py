"""Commande exécutant un fichier de problèmes."""

from pathlib import Path

from django.core.management.base import CommandError

from cli.commands import ReportCommand
from cli.interpreter import EXIT_USAGE, run_text


class Command(ReportCommand):
    """Exécute un fichier de problèmes et rapporte chaque résultat."""

    help = (
        "Exécute un fichier de problèmes (ring, let, cmd, assert). Codes de sortie : "
        "0 assertions vérifiées, 3 assertion en échec, 2 erreur d'analyse, 1 échec de calcul"
    )

    def add_arguments(self, parser):
        """Ajoute les arguments à la commande."""
        parser.add_argument("path", type=str, help="Chemin du fichier de problèmes")
        super().add_arguments(parser)

    def run(self, options):
        path = Path(options["path"])
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise CommandError(f"Fichier illisible: {e}", returncode=EXIT_USAGE) from e
        outcome = run_text(text, seed=options.get("seed") or 0, registry=self.registry(options))
        return self.render_outcome(outcome, options, title=path.name)
