"""Commande sur les objets de Landau-Ginzburg et leurs correspondances."""

from django.core.management.base import CommandError

from cli.commands import ReportCommand, let, name_arg, str_arg
from cli.interpreter import EXIT_USAGE

ACTIONS = ["compose", "legendre", "identity", "apply"]


class Command(ReportCommand):
    """
    Compose des correspondances, applique une transformée de Legendre ou
    construit la correspondance identité.

    Les objets s'écrivent ``base [extras] : W`` et les correspondances
    ``source -> cible [extras] : W``.
    """

    help = "Correspondances : compose, legendre, identity, apply"

    def add_arguments(self, parser):
        """Ajoute les arguments à la commande."""
        parser.add_argument("action", choices=ACTIONS, help="Opération à effectuer")
        parser.add_argument("inputs", nargs="*", help="Objets, correspondances ou variables de base")
        parser.add_argument(
            "--target", type=str, default=None, help="Variables de la base cible (legendre)"
        )
        parser.add_argument(
            "--sign", type=int, choices=[1, -1], default=1, help="Signe de la transformée"
        )
        super().add_arguments(parser)

    def _expect(self, inputs, count, action):
        if len(inputs) != count:
            raise CommandError(
                f"{action}: {count} entrée(s) attendue(s), {len(inputs)} donnée(s)",
                returncode=EXIT_USAGE,
            )

    def run(self, options):
        action = options["action"]
        inputs = options["inputs"]
        if action == "compose":
            self._expect(inputs, 2, action)
            statements = [
                let("C1", "correspondence", str_arg(inputs[0])),
                let("C2", "correspondence", str_arg(inputs[1])),
                let("C", "compose", name_arg("C1"), name_arg("C2")),
            ]
        elif action == "legendre":
            self._expect(inputs, 1, action)
            if not options["target"]:
                raise CommandError("legendre: --target requis", returncode=EXIT_USAGE)
            statements = [
                let("O", "object", str_arg(inputs[0])),
                let("L", "legendre", name_arg("O"), target=options["target"], sign=options["sign"]),
            ]
        elif action == "apply":
            self._expect(inputs, 2, action)
            statements = [
                let("C", "correspondence", str_arg(inputs[0])),
                let("O", "object", str_arg(inputs[1])),
                let("P", "apply", name_arg("C"), name_arg("O")),
            ]
        else:
            self._expect(inputs, 1, action)
            statements = [let("I", "identity-corr", str_arg(inputs[0]))]
        return self.run_statements(self.session(options), statements, options, title=f"twocat {action}")
