"""Commande de géométrie du support : lieu critique, nombre de Milnor, graphes."""

from django.core.management.base import CommandError

from cli.commands import ReportCommand, cmd, name_arg, str_arg
from cli.interpreter import EXIT_USAGE
from cli.problems import Statement

ACTIONS = ["crit", "milnor", "graph", "image", "clean", "graph-check"]


class Command(ReportCommand):
    """
    Calculs sur un potentiel W donné en texte.

    L'anneau est celui de ``--ring``, ou à défaut celui des identifiants de
    l'expression pris dans l'ordre de première apparition. ``image`` prend le
    potentiel de la correspondance puis celui de la source.
    """

    help = "Support : crit, milnor, graph, image, clean, graph-check"

    def add_arguments(self, parser):
        """Ajoute les arguments à la commande."""
        parser.add_argument("action", choices=ACTIONS, help="Opération à effectuer")
        parser.add_argument("expressions", nargs="+", help="Potentiel(s) W")
        parser.add_argument(
            "--ring", type=str, default=None, help="Variables de l'anneau, séparées par des virgules"
        )
        parser.add_argument(
            "--flip", action="store_true", help="Change p en -p dans la source (image)"
        )
        super().add_arguments(parser)

    def run(self, options):
        action = options["action"]
        expressions = options["expressions"]
        expected = 2 if action == "image" else 1
        if len(expressions) != expected:
            raise CommandError(
                f"{action}: {expected} expression(s) attendue(s), {len(expressions)} donnée(s)",
                returncode=EXIT_USAGE,
            )
        session = self.session(options)
        statements = []
        args = [str_arg(e) for e in expressions]
        if options["ring"] and action != "image":
            variables = [(n.strip(), 0) for n in options["ring"].split(",") if n.strip()]
            statements.append(
                Statement("ring", 1, f"ring R = {options['ring']}", name="R", fields={"variables": variables})
            )
            statements.append(
                Statement(
                    "poly",
                    1,
                    f'let W = poly "{expressions[0]}" in R',
                    name="W",
                    fields={"expr": expressions[0], "ring": "R"},
                )
            )
            args = [name_arg("W")]
        extra = {"flip": int(options["flip"])} if action == "image" else {}
        statements.append(cmd(action, *args, **extra))
        return self.run_statements(session, statements, options, title=f"support {action}")
