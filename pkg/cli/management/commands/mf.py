"""Commande sur les factorisations matricielles lues dans des fichiers."""

from pathlib import Path

from django.core.management.base import CommandError

from mfcore.serialization import parse_matfact

from cli.commands import ReportCommand, cmd, int_arg, koszul, let, name_arg, str_arg
from cli.interpreter import EXIT_USAGE
from cli.texts import infer_ring

ACTIONS = ["construct", "tensor", "dual", "knorrer", "exclude", "ext", "end-algebra"]

# Nombre de fichiers attendus par action.
ARITY = {"tensor": 2, "dual": 1, "knorrer": 1, "exclude": 1, "ext": 2}


class Command(ReportCommand):
    """Construit, combine et analyse des factorisations matricielles."""

    help = (
        "Factorisations matricielles : construct (Koszul ou nilpotente), tensor, dual, "
        "knorrer, exclude, ext, end-algebra. Les fichiers suivent le format "
        "ring / W = / d0 / d1."
    )

    def add_arguments(self, parser):
        """Ajoute les arguments à la commande."""
        parser.add_argument("action", choices=ACTIONS, help="Opération à effectuer")
        parser.add_argument("files", nargs="*", help="Fichiers de factorisations")
        parser.add_argument(
            "--p", action="append", default=[], help="Polynôme p_i de K(p; q) (répétable)"
        )
        parser.add_argument(
            "--q", action="append", default=[], help="Polynôme q_i de K(p; q) (répétable)"
        )
        parser.add_argument(
            "--ring", type=str, default=None, help="Variables de l'anneau, séparées par des virgules"
        )
        parser.add_argument(
            "--k", type=int, default=None, help="Factorisation nilpotente d'algèbre C[y]/(y^k)"
        )
        parser.add_argument(
            "--vars", type=str, default="", help="Variables à exclure, séparées par des virgules"
        )
        super().add_arguments(parser)

    def _load(self, session, files):
        for name, path in zip("AB", files):
            try:
                text = Path(path).read_text(encoding="utf-8")
            except OSError as e:
                raise CommandError(f"Fichier illisible: {e}", returncode=EXIT_USAGE) from e
            session.define(name, session.wrap(parse_matfact(text)))

    def _construct(self, session, options):
        if options["k"] is not None:
            return [let("M", "nilpotent", int_arg(options["k"])), cmd("show", name_arg("M"))]
        if not options["p"]:
            raise CommandError("construct: --p/--q ou --k requis", returncode=EXIT_USAGE)
        names = [n.strip() for n in options["ring"].split(",")] if options["ring"] else None
        session.rings["R"] = infer_ring(*options["p"], *options["q"], names=names)
        return [koszul("M", options["p"], options["q"], "R"), cmd("show", name_arg("M"))]

    def run(self, options):
        action = options["action"]
        files = options["files"]
        session = self.session(options)
        if action in ARITY and len(files) != ARITY[action]:
            raise CommandError(
                f"{action}: {ARITY[action]} fichier(s) attendu(s), {len(files)} donné(s)",
                returncode=EXIT_USAGE,
            )
        self._load(session, files)
        A, B = name_arg("A"), name_arg("B")
        if action == "construct":
            statements = self._construct(session, options)
        elif action == "tensor":
            statements = [let("M", "tensor", A, B), cmd("show", name_arg("M"))]
        elif action == "exclude":
            names = [str_arg(v.strip()) for v in options["vars"].split(",") if v.strip()]
            statements = [let("M", "exclude", A, *names), cmd("show", name_arg("M"))]
        elif action in ("dual", "knorrer"):
            statements = [let("M", action, A), cmd("show", name_arg("M"))]
        elif action == "ext":
            statements = [cmd("ext", A, B)]
        else:
            if options["k"] is not None:
                statements = [let("A", "nilpotent", int_arg(options["k"])), cmd("end-algebra", A)]
            elif len(files) == 1:
                statements = [cmd("end-algebra", A)]
            else:
                raise CommandError("end-algebra: un fichier ou --k requis", returncode=EXIT_USAGE)
        return self.run_statements(session, statements, options, title=f"mf {action}")
