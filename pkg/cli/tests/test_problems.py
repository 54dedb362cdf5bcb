"""Tests pour la grammaire des fichiers de problèmes."""

from django.test import SimpleTestCase

from poly.modules import INFINITE

from cli.exceptions import ProblemSyntaxError
from cli.problems import Arg, parse_problem, parse_statement


class ParseStatementTests(SimpleTestCase):
    """Tests pour parse_statement."""

    def test_ring(self):
        """Teste une déclaration d'anneau avec degré cohomologique."""
        stmt = parse_statement("ring R = y, a:2")
        self.assertEqual(stmt.kind, "ring")
        self.assertEqual(stmt.name, "R")
        self.assertEqual(stmt.fields["variables"], [("y", 0), ("a", 2)])

    def test_poly_before_generic_let(self):
        """Teste que la forme poly passe avant la forme générique."""
        stmt = parse_statement('let W = poly "x^2 + y^2" in R')
        self.assertEqual(stmt.kind, "poly")
        self.assertEqual(stmt.fields, {"expr": "x^2 + y^2", "ring": "R"})

    def test_koszul(self):
        """Teste les listes p et q d'une factorisation de Koszul."""
        stmt = parse_statement("let K = koszul [x, y^2] ; [x, y] in R")
        self.assertEqual(stmt.kind, "koszul")
        self.assertEqual(stmt.fields["p"], ["x", "y^2"])
        self.assertEqual(stmt.fields["q"], ["x", "y"])

    def test_matfact(self):
        """Teste la forme matfact et ses trois chaînes."""
        stmt = parse_statement('let M = matfact R "x^2" ; "x" ; "x"')
        self.assertEqual(stmt.kind, "matfact")
        self.assertEqual(stmt.fields["d0"], "x")

    def test_generic_let(self):
        """Teste une opération avec arguments positionnels et options."""
        stmt = parse_statement('let L = legendre O target=y sign=-1')
        self.assertEqual(stmt.kind, "let")
        self.assertEqual(stmt.op, "legendre")
        self.assertEqual(stmt.args, (Arg("name", "O"),))
        self.assertEqual(stmt.options, {"target": "y", "sign": -1})

    def test_cmd_arguments(self):
        """Teste les chaînes, entiers et noms d'une commande."""
        stmt = parse_statement('cmd koszul-homology R "y" 3 K')
        self.assertEqual(stmt.op, "koszul-homology")
        self.assertEqual(
            stmt.args, (Arg("name", "R"), Arg("str", "y"), Arg("int", 3), Arg("name", "K"))
        )

    def test_assert_ext(self):
        """Teste une assertion de dimensions, infinies comprises."""
        stmt = parse_statement("assert ext A B = (INFINITE, 0)")
        self.assertEqual(stmt.kind, "assert_ext")
        self.assertEqual(stmt.args, ("A", "B"))
        self.assertEqual(stmt.fields["expected"], (INFINITE, 0))

    def test_assert_milnor(self):
        stmt = parse_statement("assert milnor W = 2")
        self.assertEqual((stmt.kind, stmt.name, stmt.fields["expected"]), ("assert_milnor", "W", 2))

    def test_assert_pass(self):
        """Teste une assertion de vérification avec options."""
        stmt = parse_statement("assert pass verify-monoidal level=2 seed=7")
        self.assertEqual(stmt.kind, "assert_pass")
        self.assertEqual(stmt.options, {"level": 2, "seed": 7})

    def test_error_position(self):
        """Teste la ligne et la colonne de l'échec le plus avancé."""
        with self.assertRaises(ProblemSyntaxError) as ctx:
            parse_statement("assert ext K K = (1; 1)", line=4)
        self.assertEqual(ctx.exception.line, 4)
        self.assertEqual(ctx.exception.col, 20)
        self.assertIn("ligne 4", str(ctx.exception))

    def test_unknown_form(self):
        """Teste une instruction inconnue."""
        with self.assertRaises(ProblemSyntaxError):
            parse_statement("print K")


class ParseProblemTests(SimpleTestCase):
    """Tests pour parse_problem."""

    def test_comments_and_blank_lines(self):
        """Teste que les numéros de ligne d'origine sont conservés."""
        text = "# anneau\nring R = x\n\n  # commentaire\nlet W = poly \"x^3\" in R\n"
        statements = parse_problem(text)
        self.assertEqual([s.line for s in statements], [2, 5])
        self.assertEqual(statements[1].text, 'let W = poly "x^3" in R')

    def test_error_line(self):
        """Teste le numéro de ligne d'une erreur."""
        with self.assertRaises(ProblemSyntaxError) as ctx:
            parse_problem("ring R = x\n\nlet = poly\n")
        self.assertEqual(ctx.exception.line, 3)
