"""Tests pour les graduations portées par les marqueurs."""

from django.test import SimpleTestCase

from dolbeault.dolforms import polydisk
from dolbeault.exceptions import PreconditionError, UntaggedTermError
from dolbeault.gradings import grading_audit, gradings, min_dW


class GradingsTests(SimpleTestCase):
    """Tests pour gradings."""

    def setUp(self):
        self.sp = polydisk(1, tagged=True)

    def test_beta(self):
        """Teste β : semi-classique -1, SYM 2."""
        sp = self.sp
        g = gradings(sp.parse("tb*y1^2") * sp.db(0))
        self.assertEqual(g.semiclassical, -1)
        self.assertEqual(g.dolbeault, 1)
        self.assertEqual(g.sym_or_wedge, 2)

    def test_superpotential(self):
        """Teste W : semi-classique -2, poids 1."""
        g = gradings(self.sp.parse("tW1*x1^3"))
        self.assertEqual((g.semiclassical, g.dW, g.balanced, g.total), (-2, 1, 0, -2))

    def test_gamma(self):
        """Teste γ : semi-classique 0, équilibré 2."""
        sp = self.sp
        g = gradings(sp.parse("tg*xb1*y1^3") * sp.db(0))
        self.assertEqual((g.dolbeault, g.semiclassical, g.balanced), (1, 0, 2))

    def test_curvature_tag(self):
        """Teste F marqué : degré de Dolbeault 1."""
        sp = self.sp
        self.assertEqual(gradings(sp.parse("tF1") * sp.db(0)).dolbeault, 1)
        self.assertEqual(gradings(sp.parse("tF1"), f_formdeg=0).dolbeault, 1)

    def test_free_differential(self):
        """Teste un dx̄ non expliqué par les marqueurs."""
        sp = self.sp
        g = gradings(sp.parse("tW1*x1") * sp.db(0))
        self.assertEqual((g.dolbeault, g.semiclassical, g.balanced), (1, -3, -1))

    def test_wedge(self):
        """Teste tn θ : semi-classique 1."""
        sp = self.sp
        g = gradings(sp.parse("tn") * sp.theta(0))
        self.assertEqual((g.semiclassical, g.balanced, g.sym_or_wedge), (1, -1, 1))

    def test_untagged(self):
        """Teste le refus des termes sans marqueur."""
        with self.assertRaises(UntaggedTermError):
            gradings(self.sp.x(0))
        with self.assertRaises(UntaggedTermError):
            gradings(polydisk(1).x(0))

    def test_single_term_required(self):
        """Teste le refus d'une somme de termes."""
        with self.assertRaises(PreconditionError):
            gradings(self.sp.parse("tW1*x1 + tW1"))


class AuditTests(SimpleTestCase):
    """Tests pour grading_audit et min_dW."""

    def test_audit(self):
        """Teste la détection d'un terme de semi-classique -1."""
        sp = polydisk(1, tagged=True)
        form = sp.parse("tW1*x1") + sp.parse("tb*y1^2") * sp.db(0)
        offending = grading_audit(form)
        self.assertEqual(len(offending), 1)
        self.assertEqual(offending[0][1].semiclassical, -1)

    def test_min_dw(self):
        """Teste le plus petit poids en W."""
        sp = polydisk(1, tagged=True)
        self.assertEqual(min_dW(sp.parse("tW1*tW2*x1 + tW1")), 1)
        self.assertIsNone(min_dW(sp.zero_form))
