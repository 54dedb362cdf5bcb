"""Tests pour la déformation au premier ordre des objets de Koszul."""

import pytest
from django.test import SimpleTestCase

from dolbeault.bundles import DolMatrix, koszul_bundle
from dolbeault.dolforms import polydisk
from dolbeault.exceptions import PreconditionError
from dolbeault.first_order import (
    basis_sections,
    deformed_operator,
    first_order_harness,
    koszul_correction,
    monoidal_specialization,
    square_check,
)
from dolbeault.harness import run_batch
from dolbeault.instances import first_order_instance

CHECKS = [
    "b_equation",
    "square_12",
    "monoidal_specialization",
    "square_13",
    "gauge_exact",
    "morphism_closed",
    "morphism_commutation",
]


class OperatorTests(SimpleTestCase):
    """Tests pour les sections de base et l'opérateur déformé."""

    def test_basis_sections(self):
        """Teste e_k et x_I e_k : rang × (n + 1) sections."""
        sp = polydisk(2)
        E = koszul_bundle(sp, sp.x(0), sp.x(1))
        sections = basis_sections(E)
        self.assertEqual(len(sections), 6)
        self.assertEqual(sections[0].shape, (2, 1))

    def test_undeformed_square(self):
        """Teste (∂̄ + A)² = W sans déformation."""
        sp = polydisk(2)
        E = koszul_bundle(sp, sp.parse("x1 + x2"), sp.parse("x1*x2"))
        zero = DolMatrix.zeros(sp, E.parities, E.parities)
        op = deformed_operator(E, sp.zero_form, zero, sp.function(sp.ring.gen("eps")))
        self.assertTrue(square_check("square", E, op, E.W).passed)

    def test_wrong_potential(self):
        """Teste l'échec du carré contre un potentiel erroné."""
        sp = polydisk(1)
        E = koszul_bundle(sp, sp.x(0), sp.x(0))
        zero = DolMatrix.zeros(sp, E.parities, E.parities)
        op = deformed_operator(E, sp.zero_form, zero, sp.zero_form)
        self.assertFalse(square_check("square", E, op, sp.x(0)).passed)

    def test_correction_zero_mu(self):
        """Teste b = 0 pour μ = 0."""
        sp = polydisk(1)
        E = koszul_bundle(sp, sp.x(0), sp.one_form)
        self.assertFalse(koszul_correction(E, sp.zero_form, sp.x(0), sp.one_form))


class HarnessTests(SimpleTestCase):
    """Tests pour first_order_harness."""

    def test_zero_beta(self):
        """Teste que β = 0 donne des corrections nulles et un rapport valide."""
        sp = polydisk(2)
        result = first_order_harness(
            sp.zero_form, sp.parse("x1^2"), (sp.x(0), sp.x(1)), (sp.x(1), sp.x(0)), seed=2
        )
        report = result.report
        self.assertEqual([c.name for c in report.checks], CHECKS)
        self.assertTrue(report.passed)
        self.assertTrue(report.extra["b_zero"])
        self.assertEqual(result.gauge_sign, 0)

    def test_non_holomorphic_factor(self):
        """Teste le refus d'un facteur antiholomorphe."""
        sp = polydisk(2)
        with self.assertRaises(PreconditionError):
            first_order_harness(sp.zero_form, sp.zero_form, (sp.xbar(0), sp.x(1)), (sp.x(1), sp.x(0)))

    def test_beta_must_be_holomorphic(self):
        """Teste le refus d'un β dépendant de x̄."""
        sp = polydisk(2)
        beta = sp.xbar(1) * sp.y(0) * sp.y(1) * sp.db(0)
        with self.assertRaises(PreconditionError):
            first_order_harness(beta, sp.zero_form, (sp.x(0), sp.x(1)), (sp.x(1), sp.x(0)))

    @pytest.mark.slow
    def test_random_instance(self):
        """Teste la structure du rapport sur une instance aléatoire."""
        sp = polydisk(2)
        inst = first_order_instance(sp, 11)
        result = first_order_harness(
            inst.beta,
            inst.W1,
            inst.factors12,
            inst.factors23,
            gauge=inst.gauge,
            morphisms=inst.morphisms,
            seed=11,
        )
        names = [c.name for c in result.report.checks]
        for name in CHECKS:
            self.assertIn(name, names)
        self.assertIn(result.report.extra["gauge_sign"], (-1, 0, 1))
        self.assertTrue(result.report.check("morphism_closed").passed)

    @pytest.mark.slow
    def test_ten_seeds(self):
        """Teste les quatre certifications, dont la variation exacte, sur dix graines."""
        reports = run_batch("first-order", range(10), n_jobs=1)
        for report in reports:
            self.assertTrue(report.check("gauge_exact").passed, f"graine {report.seed}")
            self.assertTrue(report.passed, f"graine {report.seed}")
        signs = {r.extra["gauge_sign"] for r in reports} - {0}
        self.assertLessEqual(len(signs), 1)


class MonoidalSpecializationTests(SimpleTestCase):
    """Tests pour la spécialisation W = 0 de la composition."""

    def setUp(self):
        self.sp = polydisk(2)

    def test_matches_zeta1(self):
        """Teste ∂²_sβ⌟(F12, F23) = ζ₁[F12, F23] avec un terme non nul."""
        sp = self.sp
        beta = sp.y(0) * sp.y(1) * sp.db(0) + sp.x(1) * sp.y(0) * sp.y(0) * sp.db(1)
        check = monoidal_specialization(beta, sp.x(0), sp.x(1))
        self.assertTrue(check.passed)
        self.assertNotEqual(check.detail, "0 termes")

    def test_zero_term_fails(self):
        """Teste l'échec lorsque β⌟(∂p12, ∂p23) est nul."""
        sp = self.sp
        check = monoidal_specialization(sp.y(0) * sp.y(0) * sp.db(0), sp.x(1), sp.x(1))
        self.assertFalse(check.passed)
        self.assertEqual(check.detail, "terme ζ nul")

    def test_zero_beta(self):
        check = monoidal_specialization(self.sp.zero_form, self.sp.x(0), self.sp.x(1))
        self.assertTrue(check.passed)
        self.assertEqual(check.detail, "β nul")
