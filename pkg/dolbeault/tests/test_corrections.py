"""Tests pour Maurer-Cartan, la contrainte sur W et les corrections."""

import pytest
from django.test import SimpleTestCase

from dolbeault.bundles import Connection
from dolbeault.corrections import (
    check_mc,
    check_w_constraint,
    corollary_checks,
    mu,
    nu_approx,
    solve_w_constraint,
    verify_corrections,
    xi_approx,
)
from dolbeault.dolforms import polydisk
from dolbeault.exceptions import PreconditionError
from dolbeault.harness import corrections_for_seed, run_batch


class MaurerCartanTests(SimpleTestCase):
    """Tests pour check_mc."""

    def test_one_variable(self):
        """Teste qu'un bivecteur holomorphe en une variable est Maurer-Cartan."""
        sp = polydisk(1)
        result = check_mc(sp.x(0) * sp.y(0) * sp.y(0) * sp.db(0))
        self.assertTrue(result.passed)
        self.assertEqual(result.name, "maurer_cartan")

    def test_constant_coefficients(self):
        """Teste un bivecteur constant en deux variables."""
        sp = polydisk(2)
        self.assertTrue(check_mc(sp.y(0) * sp.y(1) * sp.db(0) * 5).passed)

    def test_not_holomorphic(self):
        """Teste l'échec pour un coefficient en x̄."""
        sp = polydisk(2)
        result = check_mc(sp.xbar(1) * sp.y(0) * sp.y(0) * sp.db(0))
        self.assertFalse(result.passed)
        self.assertGreater(result.support, 0)


class WConstraintTests(SimpleTestCase):
    """Tests pour la contrainte ∂̄W = κ(∂W)."""

    def test_holomorphic_w_without_kappa(self):
        """Teste qu'un W holomorphe satisfait la contrainte pour κ = 0."""
        sp = polydisk(2)
        self.assertTrue(check_w_constraint(sp.parse("x1^3 + x2"), sp.zero_form).passed)

    def test_fails_without_correction(self):
        """Teste qu'un W holomorphe ne satisfait pas la contrainte pour κ ≠ 0."""
        sp = polydisk(1)
        kappa = sp.y(0) * sp.y(0) * sp.db(0)
        self.assertFalse(check_w_constraint(sp.parse("x1^2"), kappa).passed)

    def test_solve(self):
        """Teste le point fixe W = W₀ + h(κ(∂W)) en une variable."""
        sp = polydisk(1, tagged=True)
        kappa = sp.parse("tb*x1*y1^2") * sp.db(0)
        W = solve_w_constraint(sp.parse("tW1*x1^2"), kappa, 3)
        self.assertTrue(check_w_constraint(W, kappa, 3).passed)
        self.assertNotEqual(W, sp.parse("tW1*x1^2"))


class MuTests(SimpleTestCase):
    """Tests pour μ."""

    def test_one_variable(self):
        """Teste μ = -3x³ dx̄ θ pour κ = x y² dx̄, W₁ = 0, W₂ = x³."""
        sp = polydisk(1)
        kappa = sp.x(0) * sp.y(0) * sp.y(0) * sp.db(0)
        value = mu(kappa, sp.zero_form, sp.parse("x1^3"), check=False)
        self.assertEqual(value, sp.parse("-3*x1^3") * sp.db(0) * sp.theta(0))

    def test_precondition(self):
        """Teste le refus d'un W ne vérifiant pas la contrainte."""
        sp = polydisk(1)
        kappa = sp.y(0) * sp.y(0) * sp.db(0)
        with self.assertRaises(PreconditionError):
            mu(kappa, sp.zero_form, sp.parse("x1^2"))

    def test_zero_kappa(self):
        """Teste μ = 0 pour κ = 0."""
        sp = polydisk(2)
        self.assertFalse(mu(sp.zero_form, sp.x(0), sp.x(1)))


class ApproximationTests(SimpleTestCase):
    """Tests pour ν≈ et ξ≈."""

    def test_nu_single_differential(self):
        """Teste ν≈ = 0 lorsque β ne porte qu'un seul dx̄ (dx̄₁ ∧ dx̄₁ = 0)."""
        sp = polydisk(2)
        beta = sp.y(0) * sp.y(1) * sp.db(0)
        self.assertFalse(nu_approx(beta, sp.parse("x1*x2"), Connection.flat(sp)))

    def test_xi_flat(self):
        """Teste ξ≈ = 0 pour une connexion plate."""
        sp = polydisk(2)
        beta = sp.y(0) * sp.y(1) * sp.db(0)
        self.assertFalse(xi_approx(beta, Connection.flat(sp)))

    def test_xi_vanishes_in_dimension_one(self):
        """Teste ξ≈ = 0 en une variable (θ₁θ₁θ₁ = 0)."""
        sp = polydisk(1)
        beta = sp.y(0) * sp.y(0) * sp.db(0)
        conn = Connection(sp, [[[sp.parse("xb1")]]])
        self.assertFalse(xi_approx(beta, conn))


class VerifyCorrectionsTests(SimpleTestCase):
    """Tests pour verify_corrections."""

    def test_untagged_rejected(self):
        """Teste le refus d'un polydisque sans marqueurs."""
        sp = polydisk(2)
        with self.assertRaises(PreconditionError):
            verify_corrections(sp.zero_form, sp.x(0), sp.x(1))

    def test_non_holomorphic_w_rejected(self):
        """Teste le refus d'un W antiholomorphe."""
        sp = polydisk(2, tagged=True)
        with self.assertRaises(PreconditionError):
            verify_corrections(sp.zero_form, sp.xbar(0), sp.x(1))

    def test_trivial(self):
        """Teste β = 0, W = 0 : corrections nulles."""
        sp = polydisk(2, tagged=True)
        zero = sp.zero_form
        result = verify_corrections(zero, zero, zero)
        self.assertTrue(result.report.passed)
        self.assertFalse(result.mu)
        self.assertFalse(result.W12)

    @pytest.mark.slow
    def test_one_variable_instance(self):
        """Teste les équations de μ sur une instance en une variable."""
        sp = polydisk(1, tagged=True)
        beta = sp.x(0) * sp.y(0) * sp.y(0) * sp.db(0)
        result = verify_corrections(beta, sp.parse("x1^2"), sp.parse("x1^3"), seed=1)
        report = result.report
        for name in ("maurer_cartan", "w_constraint_1", "w_constraint_2", "mu_equation"):
            self.assertTrue(report.check(name).passed, name)
        self.assertEqual(report.seed, 1)
        self.assertIn("mu_terms", report.extra)

    @pytest.mark.slow
    def test_corollaries(self):
        """Teste les trois corollaires sur une graine fixe."""
        report = corollary_checks(polydisk(2, tagged=True), seed=3)
        self.assertEqual(
            [c.name for c in report.checks],
            ["beta_zero_w_zero", "beta_zero_weight", "flat_w_zero"],
        )
        self.assertTrue(report.passed)


class CorrectionsBatchTests(SimpleTestCase):
    """Tests pour les instances aléatoires de verify_corrections."""

    @pytest.mark.slow
    def test_twenty_seeds(self):
        """Teste (a) à (d) sur vingt instances en deux variables, γ et ν≈ non nuls."""
        reports = run_batch("corrections", range(20), n_jobs=1)
        self.assertEqual(len(reports), 20)
        for report in reports:
            self.assertTrue(report.passed, f"graine {report.seed}")
            self.assertGreater(report.extra["gamma_terms"], 0)
            self.assertGreater(report.extra["nu_terms"], 0)
            self.assertEqual(report.check("xi_equation").detail, "vide en dimension 2")

    @pytest.mark.slow
    def test_curved_connection(self):
        """Teste que l'écart de ν≈ pour une connexion courbe est reporté sans verdict."""
        report = corrections_for_seed(4, curved=True)
        nu_check = report.check("nu_equation")
        self.assertTrue(nu_check.passed)
        self.assertTrue(nu_check.detail.startswith("connexion non plate"))
        self.assertGreater(report.extra["nu_terms"], 0)
        for name in ("maurer_cartan", "mu_equation", "jacobi_reduction"):
            self.assertTrue(report.check(name).passed, name)

    @pytest.mark.slow
    def test_curved_connection_dimension_three(self):
        """Teste ξ≈ non nul pour une connexion courbe en trois variables."""
        report = corrections_for_seed(2, n=3, curved=True)
        self.assertGreater(report.extra["xi_terms"], 0)
        self.assertEqual(report.check("xi_equation").detail, "")
        self.assertTrue(report.check("mu_equation").passed)
