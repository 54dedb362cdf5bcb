"""Tests pour les termes ζ et l'associateur α."""

import pytest
from django.test import SimpleTestCase

from dolbeault.bundles import koszul_bundle, line_bundle, tensor_bundle
from dolbeault.dolforms import polydisk
from dolbeault.exceptions import PreconditionError
from dolbeault.harness import monoidal_for_seed, run_batch
from dolbeault.monoidal import READINGS, UNDECIDED, triple_product, zeta_alpha


def _line_bundles(sp):
    return [
        line_bundle(sp, sp.parse("xb1*x2 + xb2*x1^2"), "L1"),
        line_bundle(sp, sp.parse("xb1*xb2*x1 + xb2*x2"), "L2"),
    ]


def _koszul_bundles(sp):
    """``K(x1 + x2; 0)`` et ``K(x2; 0) ⊗ L(x̄1·x1)`` : courbures de degré 0 non nulles."""
    zero = sp.zero_form
    return [
        koszul_bundle(sp, sp.parse("x1 + x2"), zero, "K1"),
        tensor_bundle(koszul_bundle(sp, sp.x(1), zero), line_bundle(sp, sp.parse("xb1*x1")), "K2"),
    ]


class TripleProductTests(SimpleTestCase):
    """Tests pour triple_product."""

    def test_ranks(self):
        """Teste le rang du produit et le nombre de composantes de F."""
        sp = polydisk(2)
        bundles = _line_bundles(sp) + [koszul_bundle(sp, sp.x(0), sp.zero_form, "K")]
        triple = triple_product(bundles)
        self.assertEqual(triple.A.shape, (2, 2))
        self.assertEqual(len(triple.F1), 2)
        self.assertEqual(len(triple.F3), 2)


class LevelOneTests(SimpleTestCase):
    """Tests pour ζ₁."""

    def test_koszul_bundles(self):
        """Teste ζ₁ non nul, fermé, antisymétrique et l'équation de l'associateur."""
        sp = polydisk(2)
        beta = sp.x(1) * sp.y(0) * sp.y(1) * sp.db(0) + sp.y(0) * sp.y(0) * sp.db(1)
        result = zeta_alpha(beta, _koszul_bundles(sp), level=1, seed=4)
        report = result.report
        self.assertEqual(
            [c.name for c in report.checks],
            ["zeta1_nonzero", "zeta1_closed", "zeta1_swap", "alpha_level1"],
        )
        self.assertTrue(report.passed)
        self.assertTrue(result.zeta1)
        self.assertEqual(report.name, "monoidal_n1")
        self.assertIsNone(result.alpha2)

    def test_line_bundles_are_vacuous(self):
        """Teste l'échec de zeta1_nonzero : deux (0,1)-formes et β s'annulent en dimension 2."""
        sp = polydisk(2)
        beta = sp.x(1) * sp.y(0) * sp.y(1) * sp.db(0) + sp.y(0) * sp.y(0) * sp.db(1)
        report = zeta_alpha(beta, _line_bundles(sp), level=1).report
        self.assertFalse(report.check("zeta1_nonzero").passed)
        self.assertTrue(report.check("zeta1_closed").passed)
        self.assertFalse(report.passed)

    def test_zero_beta(self):
        """Teste ζ₁ = 0 pour β = 0."""
        sp = polydisk(2)
        result = zeta_alpha(sp.zero_form, _line_bundles(sp))
        self.assertFalse(result.zeta1)

    @pytest.mark.slow
    def test_three_variables(self):
        """Teste le niveau 1 sur cinq graines en trois variables, ζ₁ non nul."""
        reports = run_batch("monoidal", range(5), n_jobs=1, n=3)
        for report in reports:
            self.assertTrue(report.passed, f"graine {report.seed}")
            self.assertNotEqual(report.check("zeta1_nonzero").detail, "0 termes")


class PreconditionTests(SimpleTestCase):
    """Tests pour les hypothèses de zeta_alpha."""

    def setUp(self):
        self.sp = polydisk(2)
        self.beta = self.sp.y(0) * self.sp.y(1) * self.sp.db(0)

    def test_level(self):
        """Teste le refus d'un niveau 3."""
        with self.assertRaises(PreconditionError):
            zeta_alpha(self.beta, _line_bundles(self.sp), level=3)

    def test_curved_bundle(self):
        """Teste le refus d'un fibré de potentiel non nul."""
        sp = self.sp
        bundles = [koszul_bundle(sp, sp.x(0), sp.x(1)), _line_bundles(sp)[0]]
        with self.assertRaises(PreconditionError):
            zeta_alpha(self.beta, bundles)

    def test_bundle_count(self):
        """Teste le refus d'un seul fibré."""
        with self.assertRaises(PreconditionError):
            zeta_alpha(self.beta, _line_bundles(self.sp)[:1])

    def test_inconsistent_gamma(self):
        """Teste le refus d'un γ qui ne compense pas {β, β}."""
        sp = self.sp
        beta = sp.x(1) * sp.y(0) * sp.y(0) * sp.db(0) + sp.x(0) * sp.y(1) * sp.y(1) * sp.db(1)
        gamma = sp.y(0) * sp.y(0) * sp.y(0) * sp.db(0)
        with self.assertRaises(PreconditionError):
            zeta_alpha(beta, _line_bundles(sp), level=2, gamma=gamma)


class LevelTwoTests(SimpleTestCase):
    """Tests pour ζ₂ et α₂."""

    def test_zero_beta(self):
        """Teste qu'aucune lecture n'est retenue lorsque les deux sont indiscernables."""
        sp = polydisk(2)
        result = zeta_alpha(sp.zero_form, _line_bundles(sp), level=2)
        report = result.report
        self.assertEqual(result.accepted_reading, UNDECIDED)
        self.assertEqual(report.extra["accepted_reading"], UNDECIDED)
        self.assertFalse(report.check("accepted_reading").passed)
        self.assertEqual(report.check("accepted_reading").detail, "lectures indiscernables")
        self.assertFalse(report.check("zeta1_nonzero").passed)
        self.assertFalse(report.check("alpha2_nonzero").passed)
        self.assertFalse(report.passed)

    @pytest.mark.slow
    def test_readings_recorded(self):
        """Teste les deux lectures sur des fibrés tordus en trois variables."""
        report = monoidal_for_seed(7, n=3, level=2)
        names = [c.name for c in report.checks]
        self.assertTrue(report.check("zeta1_nonzero").passed)
        self.assertIn("alpha2_nonzero", names)
        for reading in READINGS:
            self.assertIn(f"zeta2_terms_{reading}", report.extra)
        accepted = report.extra["accepted_reading"]
        self.assertIn(accepted, READINGS + ("none", UNDECIDED))
        self.assertEqual(report.check("accepted_reading").passed, accepted in READINGS)
        if accepted in READINGS:
            self.assertIn("zeta2_nonzero", names)
        if accepted == "none":
            self.assertTrue(any(c.detail.startswith("FALSIFIED") for c in report.checks))
