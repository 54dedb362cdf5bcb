"""Tests pour les matrices de formes, les fibrés et les courbures."""

from django.test import SimpleTestCase

from dolbeault.bundles import (
    Bundle,
    Connection,
    DolMatrix,
    curvature_F,
    curvature_R,
    koszul_bundle,
    line_bundle,
    supercommutator,
    tensor_bundle,
    trivial_bundle,
)
from dolbeault.dolforms import polydisk
from dolbeault.exceptions import BundleError, PreconditionError
from dolbeault.registry import DEFAULT_REGISTRY


class DolMatrixTests(SimpleTestCase):
    """Tests pour DolMatrix."""

    def setUp(self):
        self.sp = polydisk(1)

    def test_identity_is_central(self):
        """Teste [Id, X] = 0."""
        sp = self.sp
        zero = sp.zero_form
        X = DolMatrix(sp, [[zero, sp.x(0)], [sp.db(0), zero]], (0, 1), (0, 1))
        self.assertFalse(supercommutator(DolMatrix.identity(sp, (0, 1)), X))

    def test_scalar_addition(self):
        """Teste l'addition d'une forme nulle à une matrice."""
        sp = self.sp
        I = DolMatrix.identity(sp, (0,))
        self.assertEqual(I + sp.zero_form, I)
        self.assertEqual(I * 2 - I, I)

    def test_shape(self):
        """Teste la forme d'une section."""
        sp = self.sp
        s = DolMatrix.section(sp, [sp.one_form, sp.zero_form], (0, 1))
        self.assertEqual(s.shape, (2, 1))
        self.assertEqual(s[0, 0], sp.one_form)


class BundleTests(SimpleTestCase):
    """Tests pour les constructeurs de fibrés."""

    def test_koszul_potential(self):
        """Teste W = pq pour K(p; q)."""
        sp = polydisk(2)
        E = koszul_bundle(sp, sp.x(0), sp.parse("x1 + x2^2"))
        self.assertEqual(E.W, sp.parse("x1^2 + x1*x2^2"))
        self.assertFalse(E.square_residual())
        self.assertEqual(E.rank, 2)

    def test_koszul_rejects_antiholomorphic(self):
        """Teste le refus d'un facteur non holomorphe."""
        sp = polydisk(1)
        with self.assertRaises(PreconditionError):
            koszul_bundle(sp, sp.xbar(0), sp.x(0))

    def test_invalid_square(self):
        """Teste le refus d'une connexion telle que (∂̄ + A)² ≠ W."""
        sp = polydisk(1)
        zero = sp.zero_form
        A = DolMatrix(sp, [[zero, sp.x(0)], [sp.one_form, zero]], (0, 1), (0, 1))
        with self.assertRaises(BundleError):
            Bundle(A, sp.zero_form)

    def test_line_bundle_is_flat(self):
        """Teste (∂̄ + ∂̄φ)² = 0."""
        sp = polydisk(2)
        L = line_bundle(sp, sp.parse("xb1*x2 + xb2*xb1*x1"))
        self.assertFalse(L.square_residual())
        self.assertFalse(L.W)

    def test_tensor(self):
        """Teste W = W_E + W_F pour K(x₁; x₂) ⊗ K(x₂; x₁)."""
        sp = polydisk(2)
        E = tensor_bundle(koszul_bundle(sp, sp.x(0), sp.x(1)), koszul_bundle(sp, sp.x(1), sp.x(0)))
        self.assertEqual(E.W, sp.parse("2*x1*x2"))
        self.assertEqual(E.rank, 4)
        self.assertEqual(E.parities, (0, 1, 1, 0))

    def test_tensor_with_trivial(self):
        """Teste E ⊗ O pour un fibré de Koszul."""
        sp = polydisk(1)
        E = tensor_bundle(koszul_bundle(sp, sp.x(0), sp.x(0)), trivial_bundle(sp))
        self.assertEqual(E.W, sp.parse("x1^2"))

    def test_apply(self):
        """Teste (∂̄ + A) e₀ = p e₁."""
        sp = polydisk(1)
        E = koszul_bundle(sp, sp.x(0), sp.one_form)
        e0 = DolMatrix.section(sp, [sp.one_form, sp.zero_form], E.parities)
        expected = DolMatrix.section(sp, [sp.zero_form, sp.x(0)], E.parities)
        self.assertEqual(E.apply(e0), expected)


class CurvatureTests(SimpleTestCase):
    """Tests pour F, Bianchi et R."""

    def test_koszul(self):
        """Teste F = -∂A et ∇̄F = -∂W·Id pour K(x; x)."""
        sp = polydisk(1)
        E = koszul_bundle(sp, sp.x(0), sp.x(0))
        zero, one = sp.zero_form, sp.one_form
        curvature = curvature_F(E)
        expected = DolMatrix(sp, [[zero, -one], [-one, zero]], (0, 1), (0, 1))
        self.assertEqual(curvature.components[0], expected)
        self.assertEqual(curvature.derivatives[0], DolMatrix.scalar(sp.parse("-2*x1"), (0, 1)))
        self.assertTrue(curvature.is_bianchi)

    def test_sign_switch(self):
        """Teste l'échec de Bianchi avec le signe opposé."""
        sp = polydisk(1)
        E = koszul_bundle(sp, sp.x(0), sp.x(0))
        self.assertFalse(curvature_F(E, DEFAULT_REGISTRY.with_switch(f_sign=-1)).is_bianchi)

    def test_line_bundle(self):
        """Teste F = -2x dx̄ pour φ = x̄x²."""
        sp = polydisk(1)
        L = line_bundle(sp, sp.parse("xb1*x1^2"))
        curvature = curvature_F(L)
        self.assertEqual(curvature.components[0], DolMatrix.scalar(sp.parse("-2*x1") * sp.db(0), (0,)))
        self.assertTrue(curvature.is_bianchi)


class ConnectionTests(SimpleTestCase):
    """Tests pour Connection."""

    def test_flat(self):
        """Teste la connexion plate et la hessienne."""
        sp = polydisk(2)
        conn = Connection.flat(sp)
        self.assertTrue(conn.is_flat())
        W = sp.parse("x1^2*x2")
        self.assertEqual(conn.covariant_hessian(W, 0, 1), sp.parse("2*x1"))

    def test_symmetry_required(self):
        """Teste le refus de Γ non symétrique."""
        sp = polydisk(2)
        zero = sp.zero_form
        gamma = [[[zero, sp.x(0)], [zero, zero]], [[zero, zero], [zero, zero]]]
        with self.assertRaises(PreconditionError):
            Connection(sp, gamma)

    def test_hessian_correction(self):
        """Teste ∇_K ∂_L W = ∂_K ∂_L W - Γ^M_{KL} ∂_M W."""
        sp = polydisk(1)
        conn = Connection(sp, [[[sp.x(0)]]])
        W = sp.parse("x1^3")
        self.assertEqual(conn.covariant_hessian(W, 0, 0), sp.parse("6*x1 - 3*x1^3"))

    def test_curvature_r(self):
        """Teste R = ∂̄Γ."""
        sp = polydisk(1)
        conn = Connection(sp, [[[sp.parse("xb1*x1")]]])
        self.assertFalse(conn.is_flat())
        self.assertEqual(curvature_R(conn)[0][0][0], sp.x(0) * sp.db(0))
