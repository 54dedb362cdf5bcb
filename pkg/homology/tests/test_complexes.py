"""Tests pour le complexe des morphismes et Ext."""

from django.test import SimpleTestCase

from mfcore.factorizations import (
    KoszulSpec,
    grading_flip,
    koszul_factorization,
    unit_mf,
)
from mfcore.functors import exclude_variable, knorrer
from poly.matrices import PolyMatrix
from poly.modules import INFINITE
from poly.rings import Ring

from homology.complexes import ext, ext_dims, hom_complex, koszul_homology
from homology.exceptions import CurvingMismatchError


def koszul(ring, p, q):
    return koszul_factorization(KoszulSpec(tuple(p), tuple(q)), ring)


def kernel_y():
    """K(y1 - i·y2; y1 + i·y2) sur C[y1, y2]."""
    ring = Ring(["y1", "y2"])
    i = ring.constant(0, 1)
    y1, y2 = ring["y1"], ring["y2"]
    return koszul(ring, [y1 - i * y2], [y1 + i * y2])


class HomComplexTests(SimpleTestCase):
    """Tests pour hom_complex."""

    def setUp(self):
        self.ring = Ring(["x"])
        self.x = self.ring["x"]
        self.K = koszul(self.ring, [self.x], [self.x])

    def test_even_differential_of_koszul(self):
        """Teste la différentielle paire de End(K(x;x)), de noyau diagonal."""
        C = hom_complex(self.K, self.K)
        self.assertEqual(C.even_basis, ((0, 0), (1, 1)))
        self.assertEqual(C.odd_basis, ((0, 1), (1, 0)))
        x = self.x
        expected = PolyMatrix(self.ring, [[-x, x], [x, -x]])
        self.assertEqual(C.d_even, expected)

    def test_squares_to_zero(self):
        """Teste d·d = 0 pour des courbures égales."""
        C = hom_complex(self.K, self.K)
        self.assertTrue(C.is_complex())
        self.assertTrue(C.check())

    def test_unit_has_zero_differential(self):
        """Teste l'objet unité : rang pair 1, différentielle nulle."""
        C = hom_complex(unit_mf(self.ring), unit_mf(self.ring))
        self.assertEqual((C.rank_even, C.rank_odd), (1, 0))
        self.assertTrue(C.d_even.is_zero())

    def test_mismatched_curvings(self):
        """Teste x² contre x³ : le complexe est courbé par x³ - x²."""
        L = koszul(self.ring, [self.x], [self.x**2])
        C = hom_complex(self.K, L)
        self.assertEqual(C.squares_to(), self.x**3 - self.x**2)
        self.assertFalse(C.is_complex())
        self.assertTrue(C.check())
        with self.assertRaises(CurvingMismatchError):
            ext(self.K, L)


class ExtTests(SimpleTestCase):
    """Tests pour ext."""

    def test_koszul_quadratic(self):
        """Teste Ext(K(x;x), K(x;x)) -> (1, 1)."""
        ring = Ring(["x"])
        K = koszul(ring, [ring["x"]], [ring["x"]])
        self.assertEqual(ext_dims(K, K), (1, 1))

    def test_knorrer_kernel(self):
        """Teste Ext du noyau de Knörrer avec lui-même -> (1, 0)."""
        M = kernel_y()
        self.assertEqual(ext_dims(M, M), (1, 0))

    def test_koszul_cubic(self):
        """Teste Ext(K(x;x²), K(x;x²)) -> (1, 1)."""
        ring = Ring(["x"])
        K = koszul(ring, [ring["x"]], [ring["x"] ** 2])
        self.assertEqual(ext_dims(K, K), (1, 1))

    def test_unit_is_infinite(self):
        """Teste End(1) = R, de dimension infinie."""
        ring = Ring(["x"])
        self.assertEqual(ext_dims(unit_mf(ring), unit_mf(ring)), (INFINITE, 0))

    def test_cocycles_are_closed(self):
        """Teste que les cocycles renvoyés sont dans le noyau."""
        M = kernel_y()
        result = ext(M, M)
        C = result.complex
        for v in result.even_cocycles:
            column = PolyMatrix.from_columns(M.ring, [v], C.rank_even)
            self.assertTrue((C.d_even @ column).is_zero())

    def test_relations_text(self):
        """Teste le rendu des relations."""
        M = kernel_y()
        text = ext(M, M).relations_text()
        self.assertIn("pair", text)
        self.assertIn("générateurs", text)


class ExtInvarianceTests(SimpleTestCase):
    """Tests d'invariance des dimensions de Ext."""

    def setUp(self):
        self.ring = Ring(["x"])
        self.K = koszul(self.ring, [self.ring["x"]], [self.ring["x"] ** 2])

    def test_grading_flip(self):
        """Teste l'invariance par translation des deux arguments."""
        F = grading_flip(self.K)
        self.assertEqual(ext_dims(F, F), ext_dims(self.K, self.K))

    def test_koszul_swap(self):
        """Teste K(p;q) et K(q;p) : mêmes dimensions."""
        x = self.ring["x"]
        swapped = koszul(self.ring, [x**2], [x])
        self.assertEqual(ext_dims(swapped, swapped), ext_dims(self.K, self.K))

    def test_knorrer(self):
        """Teste la périodicité de Knörrer au niveau des dimensions."""
        ring = Ring(["x"])
        K = koszul(ring, [ring["x"]], [ring["x"]])
        big = knorrer(K)
        self.assertEqual(ext_dims(big, big), (1, 1))

    def test_exclusion(self):
        """Teste l'invariance par exclusion de variable."""
        ring = Ring(["x", "z"])
        x, z = ring["x"], ring["z"]
        M = koszul(ring, [z - x, x], [ring.zero, x])
        reduced = exclude_variable(M, "z")
        self.assertEqual(ext_dims(reduced, reduced), (1, 1))


class KoszulHomologyTests(SimpleTestCase):
    """Tests pour koszul_homology."""

    def test_single_variable(self):
        """Teste p = (y) -> (1, 0)."""
        ring = Ring(["y"])
        self.assertEqual(koszul_homology([ring["y"]], ring), (1, 0))

    def test_regular_sequence(self):
        """Teste p = (x, y) -> dimension totale 1."""
        ring = Ring(["x", "y"])
        even, odd = koszul_homology([ring["x"], ring["y"]], ring)
        self.assertEqual(even + odd, 1)

    def test_zero_element(self):
        """Teste p = (0) -> homologie infinie."""
        ring = Ring(["x"])
        self.assertEqual(koszul_homology([ring.zero], ring), (INFINITE, INFINITE))
