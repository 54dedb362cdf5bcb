"""Tests pour les factorisations matricielles et leurs constructions de base."""

from django.test import SimpleTestCase

from poly.exceptions import RingMismatchError
from poly.rings import Ring

from mfcore.exceptions import FactorizationError, InvariantError, KoszulLengthError
from mfcore.factorizations import (
    KoszulSpec,
    dual_mf,
    grading_flip,
    koszul_divide,
    koszul_factorization,
    make_matfact,
    matfact_equal,
    rename_mf,
    sign_twist,
    substitute_mf,
    tensor_basis,
    tensor_mf,
    unit_mf,
)


def koszul(ring, p, q):
    return koszul_factorization(KoszulSpec(tuple(p), tuple(q)), ring)


class MatFactInvariantTests(SimpleTestCase):
    """Tests pour la vérification d1·d0 = d0·d1 = W·Id."""

    def setUp(self):
        self.ring = Ring(["x", "y"])

    def test_valid_factorization(self):
        """Teste qu'une factorisation correcte est acceptée."""
        M = make_matfact(self.ring, "x*y", [["x"]], [["y"]])
        self.assertEqual(M.rank, (1, 1))
        self.assertEqual(M.W, self.ring.parse("x*y"))

    def test_wrong_product_rejected(self):
        """Teste que d1·d0 ≠ W est refusé."""
        with self.assertRaises(InvariantError):
            make_matfact(self.ring, "x^2", [["x"]], [["y"]])

    def test_shape_mismatch_rejected(self):
        """Teste des formes incompatibles."""
        with self.assertRaises((InvariantError, RingMismatchError)):
            make_matfact(self.ring, "x", [["x", "1"]], [["1"]])

    def test_unit_object(self):
        """Teste l'objet de rang (1,0) et de courbure nulle."""
        M = unit_mf(self.ring)
        self.assertEqual(M.rank, (1, 0))
        self.assertEqual(M.W, 0)
        self.assertEqual(M.D.shape, (1, 1))

    def test_full_differential_squares_to_curving(self):
        """Teste D² = W·Id sur la différentielle complète."""
        M = koszul(self.ring, [self.ring["x"], self.ring["y"]], [self.ring["y"], self.ring["x"]])
        self.assertTrue((M.D @ M.D).is_scalar(M.W))


class KoszulTests(SimpleTestCase):
    """Tests pour koszul_factorization."""

    def setUp(self):
        self.ring = Ring(["x", "y", "z"])
        self.x, self.y, self.z = (self.ring[n] for n in "xyz")

    def test_single_factor(self):
        """Teste K(x; x) -> rang (1,1), W = x²."""
        M = koszul(self.ring, [self.x], [self.x])
        self.assertEqual(M.rank, (1, 1))
        self.assertEqual(M.W, self.x**2)
        self.assertEqual(M.d0[0, 0], self.x)
        self.assertEqual(M.d1[0, 0], self.x)

    def test_two_factors(self):
        """Teste K(x, y; y, x) -> rang (2,2), W = 2xy."""
        M = koszul(self.ring, [self.x, self.y], [self.y, self.x])
        self.assertEqual(M.rank, (2, 2))
        self.assertEqual(M.W, 2 * self.x * self.y)

    def test_three_factors(self):
        """Teste une suite régulière de longueur 3 -> rang (4,4)."""
        M = koszul(self.ring, [self.x, self.y, self.z], [self.x, self.y, self.z])
        self.assertEqual(M.rank, (4, 4))
        self.assertEqual(M.W, self.x**2 + self.y**2 + self.z**2)

    def test_empty_is_unit(self):
        """Teste K(;) = objet unité."""
        self.assertTrue(matfact_equal(koszul(self.ring, [], []), unit_mf(self.ring)))

    def test_length_mismatch(self):
        """Teste des listes de longueurs différentes."""
        with self.assertRaises(KoszulLengthError):
            KoszulSpec((self.x,), ())

    def test_curving(self):
        """Teste que la courbure de la spécification est Σ p_i q_i."""
        spec = KoszulSpec((self.x, self.y), (self.z, self.z))
        self.assertEqual(spec.curving(self.ring), self.x * self.z + self.y * self.z)


class TensorTests(SimpleTestCase):
    """Tests pour tensor_mf."""

    def setUp(self):
        self.ring = Ring(["x", "y"])
        self.x, self.y = self.ring["x"], self.ring["y"]
        self.kx = koszul(self.ring, [self.x], [self.x])
        self.ky = koszul(self.ring, [self.y], [self.y**2])

    def test_unit_is_neutral(self):
        """Teste 1 ⊗ M = M = M ⊗ 1 exactement."""
        unit = unit_mf(self.ring)
        self.assertTrue(matfact_equal(tensor_mf(unit, self.kx), self.kx))
        self.assertTrue(matfact_equal(tensor_mf(self.kx, unit), self.kx))

    def test_curving_is_additive(self):
        """Teste W(M⊗N) = W(M) + W(N)."""
        T = tensor_mf(self.kx, self.ky)
        self.assertEqual(T.W, self.x**2 + self.y**3)
        self.assertEqual(T.rank, (2, 2))

    def test_basis_order(self):
        """Teste que les paires paires précèdent les impaires."""
        pairs, n_even = tensor_basis(self.kx, self.ky)
        self.assertEqual(pairs, [(0, 0), (1, 1), (0, 1), (1, 0)])
        self.assertEqual(n_even, 2)

    def test_ring_mismatch(self):
        """Teste le refus de deux anneaux différents."""
        other = koszul(Ring(["x"]), [Ring(["x"])["x"]], [Ring(["x"])["x"]])
        with self.assertRaises(RingMismatchError):
            tensor_mf(self.kx, other)

    def test_matches_koszul_of_concatenation(self):
        """Teste K(x;x) ⊗ K(y;y²) = K(x, y; x, y²)."""
        both = koszul(self.ring, [self.x, self.y], [self.x, self.y**2])
        self.assertTrue(matfact_equal(tensor_mf(self.kx, self.ky), both))


class DualFlipTests(SimpleTestCase):
    """Tests pour dual_mf, grading_flip et sign_twist."""

    def setUp(self):
        self.ring = Ring(["x", "y"])
        self.x, self.y = self.ring["x"], self.ring["y"]
        self.M = koszul(self.ring, [self.x, self.y], [self.y, self.x**2])

    def test_dual_negates_curving(self):
        """Teste dual(K(x;x)) de courbure -x²."""
        D = dual_mf(koszul(self.ring, [self.x], [self.x]))
        self.assertEqual(D.W, -(self.x**2))
        self.assertEqual(D.d0[0, 0], -self.x)

    def test_dual_involution_up_to_sign(self):
        """Teste dual(dual(M)) = sign_twist(M)."""
        self.assertTrue(matfact_equal(dual_mf(dual_mf(self.M)), sign_twist(self.M)))

    def test_dual_of_unit(self):
        """Teste le dual de l'objet unité."""
        D = dual_mf(unit_mf(self.ring))
        self.assertEqual(D.rank, (1, 0))
        self.assertEqual(D.W, 0)

    def test_flip_twice(self):
        """Teste flip(flip(M)) = M."""
        self.assertTrue(matfact_equal(grading_flip(grading_flip(self.M)), self.M))

    def test_flip_of_unit(self):
        """Teste flip(rang (1,0)) -> rang (0,1)."""
        self.assertEqual(grading_flip(unit_mf(self.ring)).rank, (0, 1))

    def test_flip_swaps_koszul_roles(self):
        """Teste flip(K(p; q)) = K(q; p) pour un seul facteur."""
        K = koszul(self.ring, [self.x], [self.y])
        self.assertTrue(matfact_equal(grading_flip(K), koszul(self.ring, [self.y], [self.x])))


class KoszulDivideTests(SimpleTestCase):
    """Tests pour koszul_divide."""

    def setUp(self):
        self.ring = Ring(["x", "y"])
        self.x, self.y = self.ring["x"], self.ring["y"]

    def test_forced_division(self):
        """Teste x² - y² = (x - y)(x + y)."""
        spec = koszul_divide(self.x**2 - self.y**2, [self.x - self.y], self.ring)
        self.assertEqual(spec.q, (self.x + self.y,))

    def test_two_generators(self):
        """Teste que Σ p_i q_i redonne W."""
        W = self.x**3 + self.x * self.y**2 + self.y**3
        spec = koszul_divide(W, [self.x, self.y], self.ring)
        self.assertEqual(spec.curving(self.ring), W)

    def test_not_in_ideal(self):
        """Teste l'échec quand W n'est pas dans (p), avec témoin."""
        with self.assertRaises(FactorizationError) as ctx:
            koszul_divide(self.x + 1, [self.y], self.ring)
        self.assertEqual(ctx.exception.witness, self.x + 1)


class RenameSubstituteTests(SimpleTestCase):
    """Tests pour rename_mf et substitute_mf."""

    def test_rename(self):
        """Teste le renommage x -> u."""
        ring = Ring(["x"])
        M = rename_mf(koszul(ring, [ring["x"]], [ring["x"]]), {"x": "u"})
        target = Ring(["u"])
        self.assertEqual(M.ring, target)
        self.assertTrue(matfact_equal(M, koszul(target, [target["u"]], [target["u"]])))

    def test_substitute(self):
        """Teste la substitution y -> x dans K(x; y)."""
        ring = Ring(["x", "y"])
        M = koszul(ring, [ring["x"]], [ring["y"]])
        S = substitute_mf(M, {"y": ring["x"]})
        self.assertEqual(S.W, ring["x"] ** 2)
