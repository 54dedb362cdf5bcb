"""Tests pour Knörrer, la factorisation identité, la translation et l'exclusion."""

from dataclasses import dataclass
from unittest import mock

from django.test import SimpleTestCase

from poly.exceptions import NameCollisionError
from poly.rings import Ring

from mfcore.exceptions import ExclusionError, InvariantError
from mfcore.factorizations import (
    KoszulSpec,
    from_odd_matrix,
    koszul_factorization,
    matfact_equal,
    tensor_mf,
    unit_mf,
)
from mfcore.functors import (
    exclude_all,
    exclude_variable,
    identity_mf,
    knorrer,
    translate2,
)


def koszul(ring, p, q):
    return koszul_factorization(KoszulSpec(tuple(p), tuple(q)), ring)


class KnorrerTests(SimpleTestCase):
    """Tests pour knorrer."""

    def test_unit_becomes_rank_one_kernel(self):
        """Teste knorrer(1) = K(y1 - i·y2; y1 + i·y2)."""
        M = knorrer(unit_mf(Ring(["x"])))
        ring = M.ring
        y1, y2 = ring["y1"], ring["y2"]
        i = ring.constant(0, 1)
        self.assertEqual(M.rank, (1, 1))
        self.assertEqual(M.W, y1**2 + y2**2)
        self.assertEqual(M.d0[0, 0], y1 - i * y2)
        self.assertEqual(M.d1[0, 0], y1 + i * y2)

    def test_curving_gains_squares(self):
        """Teste x³ -> x³ + y1² + y2²."""
        ring = Ring(["x"])
        M = knorrer(koszul(ring, [ring["x"]], [ring["x"] ** 2]))
        big = M.ring
        self.assertEqual(M.W, big["x"] ** 3 + big["y1"] ** 2 + big["y2"] ** 2)
        self.assertEqual(M.rank, (2, 2))

    def test_name_collision(self):
        """Teste le refus quand y1 existe déjà."""
        ring = Ring(["y1"])
        with self.assertRaises(NameCollisionError):
            knorrer(unit_mf(ring))


class IdentityTests(SimpleTestCase):
    """Tests pour identity_mf."""

    def test_quadratic(self):
        """Teste x, W = x² -> K(x' - x; x' + x)."""
        ring = Ring(["x"])
        M = identity_mf(ring, ring["x"] ** 2)
        big = M.ring
        self.assertEqual(big.names, ("x", "x'"))
        self.assertEqual(M.d0[0, 0], big["x'"] - big["x"])
        self.assertEqual(M.d1[0, 0], big["x'"] + big["x"])

    def test_zero_curving(self):
        """Teste x, W = 0 -> K(x' - x; 0)."""
        ring = Ring(["x"])
        M = identity_mf(ring, ring.zero)
        self.assertEqual(M.d1[0, 0], 0)
        self.assertEqual(M.W, 0)

    def test_two_variables(self):
        """Teste (x, y), W = xy -> rang (2,2), courbure x'y' - xy."""
        ring = Ring(["x", "y"])
        M = identity_mf(ring, ring["x"] * ring["y"])
        big = M.ring
        self.assertEqual(M.rank, (2, 2))
        self.assertEqual(M.W, big["x'"] * big["y'"] - big["x"] * big["y"])

    def test_collision(self):
        """Teste le refus quand x' existe déjà."""
        ring = Ring(["x", "x'"])
        with self.assertRaises(NameCollisionError):
            identity_mf(ring, ring["x"] ** 2)


@dataclass(frozen=True)
class _Obj:
    base: tuple
    extras: tuple
    W: object

    @property
    def ring(self):
        return Ring(self.base + self.extras)


class TranslateTests(SimpleTestCase):
    """Tests pour translate2."""

    def test_adds_square(self):
        """Teste (∅; x²) -> (a; x² + a²)."""
        ring = Ring(["x"])
        obj = translate2(_Obj(("x",), (), ring["x"] ** 2))
        big = obj.ring
        self.assertEqual([v.name for v in obj.extras], ["a"])
        self.assertEqual(obj.W, big["x"] ** 2 + big["a"] ** 2)

    def test_twice(self):
        """Teste deux translations successives -> a² + b²."""
        ring = Ring(["x"])
        obj = translate2(translate2(_Obj(("x",), (), ring["x"] ** 2)), "b")
        big = obj.ring
        self.assertEqual(obj.W, big["x"] ** 2 + big["a"] ** 2 + big["b"] ** 2)

    def test_collision(self):
        """Teste le refus d'un nom déjà pris."""
        ring = Ring(["a"])
        with self.assertRaises(NameCollisionError):
            translate2(_Obj(("a",), (), ring["a"] ** 2))


class ExcludeVariableTests(SimpleTestCase):
    """Tests pour exclude_variable."""

    def test_identity_composition_reduces(self):
        """Teste K(x;x) ⊗ 1_{x;x²} réduit à K(x';x') après exclusion de x."""
        ring = Ring(["x"])
        identity = identity_mf(ring, ring["x"] ** 2)
        big = identity.ring
        M = koszul(ring, [ring["x"]], [ring["x"]]).embed(big)
        reduced = exclude_variable(tensor_mf(M, identity), "x")
        target = Ring(["x'"])
        expected = koszul(target, [target["x'"]], [target["x'"]])
        self.assertTrue(matfact_equal(reduced, expected))

    def test_no_eligible_entry(self):
        """Teste K(x;x) : la seule variable porte la courbure."""
        ring = Ring(["x"])
        with self.assertRaises(ExclusionError):
            exclude_variable(koszul(ring, [ring["x"]], [ring["x"]]), "x")

    def test_knorrer_pair(self):
        """Teste que l'exclusion de y1 défait knorrer."""
        ring = Ring(["x"])
        K = koszul(ring, [ring["x"]], [ring["x"]])
        reduced = exclude_variable(knorrer(K), "y1")
        self.assertEqual(reduced.ring, ring)
        self.assertTrue(matfact_equal(reduced, K))

    def test_curving_free_variable(self):
        """Teste l'exclusion de z dans K(z - x; 0) ⊗ K(x; x)."""
        ring = Ring(["x", "z"])
        x, z = ring["x"], ring["z"]
        M = tensor_mf(koszul(ring, [z - x], [ring.zero]), koszul(ring, [x], [x]))
        reduced = exclude_variable(M, "z")
        self.assertEqual(reduced.ring.names, ("x",))
        self.assertEqual(reduced.rank, (1, 1))
        self.assertEqual(reduced.W, reduced.ring["x"] ** 2)

    def test_exclude_all_reports_leftovers(self):
        """Teste exclude_all sur une variable inéliminable."""
        ring = Ring(["x"])
        K = koszul(ring, [ring["x"]], [ring["x"]])
        reduced, remaining = exclude_all(K, ["x"])
        self.assertEqual(remaining, ["x"])
        self.assertTrue(matfact_equal(reduced, K))

    def test_rejected_pairing_tries_next_entry(self):
        """Teste qu'un appariement refusé par l'invariant laisse essayer l'entrée suivante."""
        ring = Ring(["x", "z"])
        x, z = ring["x"], ring["z"]
        M = tensor_mf(koszul(ring, [z - x], [ring.zero]), koszul(ring, [x], [x]))
        calls = []

        def first_rejected(*args):
            calls.append(args)
            if len(calls) == 1:
                raise InvariantError("appariement invalide")
            return from_odd_matrix(*args)

        with mock.patch("mfcore.functors.from_odd_matrix", side_effect=first_rejected):
            reduced = exclude_variable(M, "z")
        self.assertEqual(len(calls), 2)
        self.assertEqual(reduced.ring.names, ("x",))
        self.assertEqual(reduced.W, reduced.ring["x"] ** 2)

    def test_exclude_all_keeps_variable_on_invalid_pairing(self):
        """Teste qu'exclude_all signale la variable quand tout appariement est invalide."""
        ring = Ring(["x", "z"])
        x, z = ring["x"], ring["z"]
        M = tensor_mf(koszul(ring, [z - x], [ring.zero]), koszul(ring, [x], [x]))
        with mock.patch(
            "mfcore.functors.from_odd_matrix", side_effect=InvariantError("appariement invalide")
        ):
            reduced, remaining = exclude_all(M, ["z"])
        self.assertEqual(remaining, ["z"])
        self.assertIs(reduced, M)
