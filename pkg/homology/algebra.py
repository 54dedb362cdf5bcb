"""
Structure d'algèbre de End⁰(M) = Ext⁰(M, M) par composition des cocycles.
"""

import logging
from dataclasses import dataclass
from itertools import product

from sympy.polys.domains import QQ_I
from tabulate import tabulate

from poly.matrices import PolyMatrix
from poly.modules import INFINITE, lift_vector
from poly.printing import format_monomial, format_scalar

from homology.complexes import ext
from homology.exceptions import HomologyError, InfiniteDimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EndAlgebra:
    """
    Table de multiplication sur une base de End⁰(M).

    ``table[i][j]`` contient les coordonnées de ``basis[i]·basis[j]``.
    """

    basis: tuple
    labels: tuple
    table: tuple
    unit: tuple

    @property
    def dimension(self):
        return len(self.basis)

    def multiply(self, u, v):
        n = self.dimension
        result = [QQ_I.zero] * n
        for i, j in product(range(n), repeat=2):
            if u[i] and v[j]:
                coeff = u[i] * v[j]
                for k in range(n):
                    result[k] += coeff * self.table[i][j][k]
        return tuple(result)

    def element(self, index):
        return tuple(QQ_I.one if k == index else QQ_I.zero for k in range(self.dimension))

    def is_unital(self):
        return all(
            self.multiply(self.unit, self.element(i)) == self.element(i)
            and self.multiply(self.element(i), self.unit) == self.element(i)
            for i in range(self.dimension)
        )

    def is_associative(self):
        """Vérification exhaustive sur les triplets de la base."""
        e = [self.element(i) for i in range(self.dimension)]
        return all(
            self.multiply(self.multiply(a, b), c) == self.multiply(a, self.multiply(b, c))
            for a, b, c in product(e, repeat=3)
        )

    def is_commutative(self):
        n = self.dimension
        return all(self.table[i][j] == self.table[j][i] for i, j in product(range(n), repeat=2))

    def nilpotent_index(self, index):
        """Plus petit k avec e^k = 0, ou ``None`` si l'élément n'est pas nilpotent."""
        power = self.element(index)
        for k in range(1, self.dimension + 2):
            if not any(power):
                return k
            power = self.multiply(power, self.element(index))
        return None

    def format_table(self):
        def show(coords):
            terms = [
                f"{format_scalar(c)}·{label}" for c, label in zip(coords, self.labels) if c
            ]
            return " + ".join(terms) or "0"

        rows = [
            [self.labels[i]] + [show(self.table[i][j]) for j in range(self.dimension)]
            for i in range(self.dimension)
        ]
        return tabulate(rows, headers=["·"] + list(self.labels), tablefmt="simple")


def _label(ring, position, monom, multiple):
    mono = format_monomial(ring.names, monom) or "1"
    return f"{mono}·e{position}" if multiple else mono


def end_algebra(M):
    """
    Algèbre End⁰(M) : produit de composition des cocycles, réduit dans la
    présentation de la partie paire.

    Raises:
        InfiniteDimensionError: End⁰(M) n'est pas de dimension finie
    """
    result = ext(M, M)
    C = result.complex
    module = result.even
    basis = module.standard_basis()
    if basis is INFINITE or result.dim_even is INFINITE:
        raise InfiniteDimensionError("End⁰ de dimension infinie: pas de table finie")
    ring = M.ring
    cocycles = list(result.even_cocycles)
    boundaries = [col for col in C.d_odd.columns() if any(col)]
    index = {key: k for k, key in enumerate(basis)}

    def representative(position, monom):
        term = ring.sympy.term_new(monom, QQ_I.one)
        return C.vector_to_matrix(tuple(term * c for c in cocycles[position]))

    def coordinates(matrix):
        vector = C.matrix_to_vector(matrix)
        coeffs = lift_vector(cocycles + boundaries, vector, ring)
        normal = module.normal_form(coeffs[: len(cocycles)])
        coords = [QQ_I.zero] * len(basis)
        for position, p in enumerate(normal):
            for monom, c in p.terms():
                if (position, monom) not in index:
                    raise HomologyError(f"Monôme hors de la base standard: {monom}")
                coords[index[(position, monom)]] = c
        return tuple(coords)

    reps = [representative(i, m) for i, m in basis]
    table = tuple(tuple(coordinates(a @ b) for b in reps) for a in reps)
    unit = coordinates(PolyMatrix.identity(ring, M.size))
    multiple = module.rank > 1
    labels = tuple(_label(ring, i, m, multiple) for i, m in basis)
    algebra = EndAlgebra(basis=tuple(basis), labels=labels, table=table, unit=unit)
    logger.info(f"Algèbre d'endomorphismes de dimension {algebra.dimension}")
    return algebra

