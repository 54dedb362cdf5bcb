"""
Idéaux, bases de Gröbner réduites, formes normales et élimination.

Les bases d'idéaux sont calculées par ``sympy.polys.groebnertools`` (Buchberger
ou F5B selon ``settings.POLY_GROEBNER_METHOD``); l'élimination utilise un
ordre par blocs (variables éliminées en premier).
"""

import logging
from dataclasses import dataclass, field

from django.conf import settings
from sympy import Symbol
from sympy.polys.domains import QQ_I
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import ProductOrder, grevlex
from sympy.polys.rings import PolyRing

from poly.exceptions import NotInIdealError, RingMismatchError
from poly.rings import Ring, ring_of

logger = logging.getLogger(__name__)


class _Block:
    """Extracteur hachable d'une tranche d'exposants (ordre par blocs)."""

    def __init__(self, start, stop):
        self.start = start
        self.stop = stop

    def __call__(self, monom):
        return monom[self.start : self.stop]

    def __eq__(self, other):
        return isinstance(other, _Block) and (self.start, self.stop) == (
            other.start,
            other.stop,
        )

    def __hash__(self):
        return hash((self.start, self.stop))


def groebner_method():
    return getattr(settings, "POLY_GROEBNER_METHOD", "buchberger")


def elimination_order(nfirst, ntotal):
    """Ordre degrevlex par blocs : les ``nfirst`` premières variables dominent."""
    return ProductOrder(
        (grevlex, _Block(0, nfirst)),
        (grevlex, _Block(nfirst, ntotal)),
    )


def _reduced_basis(polys, sympy_ring):
    polys = [p for p in polys if p]
    if not polys:
        return []
    return groebner(polys, sympy_ring, method=groebner_method())


@dataclass(frozen=True)
class IdealGB:
    """Idéal donné par ses générateurs et sa base de Gröbner réduite (degrevlex)."""

    ring: Ring
    generators: tuple
    gb: tuple = field(default=())
    order: str = "degrevlex"

    def __contains__(self, p):
        return not self.normal_form(p)

    def normal_form(self, p):
        return normal_form(p, self)

    @property
    def is_zero(self):
        return not self.gb

    @property
    def is_unit(self):
        return any(g.is_ground for g in self.gb)

    def leading_monomials(self):
        return [g.LM for g in self.gb]

    def __str__(self):
        from poly.printing import format_poly

        return "(" + ", ".join(format_poly(g) for g in self.gb) + ")"


def groebner_basis(gens, ring=None):
    """
    Base de Gröbner réduite de l'idéal engendré par ``gens``.

    Args:
        gens: polynômes d'un même anneau (liste vide: idéal nul)
        ring: anneau de travail (déduit du premier générateur sinon)

    Returns:
        IdealGB dont la base est réduite et unitaire
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise RingMismatchError("Anneau requis pour un idéal sans générateur")
        ring = ring_of(gens[0])
    gens = tuple(ring.embed(g) for g in gens)
    gb = tuple(_reduced_basis(gens, ring.sympy))
    logger.debug(f"Base de Gröbner: {len(gens)} générateurs -> {len(gb)} éléments")
    return IdealGB(ring=ring, generators=gens, gb=gb)


def normal_form(p, ideal):
    """Reste unique de ``p`` modulo la base de Gröbner de ``ideal``."""
    if p.ring != ideal.ring.sympy:
        try:
            p = ideal.ring.embed(p)
        except RingMismatchError as e:
            raise RingMismatchError(
                f"Forme normale: anneaux incompatibles ({e})"
            ) from e
    if not ideal.gb or not p:
        return p
    return p.rem(list(ideal.gb))


def lift(p, ideal):
    """
    Exprime ``p`` comme combinaison des générateurs de ``ideal``.

    Raises:
        NotInIdealError: ``p`` n'est pas dans l'idéal (reste joint)
    """
    from poly.modules import lift_vector

    ring = ideal.ring
    try:
        coeffs = lift_vector([(g,) for g in ideal.generators], (ring.embed(p),), ring)
    except Exception as e:
        witness = getattr(e, "witness", None)
        raise NotInIdealError(
            "Le polynôme n'appartient pas à l'idéal",
            witness[0] if witness else normal_form(p, ideal),
        ) from e
    return coeffs


def eliminate(ideal, drop):
    """
    Idéal d'élimination ``I ∩ C[variables restantes]``.

    L'anneau est réordonné (variables éliminées en tête) puis muni de
    l'ordre par blocs; les éléments de la base libres des variables
    éliminées engendrent l'intersection.
    """
    ring = ideal.ring
    drop = [getattr(v, "name", v) for v in drop]
    for name in drop:
        ring.index(name)
    kept = [n for n in ring.names if n not in drop]
    ordered = drop + kept
    block_ring = PolyRing(
        [Symbol(n) for n in ordered], QQ_I, elimination_order(len(drop), len(ordered))
    )
    polys = [g.set_ring(block_ring) for g in ideal.gb]
    basis = _reduced_basis(polys, block_ring)
    target = ring.without(drop)
    survivors = [
        g.set_ring(target.sympy) for g in basis if not any(g.degrees()[: len(drop)])
    ]
    logger.debug(
        f"Élimination de {drop}: {len(basis)} éléments, {len(survivors)} conservés"
    )
    return groebner_basis(survivors, target)


def quotient_dimension(ideal):
    """Dimension sur C de ``R/I`` (``INFINITE`` si l'escalier est infini)."""
    from poly.modules import count_standard_monomials

    if ideal.is_unit:
        return 0
    return count_standard_monomials(ideal.leading_monomials(), len(ideal.ring))


def ideal_equal(a, b):
    return a.ring == b.ring and set(a.gb) == set(b.gb)
