"""
Lieux critiques, graphes de différentielles et images par correspondance.

Les variétés sont décrites par des idéaux de l'espace cotangent : chaque
variable de base x_i est appariée à une coordonnée de fibre p_i.
"""

import enum
import logging
from dataclasses import dataclass

from sympy.polys.matrices import DomainMatrix

from poly.groebner import eliminate, groebner_basis, ideal_equal, quotient_dimension
from poly.modules import INFINITE
from poly.rings import Ring, derivative, ring_of

from support.exceptions import AmbientMismatchError

logger = logging.getLogger(__name__)


class CleanStatus(enum.Enum):
    CLEAN = "CLEAN"
    NOT_CLEAN = "NOT_CLEAN"
    UNDECIDED = "UNDECIDED"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class VarietyIdeal:
    """
    Idéal dans C[x, p] avec l'appariement x_i <-> p_i.

    ``base`` et ``fiber`` sont des tuples de noms de même longueur.
    """

    base: tuple
    fiber: tuple
    ideal: object

    def __post_init__(self):
        if len(self.base) != len(self.fiber):
            raise AmbientMismatchError(
                f"Appariement incomplet: {len(self.base)} variables de base, "
                f"{len(self.fiber)} de fibre"
            )

    @property
    def ring(self):
        return self.ideal.ring

    @property
    def pairing(self):
        return dict(zip(self.base, self.fiber))

    def __str__(self):
        return str(self.ideal)


def fiber_names(base, taken=()):
    """Coordonnées cotangentes : ``p`` en dimension un, ``p_x``, ``p_y``... sinon."""
    taken = set(taken) | set(base)
    names = []
    for name in base:
        candidate = "p" if len(base) == 1 else f"p_{name}"
        k = 1
        while candidate in taken:
            candidate = f"{candidate}{k}"
            k += 1
        taken.add(candidate)
        names.append(candidate)
    return names


def cotangent_ring(base, fiber=None):
    fiber = list(fiber or fiber_names(base))
    return Ring(list(base) + fiber), fiber


def critical_ideal(W, ring=None):
    """Idéal jacobien (∂W/∂x_1, ...) de ``W``."""
    ring = ring or ring_of(W)
    W = ring.embed(W)
    return groebner_basis([derivative(W, n) for n in ring.names], ring)


def milnor_number(W, ring=None):
    """Dimension de C[x]/(∂W), ou ``INFINITE`` si le lieu critique n'est pas isolé."""
    return quotient_dimension(critical_ideal(W, ring))


def graph_ideal(W, ring=None, fiber=None):
    """Graphe de ∂W : idéal (p_i - ∂W/∂x_i) dans C[x, p]."""
    ring = ring or ring_of(W)
    big, fiber = cotangent_ring(ring.names, fiber)
    W = big.embed(ring.embed(W))
    gens = [big[p] - derivative(W, x) for x, p in zip(ring.names, fiber)]
    return VarietyIdeal(tuple(ring.names), tuple(fiber), groebner_basis(gens, big))


def diagonal_correspondence(source, target, source_fiber=None, target_fiber=None):
    """Diagonale (x₂ - x₁, p₂ - p₁) dans T*X₁ × T*X₂."""
    source_fiber = list(source_fiber or fiber_names(source, target))
    target_fiber = list(target_fiber or fiber_names(target, list(source) + source_fiber))
    base = list(source) + list(target)
    fiber = source_fiber + target_fiber
    ring = Ring(base + fiber)
    gens = [ring[b] - ring[a] for a, b in zip(source, target)]
    gens += [ring[q] - ring[p] for p, q in zip(source_fiber, target_fiber)]
    return VarietyIdeal(tuple(base), tuple(fiber), groebner_basis(gens, ring))


def correspondence_image(corr, src, flip_first=False):
    """
    Image de ``src`` (sur X₁) par la correspondance ``corr`` (sur X₁ × X₂).

    Les variables de X₁ (base et fibre appariée dans ``corr``) sont éliminées
    de corr.I + src.I; avec ``flip_first``, p₁ est changé en -p₁ dans ``src``.

    Raises:
        AmbientMismatchError: la base de ``src`` n'est pas une partie de celle de ``corr``
    """
    pairing = corr.pairing
    missing = [x for x in src.base if x not in pairing]
    if missing:
        raise AmbientMismatchError(f"Variables absentes de la correspondance: {missing}")
    ring = corr.ring
    mapping = {x: x for x in src.base}
    mapping.update({p: pairing[x] for x, p in zip(src.base, src.fiber)})
    moved = [src.ring.transport(g, ring, mapping) for g in src.ideal.gb]
    if flip_first:
        replacements = [(ring[pairing[x]], -ring[pairing[x]]) for x in src.base]
        moved = [g.compose(list(replacements)) for g in moved]
    combined = groebner_basis(list(corr.ideal.gb) + moved, ring)
    drop = list(src.base) + [pairing[x] for x in src.base]
    image = eliminate(combined, drop)
    base = tuple(x for x in corr.base if x not in src.base)
    fiber = tuple(pairing[x] for x in base)
    logger.debug(f"Image par correspondance: {image}")
    return VarietyIdeal(base, fiber, image)


def restrict_to_zero_section(variety):
    """Idéal + (p) : intersection avec la section nulle."""
    ring = variety.ring
    return groebner_basis(
        list(variety.ideal.gb) + [ring[p] for p in variety.fiber], ring
    )


def graph_restriction_check(W, ring=None):
    """
    Vrai si graph_ideal(W) + (p) = critical_ideal(W) + (p) dans C[x, p].
    """
    graph = graph_ideal(W, ring)
    big = graph.ring
    critical = critical_ideal(W, ring)
    expected = groebner_basis(
        [big.embed(g) for g in critical.gb] + [big[p] for p in graph.fiber], big
    )
    return ideal_equal(restrict_to_zero_section(graph), expected)


def hessian_determinant(W, ring=None):
    """Déterminant de la matrice hessienne de ``W``."""
    ring = ring or ring_of(W)
    W = ring.embed(W)
    names = ring.names
    rows = [[derivative(derivative(W, a), b) for b in names] for a in names]
    domain = ring.sympy.to_domain()
    return DomainMatrix(rows, (len(names), len(names)), domain).det()


def clean_status(W, ring=None):
    """
    Propreté du lieu critique, décidée seulement dans le cas isolé.

    CLEAN si le déterminant hessien est inversible modulo l'idéal jacobien
    (tous les points critiques sont non dégénérés); UNDECIDED si le lieu
    critique n'est pas de dimension zéro.
    """
    ring = ring or ring_of(W)
    critical = critical_ideal(W, ring)
    mu = quotient_dimension(critical)
    if mu is INFINITE:
        return CleanStatus.UNDECIDED
    if mu == 0:
        return CleanStatus.CLEAN
    det = hessian_determinant(W, ring)
    with_det = groebner_basis(list(critical.gb) + [det], ring)
    return CleanStatus.CLEAN if with_det.is_unit else CleanStatus.NOT_CLEAN


def twist_shift_parity(dim_x, dim_y):
    """Parité de ½ dim X - dim Y - 1 (métadonnée des rapports)."""
    if dim_x % 2:
        raise AmbientMismatchError(f"Dimension réelle impaire: {dim_x}")
    return (dim_x // 2 - dim_y - 1) % 2
