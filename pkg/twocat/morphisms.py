"""
Catégories de morphismes et composition des 1-morphismes.

Un 1-morphisme de (y₁; W₁) vers (y₂; W₂) au-dessus de la base x est une
factorisation sur C[x, y₁, y₂] de courbure W₂ - W₁. La composition est le
produit tensoriel sur l'union des anneaux suivi de l'exclusion des
variables de l'objet intermédiaire.
"""

import logging

from mfcore.factorizations import tensor_mf
from mfcore.functors import exclude_all, identity_mf
from poly.exceptions import NameCollisionError
from poly.printing import format_poly
from poly.rings import Ring

from twocat.exceptions import BaseMismatchError, IncompatibleCurvingError

logger = logging.getLogger(__name__)


def _check_same_base(*objects):
    base = objects[0].base_names
    for o in objects[1:]:
        if o.base_names != base:
            raise BaseMismatchError(
                f"Bases différentes: {list(base)} et {list(o.base_names)}"
            )


def lg_hom_ring(o1, o2):
    """
    Anneau et courbure de la catégorie des morphismes de o1 vers o2.

    Returns:
        (anneau C[x, y₁, y₂], W₂ - W₁)
    """
    _check_same_base(o1, o2)
    clash = set(o1.extra_names) & set(o2.extra_names)
    if clash:
        raise NameCollisionError(
            f"Variables supplémentaires communes: {sorted(clash)} (renommer d'abord)"
        )
    ring = Ring(o1.base + o1.extras + o2.extras)
    return ring, ring.embed(o2.W) - ring.embed(o1.W)


def is_1morphism(m, o1, o2):
    """Vrai si ``m`` est un objet de la catégorie des morphismes de o1 vers o2."""
    ring, curving = lg_hom_ring(o1, o2)
    return m.ring == ring and m.W == curving


def identity_1morphism(o, suffix="'"):
    """
    Identité de ``o`` vers sa copie primée.

    Returns:
        (objet primé, factorisation K_{W(y')-W(y)}(y' - y))
    """
    mapping = {n: f"{n}{suffix}" for n in o.extra_names}
    target = o.rename_extras(mapping)
    M = identity_mf(o.ring, o.W, names=o.extra_names, suffix=suffix)
    return target, M


def compose_1morphisms(m12, m23, middle, strict=False):
    """
    Composition m23 ∘ m12 à travers l'objet intermédiaire ``middle``.

    Les variables supplémentaires de ``middle`` sont exclues tant qu'une entrée
    linéaire le permet; celles qui restent sont signalées.

    Raises:
        IncompatibleCurvingError: la courbure de ``middle`` ne se simplifie pas
    """
    ring = m12.ring.union(m23.ring)
    names = list(middle.extra_names)
    W2 = ring.embed(middle.W)
    for label, rest in (("source", ring.embed(m12.W) - W2), ("but", ring.embed(m23.W) + W2)):
        if any(_depends_on(rest, ring, n) for n in names):
            raise IncompatibleCurvingError(
                f"Courbure {label} incompatible avec l'objet intermédiaire: {format_poly(rest)}"
            )
    product = tensor_mf(m12.embed(ring), m23.embed(ring))
    result, residual = exclude_all(product, names)
    if residual:
        message = f"Variables intermédiaires résiduelles: {residual}"
        if strict:
            raise IncompatibleCurvingError(message)
        logger.warning(message)
    logger.info(
        f"Composition: rang {product.rank} -> {result.rank}, "
        f"courbure {format_poly(result.W)}"
    )
    return result


def _depends_on(p, ring, name):
    k = ring.index(name)
    return any(m[k] for m in p.itermonoms())
