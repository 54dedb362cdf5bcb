"""
2-foncteurs de correspondance : application aux objets, composition,
transformations de Legendre, correspondance identité et noyaux de Koszul.
"""

import logging

from mfcore.factorizations import koszul_divide, koszul_factorization, tensor_mf
from poly.exceptions import NameCollisionError
from poly.rings import Ring, Variable

from twocat.exceptions import BaseMismatchError, IncompatibleCurvingError
from twocat.morphisms import lg_hom_ring
from twocat.objects import Correspondence, LGObject

logger = logging.getLogger(__name__)


def correspondence_apply(c, o):
    """
    Image de (u; W) par la correspondance (z; W₁₂) de x vers y :
    l'objet (x, u, z; W + W₁₂) au-dessus de y.
    """
    if o.base_names != tuple(v.name for v in c.source):
        raise BaseMismatchError(
            f"La base de l'objet {list(o.base_names)} n'est pas la source de la correspondance"
        )
    extras = c.source + o.extras + c.extras
    ring = Ring(c.target + extras)
    W = ring.embed(o.W) + ring.embed(c.W12)
    return LGObject(c.target, extras, W)


def compose_correspondences(c12, c23):
    """(w; W₂₃) ∘ (u; W₁₂) = (u, w, y; W₁₂ + W₂₃), y étant la base intermédiaire."""
    if tuple(v.name for v in c12.target) != tuple(v.name for v in c23.source):
        raise BaseMismatchError("La cible de la première correspondance doit être la source de la seconde")
    extras = c12.extras + c23.extras + c12.target
    ring = Ring(c12.source + c23.target + extras)
    return Correspondence(
        c12.source, c23.target, extras, ring.embed(c12.W12) + ring.embed(c23.W12)
    )


def legendre_correspondence(source, target, sign=1):
    """Correspondance de courbure ±Σ x_i y_i, sans variable supplémentaire."""
    if len(source) != len(target):
        raise BaseMismatchError(
            f"Bases de longueurs différentes: {len(source)} et {len(target)}"
        )
    ring = Ring(tuple(source) + tuple(target))
    W12 = sum((ring[x] * ring[y] for x, y in zip(ring.names, ring.names[len(source) :])), ring.zero)
    return Correspondence(source, target, (), W12 if sign > 0 else -W12)


def legendre(o, target, sign=1):
    """Transformée de Legendre L± : (u; W) -> (x, u; W ± x·y) au-dessus de ``target``."""
    return correspondence_apply(legendre_correspondence(o.base, target, sign), o)


def identity_correspondence(base, suffix="'", multiplier="a"):
    """
    Correspondance identité (a; Σ a_i (x'_i - x_i)) de x vers x'.

    Raises:
        NameCollisionError: un nom primé ou un multiplicateur est déjà pris
    """
    base = [getattr(v, "name", v) for v in base]
    primes = [f"{n}{suffix}" for n in base]
    taken = set(base) | set(primes)
    if len(base) == 1:
        multipliers = [multiplier]
    else:
        multipliers = [f"{multiplier}{k}" for k in range(1, len(base) + 1)]
    if taken & set(multipliers):
        raise NameCollisionError(f"Multiplicateur déjà pris: {sorted(taken & set(multipliers))[0]}")
    ring = Ring(base + primes + multipliers)
    W12 = sum(
        (ring[a] * (ring[p] - ring[x]) for a, p, x in zip(multipliers, primes, base)),
        ring.zero,
    )
    return Correspondence(base, primes, multipliers, W12)


def curvings_differ_by_constant(o1, o2):
    """Vrai si W₂ - W₁ est une constante (objets équivalents après augmentation)."""
    if o1.base_names != o2.base_names or o1.extra_names != o2.extra_names:
        return False
    return (o1.ring.embed(o2.W) - o1.W).is_ground


def _shift_kernel(ring, total, mapping):
    """K(v' - v; q) de courbure total(v') - total(v), pour v parcourant ``mapping``."""
    difference = ring.transport(total, ring, mapping) - total
    p = [ring[new] - ring[old] for old, new in mapping.items()]
    return koszul_factorization(koszul_divide(difference, p, ring), ring)


def koszul_kernel(c, W=None, suffix="'"):
    """
    Noyau de Koszul de la correspondance : factorisation sur
    C[x, y, z, x', z'] de courbure [W + W₁₂](x', z') - [W + W₁₂](x, z),
    de partie p = (x' - x, z' - z).

    Args:
        c: correspondance de x vers y
        W: courbure additionnelle en x
    """
    copied = list(c.source) + list(c.extras)
    mapping = {v.name: f"{v.name}{suffix}" for v in copied}
    ring = c.ring.extend(*[Variable(mapping[v.name], v.cohdeg) for v in copied])
    total = ring.embed(c.W12) + (ring.zero if W is None else ring.embed(W))
    return _shift_kernel(ring, total, mapping)


def transport_morphism(m, o1, o2, c, suffix="'"):
    """
    Transporte un 1-morphisme m : o1 -> o2 le long de la correspondance ``c``.

    Le résultat vit dans la catégorie des morphismes de c(o1) vers c(o2), les
    variables x et z de c(o2) étant primées : c'est m ⊗ K(x' - x, z' - z; q).

    Returns:
        (c(o1), c(o2) renommé, factorisation transportée)
    """
    image1 = correspondence_apply(c, o1)
    mapping = {v.name: f"{v.name}{suffix}" for v in list(c.source) + list(c.extras)}
    image2 = correspondence_apply(c, o2).rename_extras(mapping)
    ring, curving = lg_hom_ring(image1, image2)
    total = ring.embed(o2.W) + ring.embed(c.W12)
    result = tensor_mf(m.embed(ring), _shift_kernel(ring, total, mapping))
    if result.W != curving:
        raise IncompatibleCurvingError(
            "Le morphisme n'a pas la courbure W₂ - W₁ attendue"
        )
    logger.debug(f"Transport d'un morphisme de rang {m.rank} -> {result.rank}")
    return image1, image2, result
