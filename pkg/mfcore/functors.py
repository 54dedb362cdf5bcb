"""
Foncteurs et réductions : périodicité de Knörrer, factorisation identité,
translation par deux, exclusion de variable.
"""

import logging
from dataclasses import replace

from poly.exceptions import NameCollisionError
from poly.matrices import PolyMatrix
from poly.printing import format_poly
from poly.rings import Variable
from sympy.polys.domains import QQ_I

from mfcore.exceptions import ExclusionError, InvariantError, MatFactError
from mfcore.factorizations import (
    KoszulSpec,
    from_odd_matrix,
    koszul_divide,
    koszul_factorization,
    tensor_mf,
)

logger = logging.getLogger(__name__)

PRIME = "'"


def knorrer(M, names=("y1", "y2")):
    """
    M ⊗ K(y₁ - i·y₂; y₁ + i·y₂) sur l'anneau étendu par y₁, y₂.

    Raises:
        NameCollisionError: y₁ ou y₂ existe déjà
    """
    ring = M.ring.extend(*names)
    y1, y2 = ring[names[0]], ring[names[1]]
    i = ring.constant(0, 1)
    kernel = koszul_factorization(KoszulSpec((y1 - i * y2,), (y1 + i * y2,)), ring)
    return tensor_mf(M.embed(ring), kernel)


def primed_names(names, suffix=PRIME):
    return [f"{n}{suffix}" for n in names]


def identity_mf(ring, W, names=None, suffix=PRIME):
    """
    Noyau identité K_{W(x')-W(x)}(x' - x) sur l'anneau (x, x').

    Args:
        ring: anneau contenant les variables x
        W: courbure W(x)
        names: sous-ensemble des variables à doubler (toutes par défaut)
    """
    names = list(names or ring.names)
    primes = primed_names(names, suffix)
    clash = set(primes).intersection(ring.names)
    if clash:
        raise NameCollisionError(f"Variable primée déjà présente: {sorted(clash)[0]}")
    big = ring.extend(*[Variable(p, ring.variable(n).cohdeg) for n, p in zip(names, primes)])
    mapping = dict(zip(names, primes))
    W_prime = ring.transport(W, big, mapping)
    W_base = big.embed(W)
    p = [big[pn] - big[n] for n, pn in zip(names, primes)]
    spec = koszul_divide(W_prime - W_base, p, big)
    return koszul_factorization(spec, big)


def translate2(obj, name="a"):
    """
    Translation par deux d'un objet de Landau-Ginzburg : ajoute ``a`` aux
    variables supplémentaires et a² à la courbure.

    Au niveau des factorisations, la même opération appliquée deux fois est
    réalisée par ``knorrer``.
    """
    if name in obj.ring:
        raise NameCollisionError(f"Variable déjà présente: {name}")
    extras = tuple(obj.extras) + (Variable(name),)
    ring = obj.ring.extend(name)
    W = ring.embed(obj.W) + ring[name] ** 2
    return replace(obj, extras=extras, W=W)


def _depends_on(p, index):
    return any(m[index] for m in p.itermonoms())


def _variables_of(p, ring):
    return {ring.names[k] for m in p.itermonoms() for k, e in enumerate(m) if e}


def _linear_split(entry, ring, name):
    """(c, r) si ``entry = c·v + r`` avec c scalaire non nul et r sans v."""
    k = ring.index(name)
    if entry.degree(ring[name]) != 1:
        return None
    c = entry.coeff_wrt(ring[name], 1)
    if not c.is_ground:
        return None
    c = c.const()
    r = entry - ring[name].mul_ground(c)
    if _depends_on(r, k):
        return None
    return c, r


def _pairing(D, value):
    """
    Appariement source -> cible des entrées égales à ±value.

    Retourne (sources, cibles) si l'appariement est parfait, sinon None.
    """
    n = D.nrows
    src_to_tgt = {}
    tgt_seen = set()
    for s in range(n):
        for t in range(n):
            e = D[t, s]
            if e and (e == value or e == -value):
                if s in src_to_tgt or t in tgt_seen:
                    return None
                src_to_tgt[s] = t
                tgt_seen.add(t)
    sources = sorted(src_to_tgt)
    if 2 * len(sources) != n or set(sources) & tgt_seen:
        return None
    return sources, [src_to_tgt[s] for s in sources]


def _candidates(M):
    """Entrées (ligne, colonne) de D, colonnes paires d'abord."""
    D = M.D
    order = list(range(M.size))
    for j in order:
        for i in order:
            if D[i, j]:
                yield i, j


def exclude_variable(M, v):
    """
    Réduit M en éliminant la variable ``v``.

    Une entrée ``c·v + r`` (c scalaire non nul, r sans v) appariée en facteur
    de Koszul K(c·v + r; b) ⊗ N permet de remplacer M par N|_{v = -r/c},
    de rang moitié. Si la courbure ne dépend pas de v (exclusion usuelle), r
    est quelconque; sinon r doit porter une autre variable qui disparaît avec
    v de la courbure (paire de Knörrer).

    Raises:
        ExclusionError: aucune entrée éligible
        InvariantError: la courbure dépend encore de v après substitution
    """
    ring = M.ring
    name = getattr(v, "name", v)
    k = ring.index(name)
    D = M.D
    curving_free = not _depends_on(M.W, k)
    for i, j in _candidates(M):
        split = _linear_split(D[i, j], ring, name)
        if split is None:
            continue
        c, r = split
        value = -r.mul_ground(QQ_I.one / c)
        W_sub = M.W.compose([(ring[name], value)])
        dropped = {name}
        if not curving_free:
            partners = _variables_of(r, ring)
            if not partners or any(
                _depends_on(W_sub, ring.index(p)) for p in partners
            ):
                continue
            dropped |= partners
        pairing = _pairing(D, D[i, j])
        if pairing is None or j not in pairing[0]:
            continue
        sources, _ = pairing
        target = ring.without(dropped)

        def subst(p, value=value):
            return p.compose([(ring[name], value)])

        block = [[subst(D[a, b]) for b in sources] for a in sources]
        if any(
            _depends_on(e, ring.index(d)) for row in block for e in row for d in dropped
        ):
            continue
        if _depends_on(W_sub, k):
            raise InvariantError(f"La courbure dépend encore de {name}")
        parities = [M.parities[s] for s in sources]
        block = PolyMatrix(target, [[target.embed(e) for e in row] for row in block])
        try:
            result = from_odd_matrix(target, target.embed(W_sub), block, parities)
        except InvariantError as e:
            logger.debug(f"Appariement rejeté pour {name} via {format_poly(D[i, j])}: {e}")
            continue
        logger.debug(
            f"Exclusion de {name} via {format_poly(D[i, j])}: "
            f"rang {M.rank} -> {result.rank}"
        )
        return result
    raise ExclusionError(f"Aucune entrée éligible pour exclure {name}")


def exclude_all(M, names):
    """
    Exclut autant de variables de ``names`` que possible.

    Returns:
        (factorisation réduite, variables restantes)
    """
    remaining = [n for n in names if n in M.ring]
    progress = True
    while remaining and progress:
        progress = False
        for name in list(remaining):
            if name not in M.ring:
                remaining.remove(name)
                progress = True
                continue
            try:
                M = exclude_variable(M, name)
            except MatFactError as e:
                logger.debug(f"Exclusion de {name} impossible: {e}")
                continue
            remaining = [n for n in remaining if n in M.ring]
            progress = True
    return M, remaining
