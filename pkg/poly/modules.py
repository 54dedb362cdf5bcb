"""
Sous-modules de R^r : bases de Gröbner (ordre position-puis-terme),
syzygies, relèvements et modules de présentation finie.

Les vecteurs sont des tuples de ``PolyElement``; la position 0 domine.
Sélection des paires par la stratégie du sucre, bases finales réduites.
"""

import enum
import logging
from dataclasses import dataclass
from functools import cached_property

from sympy.polys.domains import QQ_I
from sympy.polys.monomials import monomial_div, monomial_divides, monomial_lcm

from poly.exceptions import NotInSubmoduleError, RingMismatchError
from poly.matrices import PolyMatrix

logger = logging.getLogger(__name__)


class Dimension(enum.Enum):
    """Dimension scalaire infinie (escalier infini)."""

    INFINITE = "INFINITE"

    def __str__(self):
        return self.value


INFINITE = Dimension.INFINITE


def add_dimensions(*dims):
    if any(d is INFINITE for d in dims):
        return INFINITE
    return sum(dims)


def _lead(v):
    """(position, monôme, coefficient) du terme dominant, ou ``None``."""
    for i, c in enumerate(v):
        if c:
            m, coeff = c.LT
            return i, m, coeff
    return None


def _total_degree(v):
    return max((sum(m) for c in v for m in c.itermonoms()), default=0)


def _sub_multiple(f, g, monom, coeff):
    """``f - (coeff·x^monom)·g`` composante par composante."""
    return tuple(
        fk - gk.mul_term((monom, coeff)) if gk else fk for fk, gk in zip(f, g)
    )


def _monic(v):
    ld = _lead(v)
    if ld is None:
        return v
    inv = QQ_I.one / ld[2]
    return tuple(c.mul_ground(inv) if c else c for c in v)


def reduce_vector(v, basis, ring, full=True):
    """
    Reste de ``v`` modulo les éléments de ``basis`` (vecteurs de tête connue).

    Avec ``full=False`` seule la tête est réduite.
    """
    f = tuple(v)
    remainder = [ring.zero] * len(f)
    leads = [_lead(g) for g in basis]
    while True:
        ld = _lead(f)
        if ld is None:
            break
        i, m, c = ld
        for g, (gi, gm, gc) in zip(basis, leads):
            if gi == i and monomial_divides(gm, m):
                f = _sub_multiple(f, g, monomial_div(m, gm), c / gc)
                break
        else:
            if not full:
                return f
            term = ring.sympy.term_new(m, c)
            remainder[i] = remainder[i] + term
            f = f[:i] + (f[i] - term,) + f[i + 1 :]
    return tuple(remainder)


def module_groebner(vectors, ring):
    """
    Base de Gröbner réduite du sous-module engendré par ``vectors``.

    Buchberger avec sucre; les paires ne sont formées qu'entre éléments de
    même position de tête.
    """
    basis = []
    sugars = []
    pairs = []
    order = ring.sympy.order

    def insert(h, sugar):
        h = _monic(h)
        hi, hm, _ = _lead(h)
        for j, g in enumerate(basis):
            gi, gm, _ = _lead(g)
            if gi != hi:
                continue
            lcm = monomial_lcm(hm, gm)
            s = max(
                sugars[j] + sum(lcm) - sum(gm),
                sugar + sum(lcm) - sum(hm),
            )
            pairs.append((s, order(lcm), j, len(basis)))
        basis.append(h)
        sugars.append(sugar)

    for v in vectors:
        v = tuple(ring.embed(c) for c in v)
        h = reduce_vector(v, basis, ring)
        if _lead(h) is not None:
            insert(h, _total_degree(v))

    while pairs:
        pairs.sort()
        sugar, _, j, k = pairs.pop(0)
        gj, gk = basis[j], basis[k]
        _, mj, cj = _lead(gj)
        _, mk, ck = _lead(gk)
        lcm = monomial_lcm(mj, mk)
        zero = [ring.zero] * len(gj)
        s = _sub_multiple(tuple(zero), gj, monomial_div(lcm, mj), -(QQ_I.one / cj))
        s = _sub_multiple(s, gk, monomial_div(lcm, mk), QQ_I.one / ck)
        h = reduce_vector(s, basis, ring)
        if _lead(h) is not None:
            insert(h, sugar)

    return _interreduce(basis, ring)


def _interreduce(basis, ring):
    minimal = []
    for k, g in enumerate(basis):
        gi, gm, _ = _lead(g)
        redundant = False
        for j, other in enumerate(basis):
            if j == k:
                continue
            oi, om, _ = _lead(other)
            if oi == gi and monomial_divides(om, gm) and (om != gm or j < k):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        head = _lead(g)
        tail = tuple(
            c - ring.sympy.term_new(head[1], head[2]) if i == head[0] else c
            for i, c in enumerate(g)
        )
        rest = reduce_vector(tail, others, ring)
        reduced.append(
            tuple(
                c + ring.sympy.term_new(head[1], head[2]) if i == head[0] else c
                for i, c in enumerate(rest)
            )
        )
    order = ring.sympy.order
    # position croissante, monôme décroissant
    reduced.sort(key=lambda v: order(_lead(v)[1]), reverse=True)
    reduced.sort(key=lambda v: _lead(v)[0])
    return [_monic(v) for v in reduced]


def _augment(gens, rank, ring):
    m = len(gens)
    augmented = []
    for j, g in enumerate(gens):
        if len(g) != rank:
            raise RingMismatchError(f"Vecteur de longueur {len(g)} au lieu de {rank}")
        unit = tuple(ring.one if k == j else ring.zero for k in range(m))
        augmented.append(tuple(ring.embed(c) for c in g) + unit)
    return augmented


def syzygies(gens, ring, rank=None):
    """Générateurs du module des relations ``Σ s_j g_j = 0``."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return []
    rank = len(gens[0]) if rank is None else rank
    gb = module_groebner(_augment(gens, rank, ring), ring)
    result = [v[rank:] for v in gb if not any(v[:rank])]
    logger.debug(f"Syzygies: {len(gens)} générateurs -> {len(result)} relations")
    return result


def syzygy_matrix(gens, ring):
    """
    Module des syzygies des polynômes ``gens`` (colonnes = relations).

    Returns:
        FPModule de rang ``len(gens)`` dont les relations sont les syzygies
    """
    cols = syzygies([(ring.embed(g),) for g in gens], ring, rank=1)
    return FPModule(ring=ring, rank=len(gens), relations=tuple(cols))


def kernel(matrix):
    """Colonnes engendrant le noyau de ``matrix`` (vue comme R^n -> R^m)."""
    ring = matrix.ring
    if matrix.ncols == 0:
        return []
    cols = matrix.columns()
    if matrix.nrows == 0:
        return [
            tuple(ring.one if k == j else ring.zero for k in range(matrix.ncols))
            for j in range(matrix.ncols)
        ]
    return syzygies(cols, ring, rank=matrix.nrows)


def lift_vector(gens, v, ring):
    """
    Coefficients ``a`` tels que ``v = Σ a_j gens_j``.

    Raises:
        NotInSubmoduleError: ``v`` hors du sous-module (reste joint)
    """
    v = tuple(ring.embed(c) for c in v)
    rank = len(v)
    gens = [tuple(g) for g in gens]
    if not gens:
        if any(v):
            raise NotInSubmoduleError("Sous-module nul", witness=v)
        return ()
    gb = module_groebner(_augment(gens, rank, ring), ring)
    rest = reduce_vector(v + (ring.zero,) * len(gens), gb, ring)
    if any(rest[:rank]):
        raise NotInSubmoduleError(
            "Le vecteur n'appartient pas au sous-module", witness=rest[:rank]
        )
    return tuple(-c for c in rest[rank:])


def count_standard_monomials(leads, nvars):
    """Nombre de monômes hors de l'idéal monomial engendré par ``leads``."""
    monoms = standard_monomials(leads, nvars)
    return INFINITE if monoms is INFINITE else len(monoms)


def standard_monomials(leads, nvars):
    """Monômes standard (escalier) triés, ou ``INFINITE``."""
    leads = list(leads)
    if any(not any(m) for m in leads):
        return []
    for k in range(nvars):
        pure = any(m[k] > 0 and not any(m[:k] + m[k + 1 :]) for m in leads)
        if not pure:
            return INFINITE
    start = (0,) * nvars
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for k in range(nvars):
                cand = m[:k] + (m[k] + 1,) + m[k + 1 :]
                if cand in seen or any(monomial_divides(lm, cand) for lm in leads):
                    continue
                seen.add(cand)
                nxt.append(cand)
        frontier = nxt
    return sorted(seen, key=lambda m: (sum(m), m))


@dataclass(frozen=True)
class FPModule:
    """
    Module de présentation finie R^rank / (colonnes de ``relations``).

    ``grading`` donne la parité Z/2 de chaque générateur libre.
    """

    ring: object
    rank: int
    relations: tuple = ()
    grading: tuple = ()

    @cached_property
    def gb(self):
        return module_groebner(self.relations, self.ring) if self.relations else []

    def relation_matrix(self):
        return PolyMatrix.from_columns(self.ring, list(self.relations), self.rank)

    def normal_form(self, v):
        return reduce_vector(tuple(v), self.gb, self.ring)

    def leads_by_position(self):
        leads = {i: [] for i in range(self.rank)}
        for g in self.gb:
            i, m, _ = _lead(g)
            leads[i].append(m)
        return leads

    def standard_basis(self):
        """Base (position, monôme) du quotient, ou ``INFINITE``."""
        basis = []
        for i, leads in self.leads_by_position().items():
            monoms = standard_monomials(leads, len(self.ring))
            if monoms is INFINITE:
                return INFINITE
            basis.extend((i, m) for m in monoms)
        return basis

    def scalar_dimension(self):
        return scalar_dimension(self)


def scalar_dimension(module):
    """Dimension sur C du module (nombre de monômes standard)."""
    if module.rank == 0:
        return 0
    dims = [
        count_standard_monomials(leads, len(module.ring))
        for leads in module.leads_by_position().values()
    ]
    return add_dimensions(*dims)
