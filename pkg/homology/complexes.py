"""
Complexes de morphismes et leur homologie Z/2-graduée.

Un morphisme f : M -> N est une matrice N.size × M.size; la base standard
est formée des matrices élémentaires E_ts (t dans la base de N, s dans celle
de M), de parité |t| + |s|. La différentielle est le supercommutateur

    d f = D_N f - (-1)^{|f|} f D_M.
"""

import logging
from dataclasses import dataclass, field

from mfcore.factorizations import KoszulSpec, koszul_factorization
from poly.exceptions import RingMismatchError
from poly.matrices import PolyMatrix
from poly.modules import INFINITE, FPModule, kernel, scalar_dimension, syzygies
from poly.printing import format_poly, matrix_table

from homology.exceptions import CurvingMismatchError

logger = logging.getLogger(__name__)


def hom_basis(M, N):
    """Paires (t, s) de la base de Hom(M, N), paires d'abord, puis impaires."""
    pairs = [(t, s) for t in range(N.size) for s in range(M.size)]
    pn, pm = N.parities, M.parities
    even = [(t, s) for t, s in pairs if (pn[t] + pm[s]) % 2 == 0]
    odd = [(t, s) for t, s in pairs if (pn[t] + pm[s]) % 2 == 1]
    return even, odd


@dataclass(frozen=True)
class HomComplex:
    """
    Complexe 2-périodique Hom(M, N).

    ``d_even`` va de la partie paire (colonnes) vers la partie impaire
    (lignes); ``d_odd`` fait le chemin inverse.
    """

    ring: object
    even_basis: tuple
    odd_basis: tuple
    d_even: PolyMatrix
    d_odd: PolyMatrix
    curving: object = None
    source_size: int = 0
    target_size: int = 0

    @property
    def rank_even(self):
        return len(self.even_basis)

    @property
    def rank_odd(self):
        return len(self.odd_basis)

    def squares_to(self):
        """Courbure W_N - W_M du complexe (nulle pour un vrai complexe)."""
        return self.curving

    def is_complex(self):
        return not self.curving

    def check(self):
        """Vérifie d·d = (W_N - W_M)·Id sur les deux parités."""
        return (self.d_odd @ self.d_even).is_scalar(self.curving) and (
            self.d_even @ self.d_odd
        ).is_scalar(self.curving)

    def vector_to_matrix(self, v, parity=0):
        """Matrice N.size × M.size associée à un vecteur de coordonnées."""
        basis = self.even_basis if parity == 0 else self.odd_basis
        rows = [[self.ring.zero] * self.source_size for _ in range(self.target_size)]
        for (t, s), c in zip(basis, v):
            rows[t][s] = c
        return PolyMatrix(self.ring, rows, self.target_size, self.source_size)

    def matrix_to_vector(self, f, parity=0):
        basis = self.even_basis if parity == 0 else self.odd_basis
        return tuple(f[t, s] for t, s in basis)


def hom_complex(M, N):
    """
    Complexe des morphismes de M vers N.

    Raises:
        RingMismatchError: M et N ne sont pas dans le même anneau
    """
    if M.ring != N.ring:
        raise RingMismatchError(f"Anneaux différents: {M.ring!r} et {N.ring!r}")
    ring = M.ring
    DM, DN = M.D, N.D
    pn, pm = N.parities, M.parities
    even, odd = hom_basis(M, N)

    def differential(source, target):
        index = {pair: k for k, pair in enumerate(target)}
        rows = [[ring.zero] * len(source) for _ in target]
        for col, (t, s) in enumerate(source):
            sign = -1 if (pn[t] + pm[s]) % 2 == 0 else 1
            for u in range(N.size):
                if DN[u, t]:
                    rows[index[(u, s)]][col] += DN[u, t]
            for w in range(M.size):
                if DM[s, w]:
                    rows[index[(t, w)]][col] += sign * DM[s, w]
        return PolyMatrix(ring, rows, len(target), len(source))

    return HomComplex(
        ring=ring,
        even_basis=tuple(even),
        odd_basis=tuple(odd),
        d_even=differential(even, odd),
        d_odd=differential(odd, even),
        curving=N.W - M.W,
        source_size=M.size,
        target_size=N.size,
    )


def homology_presentation(d_out, d_in, rank, ring):
    """
    Présentation de ker(d_out) / im(d_in) sur R^rank.

    Returns:
        (FPModule, cocycles) où les cocycles engendrent le noyau
    """
    if rank == 0:
        return FPModule(ring=ring, rank=0), []
    cycles = kernel(d_out)
    if not cycles:
        return FPModule(ring=ring, rank=0), []
    boundaries = [col for col in d_in.columns() if any(col)]
    relations = [
        syz[: len(cycles)]
        for syz in syzygies(cycles + boundaries, ring, rank=rank)
        if any(syz[: len(cycles)])
    ]
    module = FPModule(ring=ring, rank=len(cycles), relations=tuple(relations))
    return module, cycles


@dataclass(frozen=True)
class ExtResult:
    """Homologie paire et impaire d'un complexe de morphismes."""

    even: FPModule
    odd: FPModule
    dim_even: object
    dim_odd: object
    even_cocycles: tuple = field(default=(), compare=False)
    odd_cocycles: tuple = field(default=(), compare=False)
    complex: HomComplex = field(default=None, compare=False, repr=False)

    @property
    def dims(self):
        return self.dim_even, self.dim_odd

    def is_finite(self):
        return INFINITE not in self.dims

    def __str__(self):
        return f"Ext: pair {self.dim_even}, impair {self.dim_odd}"

    def relations_text(self):
        """Matrices de relations des deux parties (rapport détaillé)."""
        parts = []
        for label, module in (("pair", self.even), ("impair", self.odd)):
            rows = module.relation_matrix().rows
            table = matrix_table(rows) if rows and rows[0] else "(aucune relation)"
            parts.append(f"{label}: {module.rank} générateurs\n{table}")
        return "\n".join(parts)


def complex_homology(C):
    """Homologie d'un ``HomComplex`` dont la courbure est nulle."""
    even, even_cycles = homology_presentation(C.d_even, C.d_odd, C.rank_even, C.ring)
    odd, odd_cycles = homology_presentation(C.d_odd, C.d_even, C.rank_odd, C.ring)
    return ExtResult(
        even=even,
        odd=odd,
        dim_even=scalar_dimension(even),
        dim_odd=scalar_dimension(odd),
        even_cocycles=tuple(even_cycles),
        odd_cocycles=tuple(odd_cycles),
        complex=C,
    )


def ext(M, N):
    """
    Ext•(M, N) comme homologie du complexe des morphismes.

    Raises:
        CurvingMismatchError: W_M ≠ W_N
    """
    if M.ring == N.ring and M.W != N.W:
        raise CurvingMismatchError(
            f"Courbures différentes: {format_poly(M.W)} et {format_poly(N.W)}"
        )
    logger.info(f"Calcul de Ext entre rangs {M.rank} et {N.rank}")
    result = complex_homology(hom_complex(M, N))
    logger.info(f"Ext calculé: dimensions {result.dim_even}, {result.dim_odd}")
    return result


def ext_dims(M, N):
    return ext(M, N).dims


def koszul_homology(p, ring):
    """
    Dimensions (paire, impaire) de l'homologie du complexe de Koszul de ``p``.

    La différentielle contracte vers le degré pair : H⁰ = R/(p) en parité paire.
    """
    p = tuple(ring.embed(a) for a in p)
    K = koszul_factorization(KoszulSpec(tuple(ring.zero for _ in p), p), ring)
    C = HomComplex(
        ring=ring,
        even_basis=tuple((k, 0) for k in range(K.r0)),
        odd_basis=tuple((k, 0) for k in range(K.r1)),
        d_even=K.d0,
        d_odd=K.d1,
        curving=ring.zero,
        source_size=1,
        target_size=K.size,
    )
    result = complex_homology(C)
    logger.debug(f"Homologie de Koszul de {len(p)} éléments: {result.dims}")
    return result.dims
