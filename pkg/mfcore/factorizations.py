"""
Factorisations matricielles Z/2-graduées et constructions de base.

Une factorisation M = (M⁰ ⊕ M¹, D) de courbure W est donnée par
``d0 : M⁰ -> M¹`` (r1×r0) et ``d1 : M¹ -> M⁰`` (r0×r1) avec
d1·d0 = W·Id et d0·d1 = W·Id.

Convention de signe du produit tensoriel : D = D₁⊗1 + σ₁⊗D₂ où σ₁ vaut
(-1)^{degré} sur le premier facteur. La base de M⊗N est ordonnée
lexicographiquement puis répartie en partie paire et partie impaire.
"""

import logging
from dataclasses import dataclass

from poly.exceptions import NotInIdealError, RingMismatchError
from poly.groebner import groebner_basis, lift, normal_form
from poly.matrices import PolyMatrix
from poly.printing import format_poly
from poly.rings import Ring, Variable

from mfcore.exceptions import FactorizationError, InvariantError, KoszulLengthError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatFact:
    """Factorisation matricielle (ring, W, d0, d1), vérifiée à la construction."""

    ring: object
    W: object
    d0: PolyMatrix
    d1: PolyMatrix

    def __post_init__(self):
        r1, r0 = self.d0.shape
        if self.d1.shape != (r0, r1):
            raise InvariantError(
                f"Formes incompatibles: d0 {self.d0.shape}, d1 {self.d1.shape}"
            )
        if not (self.d1 @ self.d0).is_scalar(self.W):
            raise InvariantError(f"d1·d0 ≠ W·Id pour W = {format_poly(self.W)}")
        if not (self.d0 @ self.d1).is_scalar(self.W):
            raise InvariantError(f"d0·d1 ≠ W·Id pour W = {format_poly(self.W)}")

    @property
    def r0(self):
        return self.d0.ncols

    @property
    def r1(self):
        return self.d0.nrows

    @property
    def rank(self):
        return self.r0, self.r1

    @property
    def size(self):
        return self.r0 + self.r1

    @property
    def parities(self):
        return [0] * self.r0 + [1] * self.r1

    @property
    def D(self):
        """Différentielle complète sur M⁰ ⊕ M¹ (colonnes = sources)."""
        return PolyMatrix.block(
            self.ring,
            [[None, self.d1], [self.d0, None]],
            [self.r0, self.r1],
            [self.r0, self.r1],
        )

    def embed(self, ring):
        """Même factorisation vue dans un anneau plus grand."""
        return MatFact(ring, ring.embed(self.W), self.d0.embed(ring), self.d1.embed(ring))

    def map_entries(self, fn, ring=None, W=None):
        ring = ring or self.ring
        return MatFact(
            ring,
            fn(self.W) if W is None else W,
            self.d0.map(fn, ring),
            self.d1.map(fn, ring),
        )

    def __str__(self):
        from poly.printing import format_matrix

        return (
            f"MF[{self.r0},{self.r1}] W = {format_poly(self.W)}; "
            f"d0 = {format_matrix(self.d0.rows)}; d1 = {format_matrix(self.d1.rows)}"
        )


def make_matfact(ring, W, d0, d1, r0=None, r1=None):
    """Construit une factorisation à partir de listes de lignes."""
    W = ring.parse(W) if isinstance(W, str) else ring.embed(W)

    def matrix(rows, nrows, ncols):
        rows = [[ring.parse(e) if isinstance(e, str) else e for e in row] for row in rows]
        return PolyMatrix(ring, rows, nrows, ncols)

    if r0 is None:
        r0 = len(d1) if d1 else (len(d0[0]) if d0 else 0)
    if r1 is None:
        r1 = len(d0) if d0 else (len(d1[0]) if d1 else 0)
    return MatFact(ring, W, matrix(d0, r1, r0), matrix(d1, r0, r1))


def from_odd_matrix(ring, W, D, parities):
    """
    Reconstruit une factorisation à partir d'une différentielle complète.

    Les éléments de base pairs passent en tête, dans leur ordre d'origine.
    """
    even = [k for k, p in enumerate(parities) if p % 2 == 0]
    odd = [k for k, p in enumerate(parities) if p % 2 == 1]
    for group in (even, odd):
        for i in group:
            for j in group:
                if D[i, j]:
                    raise InvariantError("La différentielle doit être impaire")
    return MatFact(ring, W, D.permute(odd, even), D.permute(even, odd))


def unit_mf(ring):
    """Factorisation de rang (1,0), différentielle nulle, courbure nulle."""
    return MatFact(ring, ring.zero, PolyMatrix.zeros(ring, 0, 1), PolyMatrix.zeros(ring, 1, 0))


def _check_same_ring(*mfs):
    ring = mfs[0].ring
    for m in mfs[1:]:
        if m.ring != ring:
            raise RingMismatchError(
                f"Anneaux différents: {ring!r} et {m.ring!r} (étendre d'abord)"
            )
    return ring


def tensor_basis(M, N):
    """Paires (a, b) de la base de M⊗N dans l'ordre retenu (paires paires d'abord)."""
    pm, pn = M.parities, N.parities
    pairs = [(a, b) for a in range(M.size) for b in range(N.size)]
    even = [(a, b) for a, b in pairs if (pm[a] + pn[b]) % 2 == 0]
    odd = [(a, b) for a, b in pairs if (pm[a] + pn[b]) % 2 == 1]
    return even + odd, len(even)


def tensor_mf(M, N):
    """
    Produit tensoriel M⊗N, de courbure W_M + W_N.

    Raises:
        RingMismatchError: les deux factorisations vivent dans des anneaux différents
    """
    ring = _check_same_ring(M, N)
    DM, DN = M.D, N.D
    pm = M.parities
    pairs, _ = tensor_basis(M, N)
    index = {pair: k for k, pair in enumerate(pairs)}
    size = len(pairs)
    rows = [[ring.zero] * size for _ in range(size)]
    for (c, d), col in index.items():
        for a in range(M.size):
            if DM[a, c]:
                rows[index[(a, d)]][col] += DM[a, c]
        sign = -1 if pm[c] else 1
        for b in range(N.size):
            if DN[b, d]:
                rows[index[(c, b)]][col] += sign * DN[b, d]
    parities = [(M.parities[a] + N.parities[b]) % 2 for a, b in pairs]
    D = PolyMatrix(ring, rows, size, size)
    return from_odd_matrix(ring, M.W + N.W, D, parities)


@dataclass(frozen=True)
class KoszulSpec:
    """Listes (p, q) de même longueur; la courbure engendrée est p·q."""

    p: tuple
    q: tuple

    def __post_init__(self):
        if len(self.p) != len(self.q):
            raise KoszulLengthError(
                f"Longueurs différentes: {len(self.p)} contre {len(self.q)}"
            )

    def curving(self, ring):
        return sum((ring.embed(a) * ring.embed(b) for a, b in zip(self.p, self.q)), ring.zero)


def koszul_factorization(spec, ring):
    """
    K(p; q) : produit tensoriel itéré des facteurs de rang (1,1).

    Chaque facteur envoie la partie paire sur l'impaire par p_i et revient par q_i.
    """
    result = unit_mf(ring)
    for p, q in zip(spec.p, spec.q):
        p, q = ring.embed(p), ring.embed(q)
        factor = MatFact(ring, p * q, PolyMatrix(ring, [[p]]), PolyMatrix(ring, [[q]]))
        result = factor if result.size == 1 else tensor_mf(result, factor)
    return result


def koszul_divide(W, p, ring):
    """
    Trouve q avec p·q = W.

    Raises:
        FactorizationError: W n'est pas dans l'idéal (p); la forme normale est jointe
    """
    p = tuple(ring.embed(a) for a in p)
    W = ring.embed(W)
    ideal = groebner_basis(p, ring)
    try:
        q = lift(W, ideal)
    except NotInIdealError:
        witness = normal_form(W, ideal)
        raise FactorizationError(
            f"W = {format_poly(W)} n'appartient pas à l'idéal engendré par p "
            f"(reste {format_poly(witness)})",
            witness,
        ) from None
    return KoszulSpec(p, tuple(q))


def dual_mf(M):
    """Dual : d0' = -d1ᵀ, d1' = d0ᵀ, courbure -W."""
    return MatFact(M.ring, -M.W, -M.d1.T, M.d0.T)


def grading_flip(M):
    """Translation par un : échange des rôles de M⁰ et M¹."""
    return MatFact(M.ring, M.W, M.d1, M.d0)


def sign_twist(M):
    """Conjugaison par diag(1, -1) : (d0, d1) -> (-d0, -d1)."""
    return MatFact(M.ring, M.W, -M.d0, -M.d1)


def rename_mf(M, mapping):
    """Renomme les variables de la factorisation."""
    target = M.ring.rename(mapping)
    return M.map_entries(lambda p: M.ring.transport(p, target, mapping), target)


def substitute_mf(M, values, target=None):
    """Substitue simultanément ``values`` (nom -> polynôme) dans M."""
    gens = M.ring.gens
    target = target or M.ring

    def subst(p):
        replacements = [(gens[name], M.ring.embed(v)) for name, v in values.items()]
        return target.embed(p.compose(replacements) if replacements else p)

    return MatFact(target, subst(M.W), M.d0.map(subst, target), M.d1.map(subst, target))


def matfact_equal(M, N):
    return M.ring == N.ring and M.W == N.W and M.d0 == N.d0 and M.d1 == N.d1


def nilpotent_mf(k, names=("y", "a")):
    """
    D = [[0, a], [y^k, 0]] sur C[y, a], ``a`` de degré cohomologique 2 et
    W = a·y^k. Son algèbre End⁰ est C[y]/(y^k).
    """
    if k < 1:
        raise FactorizationError(f"k doit être positif, reçu {k}")
    y, a = names
    ring = Ring([y, Variable(a, 2)])
    return make_matfact(ring, f"{a}*{y}^{k}", [[f"{y}^{k}"]], [[a]])
