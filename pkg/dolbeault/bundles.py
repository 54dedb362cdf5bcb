"""
Matrices de formes sur des fibrés Z/2-gradués, fibrés holomorphes courbés,
courbures et connexions.

Une entrée ``X_ij`` a pour parité totale ``|forme| + p_i + q_j`` ; le
produit applique la règle de Koszul
``(ω E_ij)(η E_jl) = (-1)^((p_i+p_j)|η|) ω η E_il``.
"""

import logging
from dataclasses import dataclass, field

from dolbeault.dolforms import DolForm
from dolbeault.exceptions import BundleError, PreconditionError, SpaceMismatchError
from dolbeault.registry import resolve

logger = logging.getLogger(__name__)


class DolMatrix:
    """Matrice de formes de Dolbeault avec parités de lignes et de colonnes."""

    __slots__ = ("space", "rows", "row_parities", "col_parities")

    def __init__(self, space, rows, row_parities=None, col_parities=None):
        self.space = space
        self.rows = tuple(tuple(space.coerce(e) for e in row) for row in rows)
        nrows = len(self.rows)
        ncols = len(self.rows[0]) if self.rows else 0
        if any(len(row) != ncols for row in self.rows):
            raise BundleError("Lignes de longueurs différentes")
        self.row_parities = tuple(row_parities or (0,) * nrows)
        self.col_parities = tuple(col_parities or (0,) * ncols)
        if len(self.row_parities) != nrows or len(self.col_parities) != ncols:
            raise BundleError("Parités incompatibles avec la taille")

    @classmethod
    def zeros(cls, space, row_parities, col_parities):
        zero = space.zero_form
        return cls(space, [[zero] * len(col_parities) for _ in row_parities], row_parities, col_parities)

    @classmethod
    def scalar(cls, form, parities):
        """``ω · Id`` sur un fibré de parités ``parities``."""
        space = form.space
        n = len(parities)
        rows = [[form if i == j else space.zero_form for j in range(n)] for i in range(n)]
        return cls(space, rows, parities, parities)

    @classmethod
    def identity(cls, space, parities):
        return cls.scalar(space.one_form, parities)

    @classmethod
    def section(cls, space, entries, parities):
        """Section : colonne de parité de colonne 0."""
        return cls(space, [[e] for e in entries], parities, (0,))

    @property
    def shape(self):
        return len(self.row_parities), len(self.col_parities)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"DolMatrix({self})"

    def __str__(self):
        return " | ".join(", ".join(str(e) for e in row) for row in self.rows)

    def __bool__(self):
        return any(e for row in self.rows for e in row)

    def __eq__(self, other):
        if not isinstance(other, DolMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.row_parities == other.row_parities
            and self.col_parities == other.col_parities
            and all(a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))
        )

    __hash__ = None

    def term_count(self):
        return sum(e.term_count() for row in self.rows for e in row)

    def _like(self, rows):
        return DolMatrix(self.space, rows, self.row_parities, self.col_parities)

    def map(self, func):
        return self._like([[func(e) for e in row] for row in self.rows])

    def _check_same(self, other):
        if other.space != self.space:
            raise SpaceMismatchError(f"{other.space} != {self.space}")
        if (other.row_parities, other.col_parities) != (self.row_parities, self.col_parities):
            raise BundleError(
                f"Matrices de types différents: {self.shape} et {other.shape}"
            )

    def _as_matrix(self, other):
        if isinstance(other, DolMatrix):
            return other
        if isinstance(other, DolForm) and not other:
            return DolMatrix.zeros(self.space, self.row_parities, self.col_parities)
        return None

    def __add__(self, other):
        other = self._as_matrix(other)
        if other is None:
            return NotImplemented
        self._check_same(other)
        return self._like(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda e: -e)

    def __sub__(self, other):
        other = self._as_matrix(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._as_matrix(other)
        if other is None:
            return NotImplemented
        return other - self

    def matmul(self, other):
        if other.space != self.space:
            raise SpaceMismatchError(f"{other.space} != {self.space}")
        if self.col_parities != other.row_parities:
            raise BundleError("Produit de matrices aux parités incompatibles")
        rows = []
        for i, p_i in enumerate(self.row_parities):
            row = []
            for l in range(len(other.col_parities)):
                acc = self.space.zero_form
                for j, p_j in enumerate(self.col_parities):
                    left = self.rows[i][j]
                    if not left:
                        continue
                    right = other.rows[j][l]
                    if right:
                        acc = acc + left * right.twist(p_i + p_j)
                row.append(acc)
            rows.append(row)
        return DolMatrix(self.space, rows, self.row_parities, other.col_parities)

    def __mul__(self, other):
        if isinstance(other, DolMatrix):
            return self.matmul(other)
        if isinstance(other, DolForm):
            return self.matmul(DolMatrix.scalar(other, self.col_parities))
        try:
            form = self.space.coerce(other)
        except (TypeError, SpaceMismatchError):
            return NotImplemented
        return self.map(lambda e: e * form)

    def __rmul__(self, other):
        # ω·X : le scalaire à gauche ne traverse aucune parité de ligne.
        form = self.space.coerce(other)
        return self.map(lambda e: form * e)

    def dbar(self):
        return self.map(lambda e: e.dbar())

    def partial(self, i):
        return self.map(lambda e: e.partial(i))

    def truncate(self, tags, bound):
        return self.map(lambda e: e.truncate(tags, bound))

    def parity_split(self):
        """(partie totale paire, partie totale impaire)."""
        even, odd = [], []
        for i, p_i in enumerate(self.row_parities):
            er, orow = [], []
            for j, q_j in enumerate(self.col_parities):
                e_even, e_odd = self.rows[i][j].parity_split()
                if (p_i + q_j) % 2:
                    e_even, e_odd = e_odd, e_even
                er.append(e_even)
                orow.append(e_odd)
            even.append(er)
            odd.append(orow)
        return self._like(even), self._like(odd)


def supercommutator(X, Y):
    """``[X, Y] = XY - (-1)^(|X||Y|) YX``, étendu par linéarité."""
    _Xe, Xo = X.parity_split()
    _Ye, Yo = Y.parity_split()
    return X * Y - Y * X + (Yo * Xo) * 2


def nabla_bar(A, X):
    """``∇̄X = ∂̄X + [A, X]``."""
    return X.dbar() + supercommutator(A, X)


def _lifted_parities(p, q):
    return tuple((a + b) % 2 for a in p for b in q)


def lift_left(X, q):
    """``X ⊗ 1`` sur ``E ⊗ F`` où ``F`` a les parités ``q``."""
    space = X.space
    nq = len(q)
    rows = []
    for a in range(X.shape[0]):
        for b in range(nq):
            row = []
            for c in range(X.shape[1]):
                for d in range(nq):
                    row.append(X.rows[a][c] if b == d else space.zero_form)
            rows.append(row)
    return DolMatrix(space, rows, _lifted_parities(X.row_parities, q), _lifted_parities(X.col_parities, q))


def lift_right(p, Y):
    """``1 ⊗ Y`` avec le signe ``(-1)^((q_b + q_d)·p_a)``."""
    space = Y.space
    rows = []
    for a, p_a in enumerate(p):
        for b, q_b in enumerate(Y.row_parities):
            row = []
            for c in range(len(p)):
                for d, q_d in enumerate(Y.col_parities):
                    if a != c:
                        row.append(space.zero_form)
                        continue
                    entry = Y.rows[b][d]
                    row.append(-entry if ((q_b + q_d) * p_a) % 2 else entry)
            rows.append(row)
    return DolMatrix(space, rows, _lifted_parities(p, Y.row_parities), _lifted_parities(p, Y.col_parities))


@dataclass
class Bundle:
    """
    Fibré holomorphe courbé : ``(∂̄ + A)² = W·Id`` soit
    ``∂̄A + A·A = W·Id``.
    """

    A: DolMatrix
    W: DolForm
    name: str = ""
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.A.row_parities != self.A.col_parities:
            raise BundleError("La connexion doit être un endomorphisme")
        if self.check:
            residual = self.square_residual()
            if residual:
                raise BundleError(
                    f"(∂̄ + A)² ≠ W·Id pour {self.name or 'le fibré'} "
                    f"({residual.term_count()} termes)"
                )

    @property
    def space(self):
        return self.A.space

    @property
    def parities(self):
        return self.A.row_parities

    @property
    def rank(self):
        return len(self.parities)

    def square_residual(self):
        return self.A.dbar() + self.A * self.A - DolMatrix.scalar(self.W, self.parities)

    def nabla_bar(self, X):
        return nabla_bar(self.A, X)

    def apply(self, section):
        """``(∂̄ + A) σ``."""
        return section.dbar() + self.A * section


def koszul_bundle(space, p, q, name=""):
    """Fibré de Koszul ``K(p; q)`` : ``A = [[0, q], [p, 0]]``, parités (0, 1), ``W = pq``."""
    p, q = space.coerce(p), space.coerce(q)
    if p.dbar() or q.dbar():
        raise PreconditionError("K(p; q) demande p et q holomorphes")
    zero = space.zero_form
    A = DolMatrix(space, [[zero, q], [p, zero]], (0, 1), (0, 1))
    return Bundle(A, p * q, name=name or "K")


def line_bundle(space, phi, name=""):
    """Fibré en droites plat ``A = ∂̄φ``."""
    phi = space.coerce(phi)
    A = DolMatrix(space, [[phi.dbar()]], (0,), (0,))
    return Bundle(A, space.zero_form, name=name or "L")


def trivial_bundle(space, parities=(0,)):
    return Bundle(DolMatrix.zeros(space, parities, parities), space.zero_form, name="O")


def tensor_bundle(E, F, name=""):
    """``E ⊗ F`` : ``A = A_E ⊗ 1 + 1 ⊗ A_F`` et ``W = W_E + W_F``."""
    A = lift_left(E.A, F.parities) + lift_right(E.parities, F.A)
    return Bundle(A, E.W + F.W, name=name or f"{E.name}⊗{F.name}")


@dataclass
class Curvature:
    """Composantes ``F_I``, dérivées ``∇̄F_I`` et résidus de Bianchi ``∇̄F_I + ∂_I W·Id``."""

    components: list
    derivatives: list
    residuals: list

    @property
    def is_bianchi(self):
        return not any(self.residuals)


def curvature_F(bundle, registry=None):
    """``F_I = -∂_I A`` (au signe du registre près) et identité de Bianchi."""
    reg = resolve(registry)
    space = bundle.space
    components = []
    derivatives = []
    residuals = []
    for i in range(space.n):
        F = bundle.A.partial(i)
        F = -F if reg.f_sign > 0 else F
        components.append(F)
        dF = bundle.nabla_bar(F)
        derivatives.append(dF)
        residuals.append(dF + DolMatrix.scalar(bundle.W.partial(i), bundle.parities))
    if any(residuals):
        logger.debug(f"Bianchi non vérifiée pour {bundle.name}")
    return Curvature(components, derivatives, residuals)


class Connection:
    """
    Connexion ``Γ^I_{JK}`` sur le fibré tangent, symétrique en ``J, K``.

    Les symboles sont rangés ``gamma[I][J][K]`` ; ils portent le marqueur
    ``tn`` lorsqu'ils remplacent une dérivée.
    """

    def __init__(self, space, gamma=None):
        n = space.n
        self.space = space
        if gamma is None:
            gamma = [[[space.zero_form] * n for _ in range(n)] for _ in range(n)]
        self.gamma = [[[space.coerce(g) for g in row] for row in plane] for plane in gamma]
        for i in range(n):
            for j in range(n):
                for k in range(j + 1, n):
                    if self.gamma[i][j][k] != self.gamma[i][k][j]:
                        raise PreconditionError(
                            f"Γ^{i + 1} non symétrique en ({j + 1}, {k + 1})"
                        )

    @classmethod
    def flat(cls, space):
        return cls(space)

    def is_flat(self):
        return not any(g for plane in self.gamma for row in plane for g in row)

    def christoffel(self, i, j, k):
        return self.gamma[i][j][k] * self.space.dtag

    def covariant_hessian(self, W, k, l):
        """``∇_K ∂_L W = ∂_K ∂_L W - Γ^M_{KL} ∂_M W`` (marqué)."""
        sp = self.space
        value = W.partial(l).partial(k) * sp.dtag * sp.dtag
        for m in range(sp.n):
            value = value - self.christoffel(m, k, l) * W.partial(m) * sp.dtag
        return value

    def covariant_bivector(self, beta_components, l, j, k):
        """``∇_L β^{JK} = ∂_L β^{JK} + Γ^J_{LM} β^{MK} + Γ^K_{LM} β^{JM}``."""
        sp = self.space
        value = beta_components[j][k].partial(l) * sp.dtag
        for m in range(sp.n):
            value = value + self.christoffel(j, l, m) * beta_components[m][k]
            value = value + self.christoffel(k, l, m) * beta_components[j][m]
        return value


def curvature_R(connection):
    """``R = ∂̄Γ`` composante par composante."""
    return [
        [[g.dbar() * connection.space.dtag for g in row] for row in plane]
        for plane in connection.gamma
    ]
