"""
Formes de Dolbeault polynomiales sur un polydisque.

Une forme est une somme finie ``c(x, x̄, y, marqueurs) · m`` où ``m`` est un
monôme ordonné en générateurs impairs : d'abord les ``dx̄_a`` (indices
``0..n-1``), puis les ``θ_I`` (indices ``n..2n-1``). Les coefficients sont
des polynômes pairs, toujours écrits à gauche des générateurs impairs.

Les variables ``y_I`` réalisent la fibre symétrique (SYM) et les ``θ_I`` la
fibre extérieure (WEDGE) du fibré tangent.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import PolyElement

from poly.printing import format_poly
from poly.rings import Ring

from dolbeault.exceptions import ArityError, SpaceMismatchError

logger = logging.getLogger(__name__)

# Marqueurs de poids : β, γ, W₁..W₃, ∂ (dérivée ou dx), F₁..F₃.
TAGS = ("tb", "tg", "tW1", "tW2", "tW3", "tn", "tF1", "tF2", "tF3")
W_TAGS = ("tW1", "tW2", "tW3")

# ``eps`` sert aux déformations du premier ordre (ε² = 0) ; ``s1``, ``s2``
# paramètrent les simplexes des différences divisées.
AUX = ("eps", "s1", "s2")


def frac(p, q=1):
    """Rationnel exact ``p/q`` dans Q(i)."""
    return QQ_I.convert(QQ(p, q))


def merge_monomials(left, right):
    """
    Produit de deux monômes impairs ordonnés.

    Retourne ``(signe, monôme)`` ou ``(0, None)`` si un générateur se répète.
    """
    if set(left) & set(right):
        return 0, None
    inversions = sum(1 for a in left for b in right if a > b)
    sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(left + right))


def _accumulate(acc, mono, coeff):
    if not coeff:
        return
    total = acc.get(mono)
    total = coeff if total is None else total + coeff
    if total:
        acc[mono] = total
    else:
        acc.pop(mono, None)


@dataclass(frozen=True)
class Polydisk:
    """
    Polydisque de dimension ``n`` et son anneau de coefficients.

    Avec ``tagged=True`` les marqueurs de poids sont ajoutés à l'anneau.
    """

    n: int
    tagged: bool = False

    @cached_property
    def ring(self):
        names = [f"x{i}" for i in range(1, self.n + 1)]
        names += [f"xb{i}" for i in range(1, self.n + 1)]
        names += [f"y{i}" for i in range(1, self.n + 1)]
        if self.tagged:
            names += list(TAGS)
        names += list(AUX)
        return Ring(names)

    @property
    def sympy(self):
        return self.ring.sympy

    @cached_property
    def x_gens(self):
        return tuple(self.ring.gen(f"x{i}") for i in range(1, self.n + 1))

    @cached_property
    def xbar_gens(self):
        return tuple(self.ring.gen(f"xb{i}") for i in range(1, self.n + 1))

    @cached_property
    def y_gens(self):
        return tuple(self.ring.gen(f"y{i}") for i in range(1, self.n + 1))

    @cached_property
    def xbar_positions(self):
        return tuple(self.ring.index(f"xb{i}") for i in range(1, self.n + 1))

    @cached_property
    def y_positions(self):
        return tuple(self.ring.index(f"y{i}") for i in range(1, self.n + 1))

    @cached_property
    def tag_positions(self):
        if not self.tagged:
            return {}
        return {t: self.ring.index(t) for t in TAGS}

    @cached_property
    def odd_names(self):
        return tuple(f"db{a}" for a in range(1, self.n + 1)) + tuple(
            f"th{i}" for i in range(1, self.n + 1)
        )

    def check_index(self, i):
        if not 0 <= i < self.n:
            raise IndexError(f"Indice {i} hors de 0..{self.n - 1}")

    # Constructeurs

    def form(self, terms=None):
        return DolForm(self, terms or {})

    @property
    def zero_form(self):
        return DolForm(self, {})

    @property
    def one_form(self):
        return self.function(self.sympy.one)

    def function(self, poly):
        """Forme de degré 0 de coefficient ``poly`` (texte, scalaire ou polynôme)."""
        if isinstance(poly, str):
            poly = self.ring.parse(poly)
        elif not isinstance(poly, PolyElement):
            poly = self.sympy.ground_new(QQ_I.convert(poly))
        elif poly.ring != self.sympy:
            poly = self.ring.embed(poly)
        return DolForm(self, {(): poly})

    def parse(self, text):
        return self.function(text)

    def coerce(self, value):
        if isinstance(value, DolForm):
            if value.space != self:
                raise SpaceMismatchError(f"{value.space} != {self}")
            return value
        return self.function(value)

    def x(self, i):
        self.check_index(i)
        return self.function(self.x_gens[i])

    def xbar(self, a):
        self.check_index(a)
        return self.function(self.xbar_gens[a])

    def y(self, i):
        self.check_index(i)
        return self.function(self.y_gens[i])

    def db(self, a):
        self.check_index(a)
        return DolForm(self, {(a,): self.sympy.one})

    def theta(self, i):
        self.check_index(i)
        return DolForm(self, {(self.n + i,): self.sympy.one})

    def tag(self, name):
        """Marqueur ``name`` comme forme ; vaut 1 sur un polydisque non marqué."""
        if not self.tagged:
            return self.one_form
        return self.function(self.ring.gen(name))

    @property
    def dtag(self):
        return self.tag("tn")


@lru_cache(maxsize=None)
def polydisk(n, tagged=False):
    """Polydisque partagé pour ``(n, tagged)``."""
    return Polydisk(n, tagged)


class DolForm:
    """Forme de Dolbeault à coefficients polynomiaux, à valeurs dans la fibre."""

    __slots__ = ("space", "terms")

    def __init__(self, space, terms):
        self.space = space
        clean = {}
        for mono, coeff in terms.items():
            if coeff:
                clean[tuple(mono)] = coeff
        self.terms = clean

    # Structure

    def __repr__(self):
        return f"DolForm({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.space.odd_names
        pieces = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            coeff = format_poly(self.terms[mono])
            if not mono:
                pieces.append(f"({coeff})")
            else:
                pieces.append(f"({coeff})*" + "*".join(names[k] for k in mono))
        return " + ".join(pieces)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, DolForm):
            return self.space == other.space and self.terms == other.terms
        try:
            other = self.space.coerce(other)
        except (TypeError, SpaceMismatchError):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def _coerce(self, other):
        if isinstance(other, DolForm):
            if other.space != self.space:
                raise SpaceMismatchError(f"{other.space} != {self.space}")
            return other
        return self.space.function(other)

    def _like(self, terms):
        return DolForm(self.space, terms)

    def coefficient(self, mono=()):
        return self.terms.get(tuple(mono), self.space.sympy.zero)

    @property
    def scalar(self):
        """Coefficient de degré 0 (la fonction sous-jacente)."""
        return self.coefficient(())

    def is_function(self):
        return all(not mono for mono in self.terms)

    def term_count(self):
        return sum(len(c) for c in self.terms.values())

    def iter_terms(self):
        """Itère sur les termes élémentaires (un monôme impair, un monôme pair)."""
        ring = self.space.sympy
        for mono, coeff in self.terms.items():
            for monom, c in coeff.terms():
                yield DolForm(self.space, {mono: ring.from_dict({monom: c})})

    # Arithmétique

    def __add__(self, other):
        if not isinstance(other, (DolForm, PolyElement, int)) and not _is_scalar(other):
            return NotImplemented
        other = self._coerce(other)
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            _accumulate(acc, mono, coeff)
        return self._like(acc)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (DolForm, PolyElement, int)) and not _is_scalar(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, DolForm):
            if other.space != self.space:
                raise SpaceMismatchError(f"{other.space} != {self.space}")
            acc = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    sign, mono = merge_monomials(m1, m2)
                    if mono is None:
                        continue
                    prod = c1 * c2
                    _accumulate(acc, mono, prod if sign > 0 else -prod)
            return self._like(acc)
        if isinstance(other, PolyElement) or isinstance(other, int) or _is_scalar(other):
            return self * self._coerce(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, PolyElement) or isinstance(other, int) or _is_scalar(other):
            return self._coerce(other) * self
        return NotImplemented

    def scale(self, p, q=1):
        """Multiplication par le rationnel ``p/q``."""
        c = frac(p, q)
        return self._like({m: coeff * c for m, coeff in self.terms.items()})

    def map(self, func):
        """Applique ``func`` à chaque coefficient."""
        return self._like({m: func(c) for m, c in self.terms.items()})

    # Graduations

    def _db_count(self, mono):
        return sum(1 for k in mono if k < self.space.n)

    def _theta_count(self, mono):
        return sum(1 for k in mono if k >= self.space.n)

    def parity_split(self):
        """(partie paire, partie impaire) selon le nombre de générateurs impairs."""
        even = {m: c for m, c in self.terms.items() if len(m) % 2 == 0}
        odd = {m: c for m, c in self.terms.items() if len(m) % 2}
        return self._like(even), self._like(odd)

    def twist(self, parity):
        """Forme inchangée si ``parity`` est paire, sinon partie impaire négée."""
        if parity % 2 == 0:
            return self
        return self._like(
            {m: (-c if len(m) % 2 else c) for m, c in self.terms.items()}
        )

    def form_degrees(self):
        return {self._db_count(m) for m in self.terms}

    def form_part(self, k):
        return self._like({m: c for m, c in self.terms.items() if self._db_count(m) == k})

    def has_theta(self):
        return any(self._theta_count(m) for m in self.terms)

    def has_y(self):
        return any(
            any(monom[p] for p in self.space.y_positions)
            for c in self.terms.values()
            for monom in c.monoms()
        )

    def _y_degree(self, monom):
        return sum(monom[p] for p in self.space.y_positions)

    def fiber_degrees(self):
        """Degrés de fibre présents : degré en y plus nombre de θ."""
        return {
            self._y_degree(monom) + self._theta_count(m)
            for m, c in self.terms.items()
            for monom in c.monoms()
        }

    def fiber_part(self, k):
        ring = self.space.sympy
        acc = {}
        for mono, coeff in self.terms.items():
            want = k - self._theta_count(mono)
            kept = {monom: c for monom, c in coeff.terms() if self._y_degree(monom) == want}
            if kept:
                acc[mono] = ring.from_dict(kept)
        return self._like(acc)

    def at_y_zero(self):
        sp = self.space
        return self.compose([(g, sp.sympy.zero) for g in sp.y_gens])

    # Opérateurs

    def dbar(self):
        """∂̄ : dérivation graduée à gauche, ``Σ_a ∂_{x̄_a} c · dx̄_a ∧ m``."""
        sp = self.space
        acc = {}
        for mono, coeff in self.terms.items():
            for a in range(sp.n):
                dc = coeff.diff(sp.xbar_gens[a])
                if not dc:
                    continue
                sign, merged = merge_monomials((a,), mono)
                if merged is None:
                    continue
                _accumulate(acc, merged, dc if sign > 0 else -dc)
        return self._like(acc)

    def partial(self, i):
        """Dérivée holomorphe ∂_{x_i} des coefficients (sans marqueur)."""
        self.space.check_index(i)
        g = self.space.x_gens[i]
        return self.map(lambda c: c.diff(g))

    def diff_y(self, i):
        self.space.check_index(i)
        g = self.space.y_gens[i]
        return self.map(lambda c: c.diff(g))

    def diff_xbar(self, a):
        self.space.check_index(a)
        g = self.space.xbar_gens[a]
        return self.map(lambda c: c.diff(g))

    def _odd_derivative(self, k, from_left):
        acc = {}
        for mono, coeff in self.terms.items():
            if k not in mono:
                continue
            pos = mono.index(k)
            rest = mono[:pos] + mono[pos + 1:]
            steps = pos if from_left else len(mono) - 1 - pos
            _accumulate(acc, rest, -coeff if steps % 2 else coeff)
        return self._like(acc)

    def left_derivative(self, k):
        """Dérivée impaire à gauche par rapport au générateur d'indice ``k``."""
        return self._odd_derivative(k, True)

    def right_derivative(self, k):
        """Dérivée impaire à droite par rapport au générateur d'indice ``k``."""
        return self._odd_derivative(k, False)

    def compose(self, replacements):
        """Substitution simultanée ``[(générateur, polynôme), ...]`` dans les coefficients."""
        replacements = list(replacements)
        if not replacements:
            return self
        return self.map(lambda c: c.compose(list(replacements)))

    def substitute(self, mapping):
        """Substitution à partir d'un dictionnaire ``{nom: polynôme}``."""
        ring = self.space.ring
        pairs = [(ring.gen(name), ring.embed(value)) for name, value in mapping.items()]
        return self.compose(pairs)

    def truncate(self, tags, bound):
        """Supprime les termes dont le poids total en ``tags`` atteint ``bound``."""
        ring = self.space.ring
        positions = [ring.index(t) for t in tags if t in ring]
        if not positions:
            return self
        acc = {}
        for mono, coeff in self.terms.items():
            kept = {
                monom: c
                for monom, c in coeff.terms()
                if sum(monom[p] for p in positions) < bound
            }
            if kept:
                acc[mono] = self.space.sympy.from_dict(kept)
        return self._like(acc)

    def at_xbar_zero(self):
        sp = self.space
        return self.compose([(g, sp.sympy.zero) for g in sp.xbar_gens])


def _is_scalar(value):
    return QQ_I.of_type(value) or QQ.of_type(value)


def homotopy(f):
    """
    Homotopie radiale de ∂̄ : sur un terme avec ``k`` facteurs ``dx̄`` et un
    monôme de degré ``d`` en x̄, ``(1/(k+d)) Σ_a x̄_a · ∂⃗_{dx̄_a}``.

    Vérifie ``h∂̄ + ∂̄h = id - (évaluation en degré 0)``.
    """
    sp = f.space
    ring = sp.sympy
    acc = {}
    for mono, coeff in f.terms.items():
        k = sum(1 for j in mono if j < sp.n)
        if not k:
            continue
        for monom, c in coeff.terms():
            d = sum(monom[p] for p in sp.xbar_positions)
            base = ring.from_dict({monom: c * frac(1, k + d)})
            for pos, a in enumerate(mono):
                if a >= sp.n:
                    break
                rest = mono[:pos] + mono[pos + 1:]
                term = base * sp.xbar_gens[a]
                _accumulate(acc, rest, -term if pos % 2 else term)
    return DolForm(sp, acc)


def dbar(f):
    return f.dbar()


def partial(f, i):
    return f.partial(i)


def tilde(f):
    """``θ_I ↦ y_I`` sur une forme de degré de fibre 1."""
    sp = f.space
    acc = {}
    for mono, coeff in f.terms.items():
        thetas = [k for k in mono if k >= sp.n]
        if len(thetas) != 1 or f.has_y():
            raise ArityError("tilde attend une forme linéaire en θ, sans y")
        rest = tuple(k for k in mono if k < sp.n)
        _accumulate(acc, rest, coeff * sp.y_gens[thetas[0] - sp.n])
    return DolForm(sp, acc)


def untilde(f):
    """``y_I ↦ θ_I`` sur une forme linéaire en y, sans θ."""
    sp = f.space
    if f.has_theta():
        raise ArityError("untilde attend une forme sans θ")
    acc = {}
    for mono, coeff in f.terms.items():
        for monom, _c in coeff.terms():
            if f._y_degree(monom) != 1:
                raise ArityError("untilde attend une forme linéaire en y")
        for i, g in enumerate(sp.y_gens):
            part = coeff.diff(g)
            if part:
                _accumulate(acc, mono + (sp.n + i,), part)
    return DolForm(sp, acc)


def sym_component(T, indices):
    """Composante ``(1/k!) ∂_{y_I1} ⋯ ∂_{y_Ik} T`` de la partie de degré ``k``."""
    k = len(indices)
    D = T.fiber_part(k)
    for i in indices:
        D = D.diff_y(i)
    return D.scale(1, factorial(k))


def wedge_component(T, indices):
    """Composante par dérivées à droite successives, le dernier indice d'abord."""
    sp = T.space
    k = len(indices)
    D = T.fiber_part(k)
    for i in reversed(indices):
        D = D.right_derivative(sp.n + i)
    return D.scale(1, factorial(k))


def component(T, indices):
    """Composante selon la réalisation : WEDGE s'il y a des θ, SYM sinon."""
    if T.has_theta():
        return wedge_component(T, indices)
    return sym_component(T, indices)
