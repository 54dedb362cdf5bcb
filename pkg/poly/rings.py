"""
Anneaux de polynômes à coefficients dans Q(i).

Un ``Ring`` est une liste ordonnée de ``Variable`` (nom + degré
cohomologique). Les éléments sont des ``PolyElement`` de sympy construits
sur le domaine ``QQ_I`` avec l'ordre degrevlex.
"""

import logging
import weakref
from dataclasses import dataclass
from fractions import Fraction

from sympy import Symbol
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement, PolyRing

from poly.exceptions import NameCollisionError, RingMismatchError, UnknownVariableError

logger = logging.getLogger(__name__)

RESERVED_NAMES = frozenset({"i"})

# Anneaux vivants, indexés par la liste des noms.
_REGISTRY = weakref.WeakValueDictionary()

# Degrés cohomologiques déclarés (non tous nuls), pour reconstruire un anneau collecté.
_COHDEGS = {}


@dataclass(frozen=True)
class Variable:
    """Variable d'un anneau, avec son degré cohomologique."""

    name: str
    cohdeg: int = 0

    def __str__(self):
        if self.cohdeg:
            return f"{self.name}:{self.cohdeg}"
        return self.name


def as_variable(value):
    """Convertit un nom ou une ``Variable`` en ``Variable``."""
    if isinstance(value, Variable):
        return value
    return Variable(str(value))


def rational(value):
    """Convertit un entier, une fraction ou une chaîne en rationnel sympy."""
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        frac = Fraction(value)
        return QQ(frac.numerator, frac.denominator)
    return QQ.convert(value)


def scalar(re=0, im=0):
    """Construit le scalaire exact ``re + im·i`` de Q(i)."""
    return QQ_I(rational(re), rational(im))


class Ring:
    """Anneau de polynômes C[x1, ..., xn] réalisé exactement sur Q(i)."""

    def __init__(self, variables):
        variables = tuple(as_variable(v) for v in variables)
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise NameCollisionError(f"Noms de variables dupliqués: {names}")
        reserved = RESERVED_NAMES.intersection(names)
        if reserved:
            raise NameCollisionError(f"Nom réservé: {sorted(reserved)[0]}")
        self.variables = variables
        self.names = tuple(names)
        self.sympy = PolyRing([Symbol(n) for n in names], QQ_I, grevlex)
        self.gens = dict(zip(self.names, self.sympy.gens))
        cohdegs = tuple(v.cohdeg for v in variables)
        if any(cohdegs):
            _COHDEGS[self.names] = cohdegs
        # Un anneau sans degrés ne masque pas une déclaration graduée.
        if any(cohdegs) or self.names not in _COHDEGS:
            _REGISTRY[self.names] = self

    def __repr__(self):
        return f"Ring({', '.join(str(v) for v in self.variables)})"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __len__(self):
        return len(self.variables)

    def __contains__(self, name):
        return str(getattr(name, "name", name)) in self.gens

    def __getitem__(self, name):
        return self.gen(name)

    @property
    def zero(self):
        return self.sympy.zero

    @property
    def one(self):
        return self.sympy.one

    def gen(self, name):
        """Retourne le générateur associé à ``name``."""
        name = getattr(name, "name", name)
        try:
            return self.gens[name]
        except KeyError:
            raise UnknownVariableError(name) from None

    def index(self, name):
        name = getattr(name, "name", name)
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    def variable(self, name):
        return self.variables[self.index(name)]

    def constant(self, re=0, im=0):
        return self.sympy.ground_new(scalar(re, im))

    def parse(self, text):
        """Analyse une expression dans cet anneau."""
        from poly.parser import parse_poly

        return parse_poly(text, self)

    def extend(self, *variables):
        """Nouvel anneau avec des variables ajoutées à la fin."""
        new = [as_variable(v) for v in variables]
        clash = set(self.names).intersection(v.name for v in new)
        if clash:
            raise NameCollisionError(f"Variable déjà présente: {sorted(clash)[0]}")
        return Ring(self.variables + tuple(new))

    def union(self, other):
        """Union ordonnée de deux anneaux (variables partagées une seule fois)."""
        extra = [v for v in other.variables if v.name not in self.gens]
        return Ring(self.variables + tuple(extra))

    def without(self, names):
        names = {getattr(n, "name", n) for n in names}
        return Ring([v for v in self.variables if v.name not in names])

    def fresh_name(self, base, taken=()):
        """Premier nom ``base``, ``base1``, ``base2``... libre dans l'anneau."""
        taken = set(taken) | set(self.names) | RESERVED_NAMES
        if base not in taken:
            return base
        k = 1
        while f"{base}{k}" in taken:
            k += 1
        return f"{base}{k}"

    def embed(self, p):
        """Plonge ``p`` dans cet anneau (les variables absentes doivent être muettes)."""
        if not isinstance(p, PolyElement):
            return self.sympy.ground_new(QQ_I.convert(p))
        if p.ring == self.sympy:
            return p
        try:
            return p.set_ring(self.sympy)
        except Exception as e:
            raise RingMismatchError(
                f"Impossible de plonger {p} dans {self!r}: {e}"
            ) from e

    def rename(self, mapping):
        """Anneau dont les variables sont renommées selon ``mapping``."""
        return Ring(
            [Variable(mapping.get(v.name, v.name), v.cohdeg) for v in self.variables]
        )

    def transport(self, p, target, mapping):
        """Image de ``p`` dans ``target`` en renommant les variables."""
        result = {}
        positions = [target.index(mapping.get(n, n)) for n in self.names]
        for monom, coeff in self.embed(p).items():
            expv = [0] * len(target)
            for k, e in zip(positions, monom):
                expv[k] += e
            result[tuple(expv)] = coeff
        return target.sympy.from_dict(result)


def ring_of(p):
    """Retrouve le ``Ring`` déclaré d'un polynôme sympy."""
    names = tuple(str(s) for s in p.ring.symbols)
    ring = _REGISTRY.get(names)
    if ring is None:
        cohdegs = _COHDEGS.get(names, (0,) * len(names))
        ring = Ring([Variable(n, c) for n, c in zip(names, cohdegs)])
    return ring


def derivative(p, v):
    """Dérivée partielle formelle de ``p`` par rapport à ``v``."""
    ring = ring_of(p)
    return p.diff(ring.gen(getattr(v, "name", v)))


def is_constant(p):
    return p.is_ground


def constant_value(p):
    """Valeur scalaire d'un polynôme constant."""
    return p.const()
