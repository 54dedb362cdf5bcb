"""
Objets (y; W) au-dessus d'une base x et correspondances entre bases.
"""

from dataclasses import dataclass, field

from poly.exceptions import NameCollisionError
from poly.printing import format_poly
from poly.rings import Ring, as_variable


def _names(variables):
    return [v.name for v in variables]


def _check_disjoint(*groups):
    seen = set()
    for group in groups:
        for name in _names(group):
            if name in seen:
                raise NameCollisionError(f"Variable présente deux fois: {name}")
            seen.add(name)


@dataclass(frozen=True)
class LGObject:
    """
    Objet de Landau-Ginzburg : variables supplémentaires ``extras`` et
    courbure ``W`` dans C[base, extras].
    """

    base: tuple
    extras: tuple = ()
    W: object = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(as_variable(v) for v in self.base))
        object.__setattr__(self, "extras", tuple(as_variable(v) for v in self.extras))
        _check_disjoint(self.base, self.extras)
        ring = self.ring
        W = ring.zero if self.W is None else self.W
        W = ring.parse(W) if isinstance(W, str) else ring.embed(W)
        object.__setattr__(self, "W", W)

    @property
    def ring(self):
        return Ring(self.base + self.extras)

    @property
    def base_names(self):
        return tuple(_names(self.base))

    @property
    def extra_names(self):
        return tuple(_names(self.extras))

    def rename_extras(self, mapping):
        """Même objet avec des variables supplémentaires renommées."""
        target = Ring(
            self.base + tuple(as_variable(mapping.get(v.name, v.name)) for v in self.extras)
        )
        W = self.ring.transport(self.W, target, mapping)
        return LGObject(self.base, target.variables[len(self.base) :], W)

    def __str__(self):
        extras = ", ".join(self.extra_names) or "∅"
        return f"({extras}; {format_poly(self.W)}) sur ({', '.join(self.base_names)})"


@dataclass(frozen=True)
class Correspondence:
    """
    Correspondance de la base ``source`` vers la base ``target`` : variables
    supplémentaires ``extras`` et courbure ``W12`` dans C[source, target, extras].
    """

    source: tuple
    target: tuple
    extras: tuple = ()
    W12: object = None

    def __post_init__(self):
        for name in ("source", "target", "extras"):
            object.__setattr__(
                self, name, tuple(as_variable(v) for v in getattr(self, name))
            )
        _check_disjoint(self.source, self.target, self.extras)
        ring = self.ring
        W = ring.zero if self.W12 is None else self.W12
        W = ring.parse(W) if isinstance(W, str) else ring.embed(W)
        object.__setattr__(self, "W12", W)

    @property
    def ring(self):
        return Ring(self.source + self.target + self.extras)

    def __str__(self):
        extras = ", ".join(_names(self.extras)) or "∅"
        return (
            f"({extras}; {format_poly(self.W12)}) : "
            f"({', '.join(_names(self.source))}) -> ({', '.join(_names(self.target))})"
        )
