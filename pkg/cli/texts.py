"""
Lecture des objets et correspondances écrits sur une ligne.

    x [u] : u^2 + x*u          objet (u; W) au-dessus de x
    x -> y [z] : x*y + z^2     correspondance de x vers y

Une liste vide s'écrit ``[]`` ou s'omet.
"""

import pyparsing as pp

from poly.exceptions import PolySyntaxError
from poly.rings import RESERVED_NAMES, Ring
from twocat.objects import Correspondence, LGObject

_ident = pp.Word(pp.alphas + "_", pp.alphanums + "_'")
_names = pp.Group(pp.Opt(pp.DelimitedList(_ident)))
_extras = pp.Opt(pp.Suppress("[") + _names + pp.Suppress("]"))

OBJECT = _names("base") + pp.Group(_extras)("extras") + pp.Suppress(":") + pp.rest_of_line("W")
CORRESPONDENCE = (
    _names("source")
    + pp.Suppress("->")
    + _names("target")
    + pp.Group(_extras)("extras")
    + pp.Suppress(":")
    + pp.rest_of_line("W")
)


def _parse(grammar, text, what):
    try:
        return grammar.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise PolySyntaxError(f"{what} invalide: {e.msg}", 1, e.col) from e


def _flatten(group):
    return [name for item in group for name in (item if isinstance(item, pp.ParseResults) else [item])]


def parse_object(text):
    """Objet de Landau-Ginzburg écrit ``base [extras] : W``."""
    tokens = _parse(OBJECT, text, "Objet")
    return LGObject(list(tokens["base"]), _flatten(tokens["extras"]), tokens["W"].strip())


def parse_correspondence(text):
    """Correspondance écrite ``source -> cible [extras] : W``."""
    tokens = _parse(CORRESPONDENCE, text, "Correspondance")
    return Correspondence(
        list(tokens["source"]),
        list(tokens["target"]),
        _flatten(tokens["extras"]),
        tokens["W"].strip(),
    )


def names_in(*texts):
    """Identifiants des expressions, dans l'ordre de première apparition."""
    seen = []
    for text in texts:
        for tokens, _, _ in _ident.scan_string(text):
            name = tokens[0]
            if name not in seen and name not in RESERVED_NAMES:
                seen.append(name)
    return seen


def infer_ring(*texts, names=None):
    """Anneau des variables données, ou de celles qui apparaissent dans ``texts``."""
    return Ring(names or names_in(*texts))
