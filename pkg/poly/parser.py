"""
Analyseur d'expressions polynomiales (pyparsing).

Grammaire : ``+``, ``-``, ``*``, ``/`` (par un scalaire), ``^`` (exposant
entier positif), littéraux entiers et rationnels, ``i`` (racine de -1),
noms de variables déclarés dans l'anneau et parenthèses.
"""

import logging

import pyparsing as pp
from django.conf import settings

from poly.exceptions import (
    PolyError,
    PolyOverflowError,
    PolySyntaxError,
    UnknownVariableError,
)
from poly.rings import scalar

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

IDENT_START = pp.alphas + "_"
IDENT_BODY = pp.alphanums + "_'"


class _Atom:
    """Feuille de l'arbre syntaxique, avec sa position dans le texte."""

    __slots__ = ("kind", "value", "loc")

    def __init__(self, kind, value, loc):
        self.kind = kind
        self.value = value
        self.loc = loc


def _make_atom(kind):
    def action(s, loc, toks):
        return _Atom(kind, toks[0], loc)

    return action


def _build_grammar():
    integer = pp.Word(pp.nums).set_parse_action(_make_atom("int"))
    ident = pp.Word(IDENT_START, IDENT_BODY).set_parse_action(_make_atom("name"))
    operand = integer | ident
    expr = pp.infix_notation(
        operand,
        [
            ("^", 2, pp.OpAssoc.RIGHT),
            (pp.one_of("+ -"), 1, pp.OpAssoc.RIGHT),
            (pp.one_of("* /"), 2, pp.OpAssoc.LEFT),
            (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT),
        ],
    )
    return expr + pp.StringEnd()


GRAMMAR = _build_grammar()


def exponent_limit():
    return getattr(settings, "POLY_EXPONENT_LIMIT", 2**31 - 1)


def _position(text, loc):
    return pp.lineno(loc, text), pp.col(loc, text)


class _Evaluator:
    """Évalue l'arbre produit par ``infix_notation`` dans un anneau."""

    def __init__(self, text, ring):
        self.text = text
        self.ring = ring

    def evaluate(self, node):
        if isinstance(node, _Atom):
            return self._atom(node)
        items = list(node)
        if len(items) == 1:
            return self.evaluate(items[0])
        if len(items) == 2:
            op, operand = items
            value = self.evaluate(operand)
            return -value if op == "-" else value
        if items[1] == "^":
            return self._power(items)
        acc = self.evaluate(items[0])
        for op, operand in zip(items[1::2], items[2::2]):
            rhs = self.evaluate(operand)
            if op == "+":
                acc = acc + rhs
            elif op == "-":
                acc = acc - rhs
            elif op == "*":
                acc = acc * rhs
            else:
                acc = self._divide(acc, rhs, operand)
        return acc

    def _atom(self, atom):
        if atom.kind == "int":
            return self.ring.constant(int(atom.value))
        if atom.value == "i":
            return self.ring.constant(0, 1)
        if atom.value not in self.ring:
            line, col = _position(self.text, atom.loc)
            raise UnknownVariableError(atom.value, line, col)
        return self.ring.gen(atom.value)

    def _first_loc(self, node):
        while not isinstance(node, _Atom):
            node = node[0]
        return node.loc

    def _divide(self, acc, rhs, operand):
        if not rhs.is_ground or not rhs:
            line, col = _position(self.text, self._first_loc(operand))
            raise PolySyntaxError("Division par un polynôme non constant", line, col)
        return acc * self.ring.sympy.ground_new(self.ring.sympy.domain.one / rhs.const())

    def _power(self, items):
        # a ^ b ^ c est associatif à droite
        operands = items[0::2]
        value = self.evaluate(operands[-1])
        for operand in reversed(operands[:-1]):
            exponent = self._exponent(value, operand)
            value = self.evaluate(operand) ** exponent
        return value

    def _exponent(self, value, base_node):
        const = value.const()
        loc = self._first_loc(base_node)
        line, col = _position(self.text, loc)
        if not value.is_ground or const.y or const.x.denominator != 1 or const.x < 0:
            raise PolySyntaxError("Exposant entier positif attendu", line, col)
        exponent = int(const.x.numerator)
        if exponent > exponent_limit():
            raise PolyOverflowError(
                f"Exposant {exponent} au-delà de la limite {exponent_limit()}"
            )
        return exponent


def parse_poly(text, ring):
    """
    Analyse ``text`` et retourne le polynôme canonique dans ``ring``.

    Raises:
        PolySyntaxError: texte hors grammaire (ligne et colonne rapportées)
        UnknownVariableError: nom non déclaré dans l'anneau
    """
    try:
        tree = GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise PolySyntaxError(f"Expression invalide: {e.msg}", e.lineno, e.col) from e
    try:
        result = _Evaluator(text, ring).evaluate(tree[0])
    except PolyError:
        raise
    except ZeroDivisionError as e:
        raise PolySyntaxError("Division par zéro", 1, 1) from e
    check_exponents(result)
    return result


def check_exponents(p):
    """Vérifie qu'aucun exposant ne dépasse la limite configurée."""
    limit = exponent_limit()
    for monom in p.itermonoms():
        if monom and max(monom) > limit:
            raise PolyOverflowError(f"Exposant {max(monom)} au-delà de la limite {limit}")
    return p
