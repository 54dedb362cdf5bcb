"""
Grammaire des fichiers de problèmes.

Une instruction par ligne; les lignes vides et celles commençant par ``#``
sont ignorées::

    ring R = x, y:2
    let W = poly "x^2 + y^2" in R
    let K = koszul [x] ; [x] in R
    let M = matfact R "x^2" ; "x" ; "x"
    let T = tensor K M
    cmd ext K K
    assert ext K K = (1, 1)
    assert milnor W = 1
    assert pass verify-mc seed=3

Les arguments sont des noms, des chaînes entre guillemets, des entiers ou
des options ``clé=valeur``.
"""

from dataclasses import dataclass, field

import pyparsing as pp

from poly.modules import INFINITE

from cli.exceptions import ProblemSyntaxError

_ident = pp.Word(pp.alphas + "_", pp.alphanums + "_'")
_op = pp.Word(pp.alphas, pp.alphanums + "-_")
_quoted = pp.QuotedString('"')
_integer = pp.Regex(r"-?\d+").set_parse_action(lambda t: int(t[0]))
_dim = _integer | pp.Keyword("INFINITE").set_parse_action(lambda: INFINITE)


@dataclass(frozen=True)
class Arg:
    """Argument positionnel : ``kind`` vaut name, str ou int."""

    kind: str
    value: object

    def __str__(self):
        return f'"{self.value}"' if self.kind == "str" else str(self.value)


@dataclass(frozen=True)
class Option:
    key: str
    value: object


_option = (
    _ident + pp.Suppress("=") + (_quoted | _integer | _ident)
).set_parse_action(lambda t: Option(t[0], t[1]))
_argument = (
    _option
    | _quoted.copy().set_parse_action(lambda t: Arg("str", t[0]))
    | _integer.copy().set_parse_action(lambda t: Arg("int", int(t[0])))
    | _ident.copy().set_parse_action(lambda t: Arg("name", t[0]))
)
_arguments = pp.Group(pp.ZeroOrMore(_argument))("args")

_LET = pp.Keyword("let") + _ident("name") + pp.Suppress("=")
_variable = pp.Group(_ident("name") + pp.Opt(pp.Suppress(":") + _integer("cohdeg")))
_list_entry = _quoted | pp.CharsNotIn(',[];"').set_parse_action(lambda t: t[0].strip())


def _poly_list(name):
    return pp.Suppress("[") + pp.Group(pp.Opt(pp.DelimitedList(_list_entry)))(name) + pp.Suppress("]")


# Les formes dédiées passent avant la forme générique ``let NAME = OP ...``.
GRAMMARS = (
    (
        "ring",
        pp.Keyword("ring")
        + _ident("name")
        + pp.Suppress("=")
        + pp.Group(pp.Opt(pp.DelimitedList(_variable)))("variables"),
    ),
    ("poly", _LET + pp.Keyword("poly") + _quoted("expr") + pp.Keyword("in") + _ident("ring")),
    (
        "koszul",
        _LET
        + pp.Keyword("koszul")
        + _poly_list("p")
        + pp.Suppress(";")
        + _poly_list("q")
        + pp.Keyword("in")
        + _ident("ring"),
    ),
    (
        "matfact",
        _LET
        + pp.Keyword("matfact")
        + _ident("ring")
        + _quoted("W")
        + pp.Suppress(";")
        + _quoted("d0")
        + pp.Suppress(";")
        + _quoted("d1"),
    ),
    ("let", _LET + _op("op") + _arguments),
    ("cmd", pp.Keyword("cmd") + _op("op") + _arguments),
    (
        "assert_ext",
        pp.Keyword("assert")
        + pp.Keyword("ext")
        + _ident("left")
        + _ident("right")
        + pp.Suppress("=")
        + pp.Suppress("(")
        + _dim("even")
        + pp.Suppress(",")
        + _dim("odd")
        + pp.Suppress(")"),
    ),
    (
        "assert_milnor",
        pp.Keyword("assert")
        + pp.Keyword("milnor")
        + _ident("target")
        + pp.Suppress("=")
        + _dim("expected"),
    ),
    ("assert_pass", pp.Keyword("assert") + pp.Keyword("pass") + _op("op") + _arguments),
)


@dataclass(frozen=True)
class Statement:
    """Instruction analysée, avec sa ligne d'origine."""

    kind: str
    line: int
    text: str
    name: str = None
    op: str = None
    args: tuple = ()
    options: dict = field(default_factory=dict)
    fields: dict = field(default_factory=dict)


def _split_arguments(tokens):
    args, options = [], {}
    for token in tokens:
        if isinstance(token, Option):
            options[token.key] = token.value
        else:
            args.append(token)
    return tuple(args), options


def _statement(kind, tokens, line, text):
    name = tokens.get("name")
    if kind == "ring":
        fields = {
            "variables": [(v["name"], v.get("cohdeg", 0)) for v in tokens["variables"]]
        }
        return Statement(kind, line, text, name=name, fields=fields)
    if kind == "poly":
        return Statement(kind, line, text, name=name, fields={"expr": tokens["expr"], "ring": tokens["ring"]})
    if kind == "koszul":
        fields = {"p": list(tokens["p"]), "q": list(tokens["q"]), "ring": tokens["ring"]}
        return Statement(kind, line, text, name=name, fields=fields)
    if kind == "matfact":
        fields = {key: tokens[key] for key in ("ring", "W", "d0", "d1")}
        return Statement(kind, line, text, name=name, fields=fields)
    if kind == "assert_ext":
        fields = {"expected": (tokens["even"], tokens["odd"])}
        return Statement(kind, line, text, args=(tokens["left"], tokens["right"]), fields=fields)
    if kind == "assert_milnor":
        return Statement(kind, line, text, name=tokens["target"], fields={"expected": tokens["expected"]})
    args, options = _split_arguments(tokens["args"])
    return Statement(kind, line, text, name=name, op=tokens["op"], args=args, options=options)


def parse_statement(text, line=1):
    """
    Analyse une ligne.

    Raises:
        ProblemSyntaxError: aucune forme ne reconnaît la ligne; la colonne
            est celle de l'échec le plus avancé
    """
    furthest = None
    for kind, grammar in GRAMMARS:
        try:
            tokens = grammar.parse_string(text, parse_all=True)
        except pp.ParseBaseException as e:
            if furthest is None or e.loc > furthest.loc:
                furthest = e
            continue
        return _statement(kind, tokens, line, text.strip())
    raise ProblemSyntaxError(f"Instruction invalide: {furthest.msg}", line, furthest.col)


def parse_problem(text):
    """Liste des instructions d'un fichier, dans l'ordre."""
    statements = []
    for line, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        statements.append(parse_statement(raw, line))
    return statements
