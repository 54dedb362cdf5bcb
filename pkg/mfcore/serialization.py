"""
Format texte des factorisations matricielles.

    ring x, y:2
    W = x^2 + y^2
    d0 2x2: x, y | -y, x
    d1 2x2: x, -y | y, x

Les lignes vides et celles commençant par ``#`` sont ignorées. Les entrées
sont écrites dans la grammaire de ``poly.parser``.
"""

import pyparsing as pp

from poly.exceptions import PolySyntaxError
from poly.matrices import PolyMatrix
from poly.printing import format_poly
from poly.rings import Ring, Variable

from mfcore.factorizations import MatFact

_ident = pp.Word(pp.alphas + "_", pp.alphanums + "_'")
_integer = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
_variable = pp.Group(_ident("name") + pp.Opt(pp.Suppress(":") + _integer("cohdeg")))

RING_LINE = pp.Keyword("ring") + pp.Group(pp.Opt(pp.DelimitedList(_variable)))("variables")
W_LINE = pp.Keyword("W") + pp.Suppress("=") + pp.rest_of_line("expr")

_entry = pp.CharsNotIn(",|")
_row = pp.Group(pp.DelimitedList(_entry, ","))
MATRIX_LINE = (
    pp.one_of("d0 d1")("name")
    + pp.Regex(r"(?P<nrows>\d+)x(?P<ncols>\d+)")
    + pp.Suppress(":")
    + pp.Group(pp.Opt(pp.DelimitedList(_row, "|")))("rows")
)


def serialize_ring(ring):
    return "ring " + ", ".join(str(v) for v in ring.variables)


def _serialize_matrix(name, matrix):
    rows = " | ".join(", ".join(format_poly(e) for e in row) for row in matrix.rows)
    head = f"{name} {matrix.nrows}x{matrix.ncols}:"
    return f"{head} {rows}" if matrix.nrows and matrix.ncols else head


def serialize_matfact(M):
    """Texte canonique de M (relu à l'identique par ``parse_matfact``)."""
    return "\n".join(
        [
            serialize_ring(M.ring),
            f"W = {format_poly(M.W)}",
            _serialize_matrix("d0", M.d0),
            _serialize_matrix("d1", M.d1),
        ]
    )


def _parse_line(grammar, line, lineno):
    try:
        return grammar.parse_string(line, parse_all=True)
    except pp.ParseBaseException as e:
        raise PolySyntaxError(f"Ligne invalide: {e.msg}", lineno, e.col) from e


def parse_ring_line(line, lineno=1):
    tokens = _parse_line(RING_LINE, line, lineno)
    return Ring(
        [Variable(v["name"], v.get("cohdeg", 0)) for v in tokens["variables"]]
    )


def _matrix(tokens, ring, lineno):
    nrows, ncols = int(tokens["nrows"]), int(tokens["ncols"])
    rows = [[ring.parse(e.strip()) for e in row] for row in tokens["rows"]]
    if not rows and nrows * ncols == 0:
        return PolyMatrix.zeros(ring, nrows, ncols)
    try:
        return PolyMatrix(ring, rows, nrows, ncols)
    except Exception as e:
        raise PolySyntaxError(f"Matrice {tokens['name']}: {e}", lineno, 1) from e


def parse_matfact(text):
    """
    Relit une factorisation écrite par ``serialize_matfact``.

    Raises:
        PolySyntaxError: ligne hors format (numéro de ligne rapporté)
        InvariantError: les matrices ne factorisent pas W
    """
    lines = [
        (k, line.strip())
        for k, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if len(lines) != 4:
        raise PolySyntaxError(f"Quatre lignes attendues, {len(lines)} trouvées", 1, 1)
    (k_ring, ring_line), (k_w, w_line), *matrix_lines = lines
    ring = parse_ring_line(ring_line, k_ring)
    W = ring.parse(_parse_line(W_LINE, w_line, k_w)["expr"].strip())
    matrices = {}
    for k, line in matrix_lines:
        tokens = _parse_line(MATRIX_LINE, line, k)
        matrices[tokens["name"]] = _matrix(tokens, ring, k)
    if set(matrices) != {"d0", "d1"}:
        raise PolySyntaxError("Les matrices d0 et d1 sont requises", k_w + 1, 1)
    return MatFact(ring, W, matrices["d0"], matrices["d1"])
