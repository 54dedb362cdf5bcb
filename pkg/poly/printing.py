"""Impression canonique des polynômes (relisible par ``parse_poly``)."""

from tabulate import tabulate


def format_rational(q):
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_scalar(c):
    """Écrit un scalaire de Q(i) sous forme ``a``, ``b*i`` ou ``(a+b*i)``."""
    re, im = c.x, c.y
    if not im:
        return format_rational(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{format_rational(im)}*i"
    if not re:
        return imag
    sign = "-" if im < 0 else "+"
    imag = imag.lstrip("-")
    return f"({format_rational(re)}{sign}{imag})"


def format_monomial(names, monom):
    factors = []
    for name, e in zip(names, monom):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def _split_sign(c):
    """Retourne (négatif, scalaire positif) quand le signe est lisible."""
    if not c.y:
        return c.x < 0, -c if c.x < 0 else c
    if not c.x:
        return c.y < 0, -c if c.y < 0 else c
    return False, c


def format_poly(p):
    """
    Forme canonique : termes triés selon l'ordre de l'anneau, du plus grand
    au plus petit.
    """
    if not p:
        return "0"
    names = [str(s) for s in p.ring.symbols]
    one = p.ring.domain.one
    pieces = []
    for monom, coeff in p.terms():
        negative, c = _split_sign(coeff)
        mono = format_monomial(names, monom)
        if not mono:
            body = format_scalar(c)
        elif c == one:
            body = mono
        else:
            body = f"{format_scalar(c)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def format_matrix(matrix):
    """Matrice polynomiale ligne par ligne, lignes séparées par ``|``."""
    return " | ".join(", ".join(format_poly(e) for e in row) for row in matrix)


def matrix_table(matrix, headers=()):
    """Rendu tabulaire d'une matrice pour les rapports texte."""
    rows = [[format_poly(e) for e in row] for row in matrix]
    return tabulate(rows, headers=headers, tablefmt="simple")
