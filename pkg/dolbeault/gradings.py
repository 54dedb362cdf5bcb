"""
Graduations portées par les marqueurs de poids.

Chaque marqueur contribue à (Dolbeault, semi-classique, degré de forme,
équilibré, poids en W). Le reste du degré de forme d'un terme, non expliqué
par les marqueurs, est compté comme ``dx̄`` libres : +1 en Dolbeault, -1 en
semi-classique et en équilibré.
"""

import logging
from dataclasses import asdict, dataclass

from dolbeault.dolforms import TAGS, W_TAGS
from dolbeault.exceptions import PreconditionError, UntaggedTermError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TagGrading:
    dolbeault: int
    semiclassical: int
    formdeg: int
    balanced: int
    dW: int = 0


TAG_GRADINGS = {
    "tb": TagGrading(1, -1, 1, 1),
    "tg": TagGrading(1, 0, 1, 2),
    "tW1": TagGrading(0, -2, 0, 0, 1),
    "tW2": TagGrading(0, -2, 0, 0, 1),
    "tW3": TagGrading(0, -2, 0, 0, 1),
    "tn": TagGrading(0, 1, 0, -1),
    "tF1": TagGrading(1, 0, 1, 0),
    "tF2": TagGrading(1, 0, 1, 0),
    "tF3": TagGrading(1, 0, 1, 0),
}

F_TAGS = ("tF1", "tF2", "tF3")


@dataclass(frozen=True)
class Gradings:
    dolbeault: int
    sym_or_wedge: int
    semiclassical: int
    dW: int
    balanced: int
    total: int

    def as_dict(self):
        return asdict(self)


def gradings(term, f_formdeg=1):
    """
    Graduations d'un terme élémentaire (un monôme impair et un monôme pair).

    ``f_formdeg`` est le degré de forme porté par un marqueur de courbure
    ``tF`` (1 pour une courbure holomorphe, 0 pour un fibré de Koszul).
    """
    space = term.space
    if len(term.terms) != 1 or term.term_count() != 1:
        raise PreconditionError(f"gradings attend un terme élémentaire, reçu {term}")
    if not space.tagged:
        raise UntaggedTermError("Polydisque sans marqueurs de poids")
    ((mono, coeff),) = term.terms.items()
    ((monom, _c),) = coeff.terms()
    counts = {t: monom[space.tag_positions[t]] for t in TAGS}
    if not any(counts.values()):
        raise UntaggedTermError(f"Terme sans marqueur: {term}")
    formdeg = sum(1 for k in mono if k < space.n)
    fiber = term._y_degree(monom) + sum(1 for k in mono if k >= space.n)
    dlb = sc = bal = dW = 0
    free = formdeg
    for tag, e in counts.items():
        if not e:
            continue
        g = TAG_GRADINGS[tag]
        tag_formdeg = f_formdeg if tag in F_TAGS else g.formdeg
        dlb += e * g.dolbeault
        sc += e * g.semiclassical
        bal += e * g.balanced
        dW += e * g.dW
        free -= e * tag_formdeg
    dlb += free
    sc -= free
    bal -= free
    return Gradings(dlb, fiber, sc, dW, bal, sc + bal)


def grading_audit(form, semiclassical=-2, balanced=0, f_formdeg=1):
    """Termes de ``form`` dont les degrés semi-classique ou équilibré diffèrent."""
    offending = []
    for term in form.iter_terms():
        g = gradings(term, f_formdeg)
        if g.semiclassical != semiclassical or g.balanced != balanced:
            offending.append((term, g))
    return offending


def min_dW(form):
    """Plus petit poids en W des termes de ``form`` (``None`` si nulle)."""
    space = form.space
    positions = [space.ring.index(t) for t in W_TAGS]
    weights = [
        sum(monom[p] for p in positions)
        for coeff in form.terms.values()
        for monom in coeff.monoms()
    ]
    return min(weights) if weights else None
