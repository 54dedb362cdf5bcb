"""
Crochets de Poisson et de Schouten, contractions et insertions.

Les deux crochets sont multipliés par le marqueur ``tn`` (une dérivée
holomorphe consommée).
"""

import enum
import itertools
import logging

from dolbeault.dolforms import component
from dolbeault.exceptions import ArityError, BracketKindError, SpaceMismatchError
from dolbeault.registry import resolve

logger = logging.getLogger(__name__)


class BracketKind(enum.Enum):
    POISSON = "POISSON"
    SCHOUTEN = "SCHOUTEN"


def _common_space(a, b):
    if a.space != b.space:
        raise SpaceMismatchError(f"{a.space} != {b.space}")
    return a.space


def bracket(kind, a, b, registry=None):
    """
    Crochet de deux formes à valeurs dans la fibre.

    POISSON (réalisation SYM, sans θ) :
    ``{f, g} = Σ_I ∂_{x_I}f·∂_{y_I}g - ∂_{y_I}f·∂_{x_I}g``.

    SCHOUTEN (réalisation WEDGE, sans y) :
    ``[F, G] = Σ_I (F ∂⃖_{θ_I})(∂_{x_I}G) - (∂_{x_I}F)(∂⃗_{θ_I}G)``.
    """
    reg = resolve(registry)
    kind = BracketKind(kind.value if isinstance(kind, BracketKind) else str(kind).upper())
    space = _common_space(a, b)
    total = space.zero_form
    if kind is BracketKind.POISSON:
        if a.has_theta() or b.has_theta():
            raise BracketKindError("Crochet de Poisson sur une forme contenant des θ")
        for i in range(space.n):
            forward = a.partial(i) * b.diff_y(i) - a.diff_y(i) * b.partial(i)
            total = total + (forward if reg.poisson_order == "xy" else -forward)
    else:
        if a.has_y() or b.has_y():
            raise BracketKindError("Crochet de Schouten sur une forme contenant des y")
        for i in range(space.n):
            k = space.n + i
            total = total + a.right_derivative(k) * b.partial(i)
            total = total - a.partial(i) * b.left_derivative(k)
        if reg.schouten_sign < 0:
            total = -total
    return total * space.dtag


def poisson(a, b, registry=None):
    return bracket(BracketKind.POISSON, a, b, registry)


def schouten(a, b, registry=None):
    return bracket(BracketKind.SCHOUTEN, a, b, registry)


def gradient(W):
    """Composantes ``tn·∂_I W`` de la différentielle holomorphe."""
    space = W.space
    return [W.partial(i) * space.dtag for i in range(space.n)]


def _product(factors):
    result = factors[0]
    for f in factors[1:]:
        result = result * f
    return result


def contract(v, args, registry=None):
    """
    Contraction totale d'un tenseur de fibre de degré ``k`` avec ``k``
    arguments, chacun donné par ses ``n`` composantes (formes ou matrices).

    ``args_first`` : ``α1_{I1}⋯αk_{Ik}·v^{I1…Ik}``; ``vector_first`` :
    ``v^{I1…Ik}·α1_{I1}⋯αk_{Ik}``.
    """
    reg = resolve(registry)
    space = v.space
    k = len(args)
    if not v:
        return space.zero_form
    if v.fiber_degrees() != {k}:
        raise ArityError(f"Degré de fibre {sorted(v.fiber_degrees())} pour {k} argument(s)")
    for arg in args:
        if len(arg) != space.n:
            raise ArityError(f"Argument à {len(arg)} composantes, attendu {space.n}")
    total = None
    for indices in itertools.product(range(space.n), repeat=k):
        comp = component(v, indices)
        if not comp:
            continue
        factors = [args[j][indices[j]] for j in range(k)]
        if reg.contraction_order == "args_first":
            term = _product(factors + [comp])
        else:
            term = _product([comp] + factors)
        total = term if total is None else total + term
    return space.zero_form if total is None else total


def insert(v, arg, registry=None):
    """
    Insertion dans un seul emplacement : tenseur de degré ``k`` vers degré
    ``k - 1``. En SYM : ``(1/k) Σ_I arg_I · ∂_{y_I} v``.
    """
    reg = resolve(registry)
    space = v.space
    if not v:
        return space.zero_form
    degrees = v.fiber_degrees()
    if len(degrees) != 1 or 0 in degrees:
        raise ArityError(f"Insertion dans un tenseur de degrés {sorted(degrees)}")
    if len(arg) != space.n:
        raise ArityError(f"Argument à {len(arg)} composantes, attendu {space.n}")
    (k,) = degrees
    total = None
    for i in range(space.n):
        if v.has_theta():
            slot = v.right_derivative(space.n + i)
        else:
            slot = v.diff_y(i).scale(1, k)
        term = arg[i] * slot if reg.contraction_order == "args_first" else slot * arg[i]
        total = term if total is None else total + term
    return total
