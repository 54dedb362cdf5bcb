"""
Homotopie de ∂̄, évaluation sur la fibre, différences divisées et séries
de l'opérateur ``Ŵ = {W, ·}``.
"""

import logging
from math import factorial

from dolbeault.brackets import gradient, poisson
from dolbeault.dolforms import frac, homotopy
from dolbeault.exceptions import ArityError, BracketKindError, NotClosedError, PreconditionError

logger = logging.getLogger(__name__)

SIMPLEX_VARS = ("s1", "s2")


def dbar_homotopy(f):
    """
    Primitive ``h f`` d'une forme ∂̄-fermée de degré antiholomorphe positif :
    ``∂̄(h f) = f``.
    """
    if not f:
        return f
    if 0 in f.form_degrees():
        raise PreconditionError("La forme a une partie de degré antiholomorphe nul")
    residual = f.dbar()
    if residual:
        raise NotClosedError(f"∂̄f ≠ 0 ({residual.term_count()} termes)", residual)
    return homotopy(f)


def _points(values, name):
    points = []
    for v in values:
        if not v.is_function():
            raise PreconditionError(f"{name}: composante non fonctionnelle {v}")
        points.append(v.scalar)
    return points


def evaluate_sym(kappa, values):
    """``κ(v)`` : substitution ``y_I -> v_I`` (réalisation SYM)."""
    space = kappa.space
    if kappa.has_theta():
        raise BracketKindError("Évaluation SYM d'une forme contenant des θ")
    if len(values) != space.n:
        raise ArityError(f"{len(values)} valeurs pour {space.n} variables de fibre")
    points = _points(values, "evaluate_sym")
    return kappa.compose(list(zip(space.y_gens, points)))


def simplex_integral(form, names):
    """
    Intégrale sur le simplexe standard en les variables ``names`` :
    ``∫ s1^a1 ⋯ sm^am = a1!⋯am! / (a1+⋯+am+m)!``.
    """
    space = form.space
    ring = space.ring
    positions = [ring.index(n) for n in names]
    m = len(positions)
    acc = {}
    for mono, coeff in form.terms.items():
        out = {}
        for monom, c in coeff.terms():
            exps = [monom[p] for p in positions]
            weight = 1
            for e in exps:
                weight *= factorial(e)
            value = c * frac(weight, factorial(sum(exps) + m))
            reduced = list(monom)
            for p in positions:
                reduced[p] = 0
            reduced = tuple(reduced)
            total = out.get(reduced)
            out[reduced] = value if total is None else total + value
        poly = space.sympy.from_dict({k: v for k, v in out.items() if v})
        if poly:
            acc[mono] = poly
    return space.form(acc)


def divided_difference(kappa, order, args):
    """
    Différences divisées de ``κ`` (réalisation SYM).

    Ordre 1 : ``Σ_J y_J ∫_0^1 ∂_{y_J}κ(v1 + s(v2 - v1)) ds``.
    Ordre 2 : ``Σ_{I,K} y_I y_K ∫_Δ ∂_{y_I}∂_{y_K}κ((1-s1-s2)v1 + s1 v2 + s2 v3)``.
    """
    if order not in (1, 2):
        raise ArityError(f"Ordre {order} non pris en charge")
    if len(args) != order + 1:
        raise ArityError(f"L'ordre {order} demande {order + 1} points")
    if kappa.has_theta():
        raise BracketKindError("Différence divisée d'une forme contenant des θ")
    space = kappa.space
    ring = space.ring
    pts = [_points(v, "divided_difference") for v in args]
    if any(len(p) != space.n for p in pts):
        raise ArityError(f"Chaque point doit avoir {space.n} composantes")
    s = [ring.gen(n) for n in SIMPLEX_VARS[:order]]
    if order == 1:
        segment = [a + s[0] * (b - a) for a, b in zip(*pts)]
        total = space.zero_form
        for j in range(space.n):
            D = kappa.diff_y(j).compose(list(zip(space.y_gens, segment)))
            total = total + simplex_integral(D, SIMPLEX_VARS[:1]) * space.y(j)
        return total
    one = space.sympy.one
    plane = [
        (one - s[0] - s[1]) * a + s[0] * b + s[1] * c for a, b, c in zip(*pts)
    ]
    total = space.zero_form
    for i in range(space.n):
        for k in range(space.n):
            E = kappa.diff_y(i).diff_y(k).compose(list(zip(space.y_gens, plane)))
            total = total + simplex_integral(E, SIMPLEX_VARS) * space.y(i) * space.y(k)
    return total


def hat(W, kappa, registry=None):
    """``Ŵκ = {W, κ}``."""
    return poisson(W, kappa, registry)


def _max_fiber_degree(kappa):
    degrees = kappa.fiber_degrees()
    return max(degrees) if degrees else 0


def hat_exp_evaluate(kappa, W, registry=None):
    """``Σ_m (1/m!) Ŵ^m κ`` restreint à ``y = 0`` ; coïncide avec ``κ(∂W)``."""
    total = kappa.space.zero_form
    term = kappa
    for m in range(_max_fiber_degree(kappa) + 1):
        total = total + term.scale(1, factorial(m))
        term = hat(W, term, registry)
    return total.at_y_zero()


def hat_divided_difference(kappa, W1, W2, registry=None):
    """
    Partie de degré de fibre 1 de ``Σ_m 1/(m+1)! Σ_j Ŵ1^j Ŵ2^(m-j) κ`` ;
    coïncide avec ``∂_sκ(∂W1, ∂W2)``.
    """
    top = _max_fiber_degree(kappa)
    # powers2[k] = Ŵ2^k κ
    powers2 = [kappa]
    for _ in range(top):
        powers2.append(hat(W2, powers2[-1], registry))
    total = kappa.space.zero_form
    for m in range(top + 1):
        inner = kappa.space.zero_form
        for j in range(m + 1):
            term = powers2[m - j]
            for _ in range(j):
                term = hat(W1, term, registry)
            inner = inner + term
        total = total + inner.scale(1, factorial(m + 1))
    return total.fiber_part(1)


def evaluate_on_gradient(kappa, W):
    """``κ(∂W)`` avec les composantes marquées ``tn·∂_I W``."""
    return evaluate_sym(kappa, gradient(W))
