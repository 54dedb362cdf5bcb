"""
Déformation au premier ordre (``κ = εβ``, ``ε² = 0``) des objets de
Koszul, de leur composition et des morphismes.

Pour ``W2 = W1 + p12·q12`` et ``W3 = W2 + p23·q23``, les objets
``E12 = K(p12; q12)`` et ``E23 = K(p23; q23)`` reçoivent l'opérateur
``∂̄ + A + ε(μ⌟∂ + b)``. Le carré est certifié en l'appliquant aux sections
``e_k`` et ``x_I·e_k``.
"""

import logging
from dataclasses import dataclass

from dolbeault.brackets import contract, gradient, insert
from dolbeault.bundles import (
    DolMatrix,
    curvature_F,
    koszul_bundle,
    lift_left,
    lift_right,
    tensor_bundle,
)
from dolbeault.calculus import dbar_homotopy, divided_difference, evaluate_on_gradient
from dolbeault.corrections import mu
from dolbeault.dolforms import homotopy, tilde, wedge_component
from dolbeault.exceptions import PreconditionError
from dolbeault.monoidal import zeta_alpha
from dolbeault.registry import resolve
from dolbeault.reports import HarnessReport, flag_check, residual_check

logger = logging.getLogger(__name__)

EPS = ("eps",)


def _cut(X):
    return X.truncate(EPS, 2)


def _matrix(value, like):
    """Convertit une forme nulle en matrice nulle du type de ``like``."""
    return value + DolMatrix.zeros(like.space, like.row_parities, like.col_parities)


@dataclass
class FirstOrderResult:
    mu12: object
    mu23: object
    mu13: object
    b12: object
    b23: object
    b13: object
    zeta: object
    gauge_sign: int
    report: HarnessReport


def koszul_correction(bundle, mu_v, p, q):
    """``b = [[0, h(-μ⌟∂q)], [h(-μ⌟∂p), 0]]`` pour ``K(p; q)``."""
    space = bundle.space
    u = dbar_homotopy(-contract(mu_v, [gradient(q)]))
    v = dbar_homotopy(-contract(mu_v, [gradient(p)]))
    zero = space.zero_form
    return DolMatrix(space, [[zero, u], [v, zero]], bundle.parities, bundle.parities)


def deformed_operator(bundle, mu_v, b, eps):
    """``σ ↦ (∂̄ + A)σ + ε(μ^I ∂_I σ + b σ)``."""
    space = bundle.space
    comps = [wedge_component(mu_v, (i,)) if mu_v else space.zero_form for i in range(space.n)]

    def apply(section):
        first = b * section
        for i, m in enumerate(comps):
            if m:
                first = first + m * section.partial(i)
        return bundle.apply(section) + eps * first

    return apply


def basis_sections(bundle):
    space = bundle.space
    zero, one = space.zero_form, space.one_form
    sections = []
    for k in range(bundle.rank):
        for factor in [one] + [space.x(i) for i in range(space.n)]:
            entries = [factor if j == k else zero for j in range(bundle.rank)]
            sections.append(DolMatrix.section(space, entries, bundle.parities))
    return sections


def square_check(name, bundle, operator, W):
    """``D(Dσ) = W·σ + O(ε²)`` sur les sections de base."""
    residuals = [
        _cut(operator(operator(s)) - W * s) for s in basis_sections(bundle)
    ]
    failing = [r for r in residuals if r]
    return residual_check(name, failing[0] if failing else None, f"{len(residuals)} sections")


def _check_inputs(beta, functions):
    if beta:
        if beta.has_theta() or beta.fiber_degrees() != {2} or beta.form_degrees() != {1}:
            raise PreconditionError("β doit être une (0,1)-forme quadratique en y")
        if beta.dbar():
            raise PreconditionError("κ = εβ doit être holomorphe")
    for f in functions:
        if not f.is_function() or f.dbar() or f.has_y():
            raise PreconditionError(f"{f} n'est pas une fonction holomorphe")


def monoidal_specialization(beta, p12, p23, registry=None):
    """
    Pour ``W = 0``, la composition de ``K(p12; 0)`` et ``K(p23; 0)`` porte le
    terme ``∂²_sβ⌟(F12, F23)``; il doit coïncider avec ``ζ₁[F12, F23]`` de la
    structure monoïdale sur le produit tensoriel, et ne pas être nul.
    """
    name = "monoidal_specialization"
    if not beta:
        return flag_check(name, True, "β nul")
    reg = resolve(registry)
    space = beta.space
    zero = space.zero_form
    E12 = koszul_bundle(space, p12, zero, "E12")
    E23 = koszul_bundle(space, p23, zero, "E23")
    E13 = tensor_bundle(E12, E23, "E13")
    F12 = [lift_left(F, E23.parities) for F in curvature_F(E12, reg).components]
    F23 = [lift_right(E12.parities, F) for F in curvature_F(E23, reg).components]
    second = divided_difference(beta, 2, [gradient(zero)] * 3)
    zeta = _matrix(contract(second, [F12, F23], reg), E13.A)
    if not zeta:
        return flag_check(name, False, "terme ζ nul")
    expected = zeta_alpha(beta, [E12, E23], level=1, registry=reg).zeta1
    return residual_check(name, zeta - expected, f"{zeta.term_count()} termes")


def first_order_harness(
    beta, W1, factors12, factors23, gauge=None, morphisms=None, registry=None, seed=None
):
    """
    Vérifie au premier ordre en ε :

    - ``b_equation`` : ``∇̄b = W12|1·Id - μ12⌟F12`` et ``square_12`` ;
    - ``mu13_minus_mu12``, ``mu13_minus_mu23`` et ``square_13`` pour la
      composition ``E12 ⊗ E23`` avec le terme ``∂²_sβ⌟(F12, F23)`` ;
    - ``monoidal_specialization`` : pour W = 0 et q = 0, ce terme est le
      ``ζ₁`` non nul de la structure monoïdale ;
    - ``gauge_exact`` : changer de connexion modifie la composition par un
      terme ``∇̄``-exact (le signe est rapporté) ;
    - ``morphism_closed`` et ``morphism_commutation`` pour deux morphismes
      scalaires.
    """
    reg = resolve(registry)
    space = beta.space
    p12, q12 = (space.coerce(f) for f in factors12)
    p23, q23 = (space.coerce(f) for f in factors23)
    W1 = space.coerce(W1)
    _check_inputs(beta, (W1, p12, q12, p23, q23))
    eps = space.function(space.ring.gen("eps"))
    report = HarnessReport("first_order", seed=seed, registry=reg.as_dict())

    W2 = W1 + p12 * q12
    W3 = W2 + p23 * q23
    Ws = (W1, W2, W3)
    W_eps = [homotopy(evaluate_on_gradient(beta, W)) for W in Ws]
    mu12 = mu(beta, W1, W2, check=False)
    mu23 = mu(beta, W2, W3, check=False)
    mu13 = mu(beta, W1, W3, check=False)

    # (i) objets déformés
    E12 = koszul_bundle(space, p12, q12, "E12")
    E23 = koszul_bundle(space, p23, q23, "E23")
    F12 = curvature_F(E12, reg).components
    F23 = curvature_F(E23, reg).components
    b12 = koszul_correction(E12, mu12, p12, q12)
    b23 = koszul_correction(E23, mu23, p23, q23)
    target = DolMatrix.scalar(W_eps[1] - W_eps[0], E12.parities) - _matrix(
        contract(mu12, [F12], reg), E12.A
    )
    report.add(residual_check("b_equation", E12.nabla_bar(b12) - target))
    report.add(
        square_check(
            "square_12",
            E12,
            deformed_operator(E12, mu12, b12, eps),
            (W2 - W1) + eps * (W_eps[1] - W_eps[0]),
        )
    )

    # (ii) composition
    E13 = tensor_bundle(E12, E23, "E13")

    def L(X):
        return lift_left(X, E23.parities)

    def R(Y):
        return lift_right(E12.parities, Y)

    second = divided_difference(beta, 2, [gradient(W) for W in Ws])
    W12, W23 = W2 - W1, W3 - W2
    if second:
        report.add(
            residual_check(
                "mu13_minus_mu12", tilde(mu12) - tilde(mu13) - insert(second, gradient(W23), reg)
            )
        )
        report.add(
            residual_check(
                "mu13_minus_mu23", tilde(mu23) - tilde(mu13) + insert(second, gradient(W12), reg)
            )
        )
    F12L = [L(F) for F in F12]
    F23R = [R(F) for F in F23]
    zeta = _matrix(contract(second, [F12L, F23R], reg), E13.A)
    b13 = L(b12) + R(b23) + zeta
    report.add(monoidal_specialization(beta, p12, p23, reg))
    report.add(
        square_check(
            "square_13",
            E13,
            deformed_operator(E13, mu13, b13, eps),
            (W3 - W1) + eps * (W_eps[2] - W_eps[0]),
        )
    )

    # (iii) changement de connexion
    zero = space.zero_form
    if gauge is None:
        gauge = [(space.x(i), space.one_form) for i in range(space.n)]
    # a_I pair : le changement de connexion garde la parité de ∇
    a = [DolMatrix(space, [[r, zero], [zero, s]], E12.parities, E12.parities) for r, s in gauge]
    aL = [L(X) for X in a]
    delta = (
        _matrix(contract(mu13, [aL], reg), E13.A)
        - L(_matrix(contract(mu12, [a], reg), E12.A))
        + _matrix(contract(second, [[L(E12.nabla_bar(X)) for X in a], F23R], reg), E13.A)
    )
    exact = E13.nabla_bar(_matrix(contract(second, [aL, F23R], reg), E13.A))
    gauge_sign = 0
    for c in (1, -1):
        if exact and not (delta - exact * c):
            gauge_sign = c
            break
    if not exact and not delta:
        report.add(flag_check("gauge_exact", True, "variation nulle"))
    else:
        report.add(
            residual_check(
                "gauge_exact",
                None if gauge_sign else delta,
                f"signe {gauge_sign:+d}" if gauge_sign else "aucun signe",
            )
        )
    report.extra["gauge_sign"] = gauge_sign

    # (iv) morphismes
    if morphisms is None:
        morphisms = (space.x(0) + 1, space.one_form)
    c12, c23 = (space.coerce(c) for c in morphisms)
    closed = []
    sigmas = []
    for bundle, mu_v, c in ((E12, mu12, c12), (E23, mu23, c23)):
        shift = contract(mu_v, [gradient(c)], reg)
        first = dbar_homotopy(-shift)
        one = DolMatrix.scalar(first, bundle.parities)
        closed.append(bundle.nabla_bar(one) + DolMatrix.scalar(shift, bundle.parities))
        sigmas.append(DolMatrix.scalar(c, bundle.parities) + eps * one)
    report.add(residual_check("morphism_closed", closed[0] if closed[0] else closed[1]))

    grad12 = [L(DolMatrix.scalar(g, E12.parities)) for g in gradient(c12)]
    grad23 = [R(DolMatrix.scalar(g, E23.parities)) for g in gradient(c23)]
    phi23 = L(sigmas[0]) + eps * _matrix(contract(second, [grad12, F23R], reg), E13.A)
    phi12 = R(sigmas[1]) - eps * _matrix(contract(second, [F12L, grad23], reg), E13.A)
    lhs = _cut(phi12 * phi23 - phi23 * phi12)
    rhs = eps * E13.nabla_bar(_matrix(contract(second, [grad12, grad23], reg), E13.A))
    report.add(residual_check("morphism_commutation", _cut(lhs - rhs)))

    report.extra["b_zero"] = not (b12 or b23)
    logger.info(f"Premier ordre (graine {seed}): {report.verdict}")
    return FirstOrderResult(mu12, mu23, mu13, b12, b23, b13, zeta, gauge_sign, report)
