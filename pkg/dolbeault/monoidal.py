"""
Structure monoïdale déformée sur les fibrés holomorphes : termes ``ζ``
du produit tensoriel et associateur ``α`` aux deux premiers ordres.

Les trois fibrés sont relevés sur ``E1 ⊗ E2 ⊗ E3`` et leurs courbures
``F`` y agissent par ``(X ⊗ 1) ⊗ 1``, ``(1 ⊗ Y) ⊗ 1`` et ``1 ⊗ Z``.
"""

import logging
from dataclasses import dataclass, field

from dolbeault.brackets import contract, poisson
from dolbeault.bundles import DolMatrix, curvature_F, lift_left, lift_right, nabla_bar, trivial_bundle
from dolbeault.calculus import dbar_homotopy
from dolbeault.corrections import beta_components
from dolbeault.dolforms import component
from dolbeault.exceptions import PreconditionError
from dolbeault.registry import resolve
from dolbeault.reports import (
    HarnessReport,
    IdentityCheck,
    flag_check,
    nonzero_check,
    residual_check,
)

logger = logging.getLogger(__name__)

# Lecture de l'indice de ``F3`` dans le terme cubique de ζ₂ : telle
# qu'imprimée, ou remplacée par le second argument.
READINGS = ("literal", "e2")
UNDECIDED = "undecided"


@dataclass
class TripleProduct:
    """Fibrés relevés sur ``E1 ⊗ E2 ⊗ E3`` et leurs courbures."""

    A: object
    F1: list
    F2: list
    F3: list


def triple_product(bundles, registry=None):
    E1, E2, E3 = bundles
    p1, p2, p3 = E1.parities, E2.parities, E3.parities
    p12 = tuple((a + b) % 2 for a in p1 for b in p2)

    def L1(X):
        return lift_left(lift_left(X, p2), p3)

    def L2(Y):
        return lift_left(lift_right(p1, Y), p3)

    def L3(Z):
        return lift_right(p12, Z)

    A = L1(E1.A) + L2(E2.A) + L3(E3.A)
    F1 = [L1(X) for X in curvature_F(E1, registry).components]
    F2 = [L2(Y) for Y in curvature_F(E2, registry).components]
    F3 = [L3(Z) for Z in curvature_F(E3, registry).components]
    return TripleProduct(A, F1, F2, F3)


def _add(X, Y):
    return [a + b for a, b in zip(X, Y)]


def _scaled(X, p, q):
    return X.map(lambda e: e.scale(p, q))


@dataclass
class MonoidalResult:
    zeta1: object
    alpha2: object = None
    zeta2: dict = field(default_factory=dict)
    readings: dict = field(default_factory=dict)
    accepted_reading: str = ""
    report: HarnessReport = None


def _check_inputs(beta, bundles, level):
    if level not in (1, 2):
        raise PreconditionError(f"Niveau {level} non pris en charge (1 ou 2)")
    if beta:
        if beta.has_theta() or beta.fiber_degrees() != {2} or beta.form_degrees() != {1}:
            raise PreconditionError("β doit être une (0,1)-forme quadratique en y")
        if beta.dbar():
            raise PreconditionError("β doit être holomorphe")
    for E in bundles:
        if E.W:
            raise PreconditionError(f"Le fibré {E.name} doit être de courbure nulle")


def zeta_alpha(beta, bundles, level=1, gamma=None, registry=None, seed=None):
    """
    Construit ``ζ₁[X, Y] = β⌟(X, Y)`` et vérifie au niveau 1 :
    ``∇̄ζ₁[F1, F2] = 0``, l'antisymétrie ``ζ₁[F2, F1] = -ζ₁[F1, F2]`` et
    l'équation de l'associateur (bilinéarité de ζ₁). Un ζ₁ nul fait échouer
    ``zeta1_nonzero``.

    Au niveau 2, instancie ζ₂ pour chaque lecture et α₂ = ⅔ γ⌟(F1, F2, F3),
    puis vérifie ``∇̄ζ₂ + ζ₁ζ₁ = 0`` et ``∇̄α₂ + δζ₂ + ζ̃₂ = 0``. La lecture
    n'est retenue que si elle est seule à passer; si les deux passent, le
    résultat est ``undecided`` et ``accepted_reading`` échoue.
    """
    reg = resolve(registry)
    space = beta.space
    bundles = list(bundles)
    if len(bundles) == 2:
        bundles.append(trivial_bundle(space))
    if len(bundles) != 3:
        raise PreconditionError("zeta_alpha attend deux ou trois fibrés")
    _check_inputs(beta, bundles, level)

    bb = poisson(beta, beta, reg)
    if gamma is None:
        gamma = dbar_homotopy(bb.scale(-1, 2)) if bb else space.zero_form
    elif gamma.dbar() + bb.scale(1, 2):
        raise PreconditionError("γ ne vérifie pas ∂̄γ + ½{β, β} = 0")

    triple = triple_product(bundles, reg)
    A, F1, F2, F3 = triple.A, triple.F1, triple.F2, triple.F3
    report = HarnessReport(f"monoidal_n{level}", seed=seed, registry=reg.as_dict())

    zero = DolMatrix.zeros(space, A.row_parities, A.col_parities)

    def zeta1(X, Y):
        return contract(beta, [X, Y], reg) + zero

    z12 = zeta1(F1, F2)
    report.add(nonzero_check("zeta1_nonzero", z12))
    report.add(residual_check("zeta1_closed", nabla_bar(A, z12)))
    report.add(residual_check("zeta1_swap", zeta1(F2, F1) + z12))
    delta1 = zeta1(F2, F3) + zeta1(F1, _add(F2, F3)) - zeta1(F1, F2) - zeta1(_add(F1, F2), F3)
    report.add(residual_check("alpha_level1", delta1))
    result = MonoidalResult(zeta1=z12, report=report)
    if level == 1:
        logger.info(f"Structure monoïdale niveau 1: {report.verdict}")
        return result

    n = space.n
    bc = beta_components(beta)
    dbc = [[[bc[i][k].partial(l) for k in range(n)] for i in range(n)] for l in range(n)]

    alpha2 = zero
    for i in range(n):
        for j in range(n):
            for k in range(n):
                g = component(gamma, (i, j, k)) if gamma else None
                if not g:
                    continue
                alpha2 = alpha2 + g * F1[i] * F2[j] * F3[k]
    alpha2 = _scaled(alpha2, 2, 3)
    result.alpha2 = alpha2

    def zeta2(X, Y, reading):
        Z = F3 if reading == "literal" else Y
        total = zero
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        c1 = bc[j][l] * dbc[l][i][k]
                        if c1:
                            total = total + _scaled(c1 * X[i] * (X[j] - Y[j]) * Z[k], 1, 3)
                        c2 = bc[i][j] * bc[k][l]
                        if c2:
                            inner = X[k].partial(i) * Y[j] * Y[l] + Y[k].partial(i) * X[j] * X[l]
                            total = total + _scaled(c2 * inner, 1, 2)
        return total

    sign = -1 if reg.f_sign > 0 else 1

    def G(zeta):
        return [zeta.partial(i) * sign for i in range(n)]

    tilde2 = zeta1(F1, G(zeta1(F2, F3))) - zeta1(G(z12), F3)
    passing = []
    failures = []
    for reading in READINGS:
        z2 = zeta2(F1, F2, reading)
        result.zeta2[reading] = z2
        report.extra[f"zeta2_terms_{reading}"] = z2.term_count()
        mc = residual_check("zeta2_closed", nabla_bar(A, z2) + z12 * z12, reading)
        delta2 = (
            zeta2(F2, F3, reading)
            + zeta2(F1, _add(F2, F3), reading)
            - zeta2(F1, F2, reading)
            - zeta2(_add(F1, F2), F3, reading)
        )
        assoc = residual_check("alpha_level2", nabla_bar(A, alpha2) + delta2 + tilde2, reading)
        result.readings[reading] = [mc, assoc]
        if mc.passed and assoc.passed:
            passing.append(reading)
        else:
            failures += [c for c in (mc, assoc) if not c.passed]

    report.add(nonzero_check("alpha2_nonzero", alpha2))
    # une lecture n'est retenue que si elle seule vérifie les équations
    if len(passing) == 1:
        result.accepted_reading = passing[0]
        for check in result.readings[passing[0]]:
            report.add(check)
        report.add(nonzero_check("zeta2_nonzero", result.zeta2[passing[0]], passing[0]))
        report.add(flag_check("accepted_reading", True, passing[0]))
    elif passing:
        same = result.zeta2[READINGS[0]] == result.zeta2[READINGS[1]]
        result.accepted_reading = UNDECIDED
        report.add(
            flag_check(
                "accepted_reading",
                False,
                "lectures indiscernables" if same else "les deux lectures passent",
            )
        )
    else:
        smallest = min(failures, key=lambda c: c.support)
        report.add(IdentityCheck(smallest.name, smallest.residual, False, f"FALSIFIED ({smallest.detail})"))
        report.add(flag_check("accepted_reading", False, "none"))
        result.accepted_reading = "none"
    report.extra["accepted_reading"] = result.accepted_reading
    logger.info(
        f"Structure monoïdale niveau 2: {report.verdict} (lecture {result.accepted_reading})"
    )
    return result
