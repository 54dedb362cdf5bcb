"""
Calibration du registre des conventions.

Chaque interrupteur est choisi indépendamment : parmi ses valeurs, exactement
une doit satisfaire les identités qui le déterminent, sur une instance fixe
en deux variables. Le registre obtenu est ensuite contrôlé par la structure
monoïdale au niveau 1, gelé puis enregistré.
"""

import logging

from dolbeault.brackets import gradient, poisson, schouten
from dolbeault.bundles import curvature_F, koszul_bundle, line_bundle, tensor_bundle
from dolbeault.calculus import evaluate_on_gradient, hat_exp_evaluate
from dolbeault.dolforms import polydisk, sym_component, wedge_component
from dolbeault.exceptions import CalibrationError
from dolbeault.first_order import first_order_harness
from dolbeault.monoidal import zeta_alpha
from dolbeault.registry import CHOICES, DEFAULT_REGISTRY, save_registry

logger = logging.getLogger(__name__)


def _calibration_data():
    space = polydisk(2)
    f = space.parse
    y1, y2 = space.y(0), space.y(1)
    beta = f("1 + x2") * y1 * y2 * space.db(0) + y1 * y1 * space.db(1)
    return {
        "space": space,
        "beta": beta,
        "W": f("x1^2*x2 + x2^3"),
        "nu": f("x1 + x2^2") * space.theta(0) * space.theta(1),
    }


def poisson_rule(registry, data):
    """``{W, β} = 2 β^{IJ} ∂_I W y_J`` et ``(e^Ŵ β)|₀ = β(∂W)``."""
    space, beta, W = data["space"], data["beta"], data["W"]
    expected = space.zero_form
    grad = gradient(W)
    for i in range(space.n):
        for j in range(space.n):
            expected = expected + sym_component(beta, (i, j)) * grad[i] * space.y(j)
    expected = expected.scale(2)
    return poisson(W, beta, registry) == expected and hat_exp_evaluate(
        beta, W, registry
    ) == evaluate_on_gradient(beta, W)


def schouten_rule(registry, data):
    """``[W, ν] = 2 ν^{IJ} ∂_J W θ_I``."""
    space, nu, W = data["space"], data["nu"], data["W"]
    grad = gradient(W)
    expected = space.zero_form
    for i in range(space.n):
        for j in range(space.n):
            expected = expected + wedge_component(nu, (i, j)) * grad[j] * space.theta(i)
    return schouten(W, nu, registry) == expected.scale(2)


def bianchi_rule(registry, data):
    """Bianchi courbée ``∇̄F_I = -∂_I W·Id`` sur ``K(x1 + x2; x1·x2)``."""
    space = data["space"]
    bundle = koszul_bundle(space, space.parse("x1 + x2"), space.parse("x1*x2"))
    return curvature_F(bundle, registry).is_bianchi


def contraction_rule(registry, data):
    """Équation de la correction ``b`` d'un objet de Koszul au premier ordre."""
    space, beta = data["space"], data["beta"]
    f = space.parse
    report = first_order_harness(
        beta, f("x1^2"), (f("x1"), f("x1 + x2")), (f("x2"), f("x1")), registry=registry
    ).report
    return report.check("b_equation").passed and report.check("square_12").passed


RULES = (
    ("poisson_order", poisson_rule),
    ("schouten_sign", schouten_rule),
    ("f_sign", bianchi_rule),
    ("contraction_order", contraction_rule),
)


def monoidal_rule(registry, data):
    """ζ₁ non nul et fermé sur ``K(x1 + x2; 0)`` et ``K(x2; 0) ⊗ L(x̄1·x1)``."""
    space, beta = data["space"], data["beta"]
    f = space.parse
    zero = space.zero_form
    bundles = [
        koszul_bundle(space, f("x1 + x2"), zero, "K1"),
        tensor_bundle(koszul_bundle(space, f("x2"), zero), line_bundle(space, f("xb1*x1")), "K2"),
    ]
    return zeta_alpha(beta, bundles, level=1, registry=registry).report.passed


def calibrate(path=None, save=True):
    """Fixe chaque interrupteur, gèle le registre et l'enregistre."""
    data = _calibration_data()
    registry = DEFAULT_REGISTRY
    for name, rule in RULES:
        candidates = [
            value for value in CHOICES[name] if rule(registry.with_switch(**{name: value}), data)
        ]
        logger.info(f"Calibration de {name}: candidats {candidates}")
        if len(candidates) != 1:
            raise CalibrationError(
                f"{name}: {len(candidates)} valeur(s) compatible(s) au lieu d'une"
            )
        registry = registry.with_switch(**{name: candidates[0]})
    if not monoidal_rule(registry, data):
        raise CalibrationError("La structure monoïdale au niveau 1 échoue avec le registre calibré")
    registry = registry.with_switch(frozen=True)
    if save:
        save_registry(registry, path)
    logger.info(f"Registre calibré: {registry}")
    return registry
