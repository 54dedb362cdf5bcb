"""
Lots de vérifications sur instances aléatoires, une graine par instance.
"""

import logging
from functools import partial

from dolbeault.brackets import poisson
from dolbeault.bundles import Connection, koszul_bundle, line_bundle, tensor_bundle
from dolbeault.calculus import dbar_homotopy
from dolbeault.corrections import (
    check_mc,
    corollary_checks,
    nu_approx,
    verify_corrections,
    xi_approx,
)
from dolbeault.dolforms import polydisk
from dolbeault.first_order import first_order_harness
from dolbeault.instances import (
    curvature_pairing,
    draw_until,
    first_order_instance,
    make_faker,
    random_beta,
    random_christoffel,
    random_holomorphic,
    random_superpotential,
    run_seeds,
)
from dolbeault.monoidal import zeta_alpha
from dolbeault.registry import resolve
from dolbeault.reports import HarnessReport

logger = logging.getLogger(__name__)


def mc_for_seed(seed, n=2, registry=None):
    """``κ = β + h(-½{β, β})`` vérifie Maurer-Cartan jusqu'au degré de fibre 3."""
    reg = resolve(registry)
    space = polydisk(n)
    beta = random_beta(space, make_faker(seed))
    source = poisson(beta, beta, reg).scale(-1, 2)
    kappa = beta + (dbar_homotopy(source) if source else space.zero_form)
    report = HarnessReport("maurer_cartan", seed=seed, registry=reg.as_dict())
    report.add(check_mc(kappa, reg, max_fiber=3))
    return report


def corrections_for_seed(seed, n=2, registry=None, curved=False):
    """
    Instance où ``γ`` et ``ν≈`` sont non nuls; avec ``curved`` et ``n ≥ 3``,
    ``ξ≈`` l'est aussi. Les tirages dégénérés sont écartés.
    """
    reg = resolve(registry)
    space = polydisk(n, tagged=True)
    fake = make_faker(seed)
    flat = Connection.flat(space)

    def draw():
        beta = random_beta(space, fake)
        W1 = random_superpotential(space, fake)
        W2 = random_superpotential(space, fake)
        connection = Connection(space, random_christoffel(space, fake)) if curved else flat
        return beta, W1, W2, connection

    def accept(data):
        beta, W1, W2, connection = data
        if not poisson(beta, beta, reg) or not nu_approx(beta, W2 - W1, connection):
            return False
        return not (curved and n >= 3) or bool(xi_approx(beta, connection))

    beta, W1, W2, connection = draw_until(draw, accept, "instance de corrections")
    return verify_corrections(beta, W1, W2, connection, registry=reg, seed=seed).report


def first_order_for_seed(seed, n=2, registry=None):
    space = polydisk(n)
    inst = first_order_instance(space, seed)
    return first_order_harness(
        inst.beta,
        inst.W1,
        inst.factors12,
        inst.factors23,
        gauge=inst.gauge,
        morphisms=inst.morphisms,
        registry=registry,
        seed=seed,
    ).report


def twisted_koszul(space, fake, name):
    """``K(p; 0) ⊗ L(φ)`` : courbure de partie de degré 0 ``-∂p`` plus ``-∂∂̄φ``."""
    p = random_holomorphic(space, fake, degree=2, terms=space.n, constant=False)
    phi = random_holomorphic(space, fake, degree=2, terms=2) * space.xbar(
        fake.random_int(min=0, max=space.n - 1)
    )
    bundle = tensor_bundle(
        koszul_bundle(space, p, space.zero_form), line_bundle(space, phi), name
    )
    return bundle, p


def monoidal_for_seed(seed, n=3, level=1, registry=None):
    """
    Deux fibrés ``K(p; 0) ⊗ L(φ)`` (plus un fibré en droites au niveau 2);
    le tirage est refait tant que ``β⌟(∂p1, ∂p2)`` est nul, et au niveau 2
    tant que ``{β, β}`` l'est.
    """
    reg = resolve(registry)
    space = polydisk(n)
    fake = make_faker(seed)

    def draw():
        beta = random_beta(space, fake)
        E1, p1 = twisted_koszul(space, fake, "E1")
        E2, p2 = twisted_koszul(space, fake, "E2")
        return beta, [E1, E2], (p1, p2)

    def accept(data):
        beta, _bundles, (p1, p2) = data
        if not curvature_pairing(beta, p1, p2):
            return False
        return level == 1 or bool(poisson(beta, beta, reg))

    beta, bundles, _factors = draw_until(draw, accept, "instance monoïdale")
    if level == 2:
        phi = random_holomorphic(space, fake, degree=2, terms=2) * space.xbar(
            fake.random_int(min=0, max=n - 1)
        )
        bundles.append(line_bundle(space, phi, "L3"))
    result = zeta_alpha(beta, bundles, level=level, registry=reg, seed=seed)
    return result.report


def corollaries_for_seed(seed, n=2, registry=None):
    return corollary_checks(polydisk(n, tagged=True), seed=seed, registry=registry)


KINDS = {
    "mc": mc_for_seed,
    "corrections": corrections_for_seed,
    "first-order": first_order_for_seed,
    "monoidal": monoidal_for_seed,
    "corollaries": corollaries_for_seed,
}


def run_batch(kind, seeds, n_jobs=None, **options):
    """Rapports d'un lot, dans l'ordre des graines."""
    func = partial(KINDS[kind], **options)
    reports = run_seeds(func, seeds, n_jobs)
    failed = sum(1 for r in reports if not r.passed)
    logger.info(f"Lot {kind}: {len(reports)} rapport(s), {failed} en échec")
    return reports
