"""
Instances aléatoires reproductibles pour les vérifications.

Les polynômes ont un degré borné et de petits coefficients entiers; la
graine fixe entièrement l'instance. Les lots de graines tournent avec
joblib et sont fusionnés dans l'ordre des graines.
"""

import logging
from dataclasses import dataclass, field

from django.conf import settings
from faker import Faker
from joblib import Parallel, delayed

from dolbeault.dolforms import component
from dolbeault.exceptions import PreconditionError

logger = logging.getLogger(__name__)

MAX_DRAWS = 50


def make_faker(seed):
    fake = Faker()
    fake.seed_instance(seed)
    return fake


def _coefficient(fake, bound):
    value = 0
    while not value:
        value = fake.random_int(min=-bound, max=bound)
    return value


def random_holomorphic(space, fake, degree=2, terms=3, bound=2, constant=True):
    """Polynôme holomorphe en ``x`` (forme de degré 0)."""
    ring = space.sympy
    poly = ring.zero
    for _ in range(terms):
        exps = [0] * space.n
        for _ in range(fake.random_int(min=0 if constant else 1, max=degree)):
            exps[fake.random_int(min=0, max=space.n - 1)] += 1
        mono = ring.one
        for g, e in zip(space.x_gens, exps):
            mono *= g**e
        poly += _coefficient(fake, bound) * mono
    return space.function(poly)


def random_superpotential(space, fake, degree=3, terms=3):
    return random_holomorphic(space, fake, degree=degree, terms=terms, constant=False)


def random_beta(space, fake, degree=1, density=None):
    """
    Bivecteur holomorphe ``Σ b(x) y_I y_J dx̄_a``.

    Les ``n`` premiers termes parcourent les ``dx̄_a`` dans l'ordre, de sorte
    que ``{β, β}`` puisse être non nul; les suivants sont tirés au hasard.
    """
    n = space.n
    beta = space.zero_form
    for k in range(density or n + 2):
        a = k if k < n else fake.random_int(min=0, max=n - 1)
        i = fake.random_int(min=0, max=n - 1)
        j = fake.random_int(min=0, max=n - 1)
        coeff = random_holomorphic(space, fake, degree=degree, terms=2)
        beta = beta + coeff * space.y(i) * space.y(j) * space.db(a)
    return beta


def random_gamma(space, fake, degree=0, density=2):
    """Trivecteur holomorphe ``Σ c(x) y_I y_J y_K dx̄_a``."""
    gamma = space.zero_form
    for _ in range(density):
        a = fake.random_int(min=0, max=space.n - 1)
        coeff = random_holomorphic(space, fake, degree=degree, terms=1)
        term = coeff * space.db(a)
        for _ in range(3):
            term = term * space.y(fake.random_int(min=0, max=space.n - 1))
        gamma = gamma + term
    return gamma


def random_christoffel(space, fake):
    """Connexion symétrique dont les symboles dépendent de ``x̄`` (R ≠ 0)."""
    n = space.n
    gamma = [[[space.zero_form] * n for _ in range(n)] for _ in range(n)]
    i = fake.random_int(min=0, max=n - 1)
    j = fake.random_int(min=0, max=n - 1)
    k = fake.random_int(min=0, max=n - 1)
    value = space.xbar(fake.random_int(min=0, max=n - 1)) * _coefficient(fake, 2)
    gamma[i][j][k] = value
    gamma[i][k][j] = value
    return gamma


def curvature_pairing(beta, p, q):
    """
    ``Σ β^{IJ} ∂_I p ∂_J q`` : partie de degré 0 de ``β⌟(F, F')`` pour
    ``K(p; 0)`` et ``K(q; 0)``.
    """
    space = beta.space
    total = space.zero_form
    if not beta:
        return total
    for i in range(space.n):
        for j in range(space.n):
            c = component(beta, (i, j))
            if c:
                total = total + c * p.partial(i) * q.partial(j)
    return total


def draw_until(draw, accept, what="instance"):
    """Premier tirage accepté; la graine du Faker fixe toute la suite des tirages."""
    for attempt in range(MAX_DRAWS):
        value = draw()
        if accept(value):
            if attempt:
                logger.debug(f"{what}: {attempt} tirage(s) dégénéré(s) écarté(s)")
            return value
    raise PreconditionError(f"Aucune {what} non dégénérée en {MAX_DRAWS} tirages")


@dataclass
class FirstOrderInstance:
    """Données d'une vérification au premier ordre."""

    seed: int
    beta: object
    W1: object
    factors12: tuple
    factors23: tuple
    gauge: list = field(default_factory=list)
    morphisms: tuple = ()


def first_order_instance(space, seed):
    """Instance dont le terme ``β⌟(F12, F23)`` de la spécialisation W = 0 est non nul."""
    fake = make_faker(seed)

    def draw():
        return (
            random_beta(space, fake, degree=1),
            random_holomorphic(space, fake, degree=1, terms=2, constant=False),
            random_holomorphic(space, fake, degree=1, terms=2, constant=False),
        )

    beta, p12, p23 = draw_until(
        draw, lambda d: bool(curvature_pairing(*d)), "instance au premier ordre"
    )
    W1 = random_superpotential(space, fake, degree=2, terms=2)
    q12 = random_holomorphic(space, fake, degree=1, terms=2, constant=False)
    q23 = random_holomorphic(space, fake, degree=1, terms=2, constant=False)
    gauge = [
        (random_holomorphic(space, fake, degree=1, terms=1), random_holomorphic(space, fake, degree=1, terms=1))
        for _ in range(space.n)
    ]
    morphisms = (
        random_holomorphic(space, fake, degree=1, terms=2),
        random_holomorphic(space, fake, degree=1, terms=2),
    )
    return FirstOrderInstance(seed, beta, W1, (p12, q12), (p23, q23), gauge, morphisms)


def harness_jobs():
    return getattr(settings, "HARNESS_N_JOBS", 1)


def run_seeds(func, seeds, n_jobs=None):
    """Exécute ``func(seed)`` pour chaque graine; résultats dans l'ordre des graines."""
    seeds = sorted(seeds)
    n_jobs = n_jobs or harness_jobs()
    logger.info(f"Lot de {len(seeds)} graines ({n_jobs} travailleurs)")
    results = Parallel(n_jobs=n_jobs, prefer="threads")(delayed(func)(s) for s in seeds)
    return list(results)
