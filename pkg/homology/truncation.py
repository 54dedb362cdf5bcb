"""
Oracle indépendant : dimensions d'homologie par algèbre linéaire dense.

On filtre les vecteurs par le degré total de leurs entrées (F_N : degré au
plus N) et on calcule

    dim H_N = dim(Z ∩ F_N) - dim(B ∩ F_N)

par des rangs de matrices creuses sur Q(i). N double jusqu'à ce que deux
valeurs consécutives coïncident; une parité qui croît encore au-delà de
``settings.HOMOLOGY_TRUNCATION_MAX`` est déclarée infinie.
"""

import logging
from itertools import combinations_with_replacement

from django.conf import settings
from joblib import Parallel, delayed
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from poly.modules import INFINITE

from homology.complexes import complex_homology, hom_complex

logger = logging.getLogger(__name__)


def truncation_start():
    return getattr(settings, "HOMOLOGY_TRUNCATION_START", 8)


def truncation_max():
    return getattr(settings, "HOMOLOGY_TRUNCATION_MAX", 64)


def monomials_up_to(nvars, degree):
    """Exposants de degré total au plus ``degree``."""
    result = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            expv = [0] * nvars
            for k in combo:
                expv[k] += 1
            result.append(tuple(expv))
    return result


def _rank(entries, nrows, ncols):
    if not entries or not nrows or not ncols:
        return 0
    return DomainMatrix(entries, (nrows, ncols), QQ_I).rank()


def _image(matrix, nvars, degree):
    """
    Image de F_degree par ``matrix`` : colonnes creuses indexées par
    (position, monôme).
    """
    monoms = monomials_up_to(nvars, degree)
    columns = []
    for j in range(matrix.ncols):
        for m in monoms:
            col = {}
            for i in range(matrix.nrows):
                entry = matrix[i, j]
                if not entry:
                    continue
                for em, c in entry.terms():
                    key = (i, tuple(a + b for a, b in zip(em, m)))
                    col[key] = col.get(key, QQ_I.zero) + c
            columns.append({k: v for k, v in col.items() if v})
    return columns


def _rank_of_columns(columns, keep=None):
    rows = {}
    entries = {}
    for j, col in enumerate(columns):
        for key, value in col.items():
            if keep is not None and not keep(key):
                continue
            i = rows.setdefault(key, len(rows))
            entries.setdefault(i, {})[j] = value
    return _rank(entries, len(rows), len(columns))


def truncated_dimension(d_out, d_in, rank, nvars, degree):
    """dim(Z ∩ F_N) - dim(B ∩ F_N) pour N = ``degree``."""
    size = rank * len(monomials_up_to(nvars, degree))
    cycles = size - _rank_of_columns(_image(d_out, nvars, degree))
    # bords de degré au plus N : images de F_2N privées des lignes de haut degré
    image = _image(d_in, nvars, 2 * degree)
    high = _rank_of_columns(image, keep=lambda key: sum(key[1]) > degree)
    boundaries = _rank_of_columns(image) - high
    return cycles - boundaries


def _stabilized(d_out, d_in, rank, nvars, start, limit):
    if rank == 0:
        return 0
    degree = start
    previous = truncated_dimension(d_out, d_in, rank, nvars, degree)
    while degree < limit:
        degree *= 2
        current = truncated_dimension(d_out, d_in, rank, nvars, degree)
        logger.debug(f"Troncature N={degree}: {previous} -> {current}")
        if current == previous:
            return current
        previous = current
    return INFINITE


def truncation_dims(C, start=None, limit=None):
    """
    Dimensions (paire, impaire) de l'homologie de ``C`` par troncature.

    Args:
        C: HomComplex de courbure nulle
        start: degré initial (``HOMOLOGY_TRUNCATION_START`` par défaut)
        limit: degré maximal (``HOMOLOGY_TRUNCATION_MAX`` par défaut)
    """
    start = start or truncation_start()
    limit = limit or truncation_max()
    nvars = len(C.ring)
    return (
        _stabilized(C.d_even, C.d_odd, C.rank_even, nvars, start, limit),
        _stabilized(C.d_odd, C.d_even, C.rank_odd, nvars, start, limit),
    )


def ext_dims_agree(M, N, start=None, limit=None, n_jobs=2):
    """
    Compare les dimensions de Ext obtenues par bases de Gröbner et par troncature.

    Les deux calculs tournent en parallèle (threads joblib).

    Returns:
        (accord, dimensions Gröbner, dimensions par troncature)
    """
    C = hom_complex(M, N)
    gb_result, oracle = Parallel(n_jobs=n_jobs, prefer="threads")(
        [
            delayed(complex_homology)(C),
            delayed(truncation_dims)(C, start, limit),
        ]
    )
    agree = gb_result.dims == oracle
    if not agree:
        logger.warning(f"Désaccord Ext: Gröbner {gb_result.dims}, troncature {oracle}")
    return agree, gb_result.dims, oracle
