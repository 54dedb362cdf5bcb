"""Exceptions du calcul d'homologie."""


class HomologyError(Exception):
    """Erreur de base du module homology."""


class CurvingMismatchError(HomologyError):
    """Les deux factorisations n'ont pas la même courbure."""


class InfiniteDimensionError(HomologyError):
    """Opération réservée aux espaces de dimension finie."""
