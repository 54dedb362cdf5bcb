"""Exceptions de la 2-catégorie des objets de Landau-Ginzburg."""


class TwoCatError(Exception):
    """Erreur de base du module twocat."""


class BaseMismatchError(TwoCatError):
    """Les objets ne partagent pas la même base."""


class IncompatibleCurvingError(TwoCatError):
    """La courbure de l'objet intermédiaire ne se simplifie pas."""
