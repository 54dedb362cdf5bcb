"""Exceptions des factorisations matricielles."""


class MatFactError(Exception):
    """Erreur de base du module mfcore."""


class InvariantError(MatFactError):
    """La relation d1·d0 = d0·d1 = W·Id n'est pas satisfaite."""


class KoszulLengthError(MatFactError):
    """Listes p et q de longueurs différentes."""


class FactorizationError(MatFactError):
    """W n'appartient pas à l'idéal (p); la forme normale sert de témoin."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class ExclusionError(MatFactError):
    """Aucune entrée éligible pour l'exclusion de variable."""
