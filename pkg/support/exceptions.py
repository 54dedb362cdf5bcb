"""Exceptions du calcul de supports."""


class SupportError(Exception):
    """Erreur de base du module support."""


class AmbientMismatchError(SupportError):
    """Déclarations d'espace ambiant incompatibles."""
