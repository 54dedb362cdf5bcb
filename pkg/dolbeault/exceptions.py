"""Exceptions du calcul de Dolbeault."""


class DolbeaultError(Exception):
    """Erreur de base du module dolbeault."""


class SpaceMismatchError(DolbeaultError):
    """Formes définies sur des polydisques différents."""


class BracketKindError(DolbeaultError):
    """Crochet incompatible avec la réalisation de la fibre (SYM ou WEDGE)."""


class ArityError(DolbeaultError):
    """Nombre d'arguments différent du degré de fibre."""


class NotClosedError(DolbeaultError):
    """La forme n'est pas ∂̄-fermée; le résidu est joint."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class UntaggedTermError(DolbeaultError):
    """Terme sans marqueur de poids : graduations indéfinies."""


class BundleError(DolbeaultError):
    """Le fibré ne vérifie pas (∂̄ + A)² = W·Id."""


class PreconditionError(DolbeaultError):
    """Hypothèse d'une vérification non satisfaite."""


class CalibrationError(DolbeaultError):
    """Aucune convention (ou plusieurs) ne satisfait les identités de calibration."""
