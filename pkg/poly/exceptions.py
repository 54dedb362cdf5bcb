"""Exceptions du noyau polynomial."""


class PolyError(Exception):
    """Erreur de base du module poly."""


class PolySyntaxError(PolyError):
    """Expression polynomiale mal formée."""

    def __init__(self, message, line=1, col=1):
        self.line = line
        self.col = col
        super().__init__(f"{message} (ligne {line}, colonne {col})")


class UnknownVariableError(PolyError):
    """Variable absente de l'anneau déclaré."""

    def __init__(self, name, line=None, col=None):
        self.name = name
        self.line = line
        self.col = col
        where = f" (ligne {line}, colonne {col})" if line is not None else ""
        super().__init__(f"Variable inconnue: {name}{where}")


class PolyOverflowError(PolyError):
    """Exposant au-delà de la limite configurée."""


class RingMismatchError(PolyError):
    """Polynômes appartenant à des anneaux incompatibles."""


class NameCollisionError(PolyError):
    """Nom de variable déjà utilisé ou réservé."""


class NotInIdealError(PolyError):
    """Le polynôme n'appartient pas à l'idéal; le reste est joint."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotInSubmoduleError(PolyError):
    """Le vecteur n'appartient pas au sous-module; le reste est joint."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
