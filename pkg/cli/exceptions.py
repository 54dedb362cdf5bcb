"""Exceptions des fichiers de problèmes."""


class ProblemFileError(Exception):
    """Erreur de base du module cli; la position dans le fichier est jointe."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" (ligne {line}" + (f", colonne {col})" if col is not None else ")")
        super().__init__(f"{message}{where}")


class ProblemSyntaxError(ProblemFileError):
    """Instruction hors grammaire."""


class UndefinedNameError(ProblemFileError):
    """Nom utilisé avant sa définition."""


class AssertionFailed(ProblemFileError):
    """Assertion d'un fichier de problèmes non vérifiée."""
