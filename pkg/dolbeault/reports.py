"""Rapports des vérifications : une ligne par identité."""

import logging
from dataclasses import dataclass, field

from tabulate import tabulate

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"


@dataclass
class IdentityCheck:
    """Résultat d'une identité : résidu (forme ou matrice) et verdict."""

    name: str
    residual: object = None
    passed: bool = True
    detail: str = ""

    @property
    def support(self):
        if self.residual is None:
            return 0
        return self.residual.term_count()

    @property
    def verdict(self):
        return PASS if self.passed else FAIL

    def as_dict(self):
        data = {"verdict": self.verdict, "support": self.support}
        if self.detail:
            data["detail"] = self.detail
        if not self.passed and self.residual is not None:
            data["residual"] = str(self.residual)
        return data


def residual_check(name, residual, detail=""):
    """Identité vérifiée si et seulement si ``residual`` est nul."""
    return IdentityCheck(name, residual, not residual, detail)


def flag_check(name, passed, detail=""):
    return IdentityCheck(name, None, bool(passed), detail)


def nonzero_check(name, term, detail=""):
    """Échoue si le terme testé est nul : une identité entre zéros ne prouve rien."""
    count = term.term_count() if term else 0
    return IdentityCheck(name, None, count > 0, detail or f"{count} termes")


@dataclass
class HarnessReport:
    """Rapport d'une vérification, avec l'état du registre et la graine."""

    name: str
    checks: list = field(default_factory=list)
    seed: object = None
    registry: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def add(self, check):
        self.checks.append(check)
        if not check.passed:
            logger.warning(f"{self.name}: {check.name} en échec ({check.support} termes)")
        return check

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def verdict(self):
        return PASS if self.passed else FAIL

    def as_dict(self):
        return {
            "name": self.name,
            "seed": self.seed,
            "verdict": self.verdict,
            "registry": self.registry,
            "checks": {c.name: c.as_dict() for c in self.checks},
            "extra": {k: str(v) if not isinstance(v, (int, str, bool, type(None))) else v for k, v in self.extra.items()},
        }

    def rows(self):
        return [[self.name, self.seed, c.name, c.support, c.verdict] for c in self.checks]

    def as_table(self):
        headers = ["vérification", "graine", "identité", "support", "verdict"]
        return tabulate(self.rows(), headers=headers, tablefmt="simple")
