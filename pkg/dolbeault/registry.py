"""
Registre des conventions de signe et d'ordre.

Chaque interrupteur est fixé une fois par ``calibrate`` puis gelé et
enregistré en JSON; toutes les vérifications le relisent ensuite.
"""

import json
import logging
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from django.conf import settings

from dolbeault.exceptions import DolbeaultError

logger = logging.getLogger(__name__)

CHOICES = {
    "poisson_order": ("xy", "yx"),
    "schouten_sign": (1, -1),
    "contraction_order": ("args_first", "vector_first"),
    "f_sign": (1, -1),
}


@dataclass(frozen=True)
class ConventionRegistry:
    """Conventions utilisées par les crochets, contractions et courbures."""

    poisson_order: str = "xy"
    schouten_sign: int = 1
    contraction_order: str = "args_first"
    f_sign: int = 1
    frozen: bool = False

    def __post_init__(self):
        for name, allowed in CHOICES.items():
            if getattr(self, name) not in allowed:
                raise DolbeaultError(f"Valeur invalide pour {name}: {getattr(self, name)!r}")

    def as_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})

    def with_switch(self, **changes):
        return replace(self, **changes)

    def __str__(self):
        state = "gelé" if self.frozen else "provisoire"
        return (
            f"poisson={self.poisson_order}, schouten={self.schouten_sign:+d}, "
            f"contraction={self.contraction_order}, F={self.f_sign:+d} ({state})"
        )


DEFAULT_REGISTRY = ConventionRegistry()


def resolve(registry=None):
    return DEFAULT_REGISTRY if registry is None else registry


def registry_path(path=None):
    return Path(path or settings.DOLBEAULT_REGISTRY_PATH)


def load_registry(path=None):
    """Relit le registre; sans fichier, les conventions par défaut s'appliquent."""
    path = registry_path(path)
    if not path.exists():
        logger.info(f"Aucun registre en {path}, conventions par défaut")
        return DEFAULT_REGISTRY
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as e:
        raise DolbeaultError(f"Registre illisible {path}: {e}") from e
    return ConventionRegistry.from_dict(data)


def save_registry(registry, path=None):
    path = registry_path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(registry.as_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    logger.info(f"Registre enregistré dans {path}: {registry}")
    return path
