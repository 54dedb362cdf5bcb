"""
Enregistrement des exécutions dans ``RunRecord``.

Une base indisponible ne fait jamais échouer le calcul : l'incident est
journalisé et l'exécution continue sans historique.
"""

import json
import logging

from django.db import DatabaseError
from django.utils import timezone

from cli.models import RunRecord

logger = logging.getLogger(__name__)


def start_run(command, arguments, seed=None):
    """Crée une entrée ``pending``; retourne ``None`` si la base est indisponible."""
    try:
        return RunRecord.objects.create(
            command=command,
            arguments=json.dumps(arguments, sort_keys=True, default=str),
            seed=seed,
            status="pending",
        )
    except DatabaseError as e:
        logger.warning(f"Historique indisponible, exécution non enregistrée: {e}")
        return None


def finish_run(record, status, exit_code=0, report="", error=""):
    if record is None:
        return None
    record.status = status
    record.exit_code = exit_code
    record.report = report
    record.error_message = error
    record.completed_at = timezone.now()
    try:
        record.save()
    except DatabaseError as e:
        logger.warning(f"Impossible de clore l'exécution {record.pk}: {e}")
        return record
    logger.info(
        f"Exécution {record.pk} ({record.command}) close: {record.get_status_display()}, "
        f"durée {record.get_duration()}"
    )
    return record
