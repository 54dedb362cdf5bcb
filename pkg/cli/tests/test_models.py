"""Tests pour RunRecord et l'historique."""

from datetime import timedelta
from unittest import mock

from django.db import DatabaseError
from django.test import TestCase
from django.utils import timezone

from cli.history import finish_run, start_run
from cli.models import RunRecord


class RunRecordModelTests(TestCase):
    """Tests pour le modèle RunRecord."""

    def test_defaults(self):
        """Teste les valeurs par défaut."""
        record = RunRecord.objects.create(command="mf")
        self.assertEqual(record.status, "pending")
        self.assertEqual(record.arguments, "{}")
        self.assertIsNone(record.completed_at)
        self.assertEqual(record.get_duration(), "N/A")

    def test_duration(self):
        """Teste le format de la durée."""
        record = RunRecord.objects.create(command="dolb")
        record.completed_at = record.started_at + timedelta(minutes=2, seconds=5)
        self.assertEqual(record.get_duration(), "2m 5s")
        record.completed_at = record.started_at + timedelta(seconds=42)
        self.assertEqual(record.get_duration(), "42s")

    def test_str(self):
        record = RunRecord.objects.create(command="support", status="success")
        self.assertIn("support (Succès)", str(record))

    def test_ordering(self):
        """Teste l'ordre : les plus récentes d'abord."""
        old = RunRecord.objects.create(command="mf")
        RunRecord.objects.filter(pk=old.pk).update(started_at=timezone.now() - timedelta(days=1))
        new = RunRecord.objects.create(command="dolb")
        self.assertEqual(list(RunRecord.objects.all()), [new, RunRecord.objects.get(pk=old.pk)])


class HistoryTests(TestCase):
    """Tests pour start_run et finish_run."""

    def test_start_and_finish(self):
        """Teste l'enregistrement des arguments triés et la clôture."""
        record = start_run("run_file", {"seed": 3, "json": True}, seed=3)
        self.assertEqual(record.arguments, '{"json": true, "seed": 3}')
        finish_run(record, "success", 0, report="ok")
        record.refresh_from_db()
        self.assertEqual(record.status, "success")
        self.assertEqual(record.report, "ok")
        self.assertIsNotNone(record.completed_at)

    def test_database_unavailable(self):
        """Teste qu'une base indisponible ne bloque pas l'exécution."""
        with mock.patch.object(RunRecord.objects, "create", side_effect=DatabaseError("verrou")):
            with self.assertLogs("cli.history", level="WARNING"):
                self.assertIsNone(start_run("mf", {}))
        self.assertIsNone(finish_run(None, "success"))

    def test_finish_logs_duration(self):
        """Teste que la clôture journalise le statut et la durée."""
        record = start_run("calibrate", {})
        with self.assertLogs("cli.history", level="INFO") as logs:
            finish_run(record, "failed", 1, error="boom")
        self.assertIn("Échec", logs.output[0])
        self.assertIn(f"durée {record.get_duration()}", logs.output[0])
        self.assertNotIn("N/A", logs.output[0])
