"""Historique des exécutions des commandes de calcul."""

from django.db import models


class RunRecord(models.Model):
    """Une exécution de commande : arguments, graine, statut et rapport."""

    STATUS_CHOICES = [
        ("pending", "En cours"),
        ("success", "Succès"),
        ("failed", "Échec"),
        ("assertion_failed", "Assertion non vérifiée"),
    ]

    command = models.CharField(max_length=50, verbose_name="Commande")
    arguments = models.TextField(blank=True, default="{}", verbose_name="Arguments (JSON)")
    seed = models.BigIntegerField(null=True, blank=True, verbose_name="Graine")
    status = models.CharField(
        max_length=20, choices=STATUS_CHOICES, default="pending", verbose_name="Statut"
    )
    exit_code = models.IntegerField(null=True, blank=True, verbose_name="Code de sortie")
    started_at = models.DateTimeField(auto_now_add=True, verbose_name="Démarré à")
    completed_at = models.DateTimeField(null=True, blank=True, verbose_name="Terminé à")
    error_message = models.TextField(blank=True, verbose_name="Message d'erreur")
    report = models.TextField(blank=True, verbose_name="Rapport")

    class Meta:
        verbose_name = "Exécution"
        verbose_name_plural = "Exécutions"
        ordering = ["-started_at"]

    def __str__(self):
        return f"{self.command} ({self.get_status_display()}) - {self.started_at.strftime('%d/%m/%Y %H:%M')}"

    def get_duration(self):
        """Calcule la durée de l'exécution."""
        if self.completed_at and self.started_at:
            duration = self.completed_at - self.started_at
            total_seconds = int(duration.total_seconds())
            minutes, seconds = divmod(total_seconds, 60)
            if minutes > 0:
                return f"{minutes}m {seconds}s"
            return f"{seconds}s"
        return "N/A"
