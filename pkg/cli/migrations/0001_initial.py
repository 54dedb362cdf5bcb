from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="RunRecord",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("command", models.CharField(max_length=50, verbose_name="Commande")),
                (
                    "arguments",
                    models.TextField(blank=True, default="{}", verbose_name="Arguments (JSON)"),
                ),
                ("seed", models.BigIntegerField(blank=True, null=True, verbose_name="Graine")),
                (
                    "status",
                    models.CharField(
                        choices=[
                            ("pending", "En cours"),
                            ("success", "Succès"),
                            ("failed", "Échec"),
                            ("assertion_failed", "Assertion non vérifiée"),
                        ],
                        default="pending",
                        max_length=20,
                        verbose_name="Statut",
                    ),
                ),
                (
                    "exit_code",
                    models.IntegerField(blank=True, null=True, verbose_name="Code de sortie"),
                ),
                ("started_at", models.DateTimeField(auto_now_add=True, verbose_name="Démarré à")),
                (
                    "completed_at",
                    models.DateTimeField(blank=True, null=True, verbose_name="Terminé à"),
                ),
                ("error_message", models.TextField(blank=True, verbose_name="Message d'erreur")),
                ("report", models.TextField(blank=True, verbose_name="Rapport")),
            ],
            options={
                "verbose_name": "Exécution",
                "verbose_name_plural": "Exécutions",
                "ordering": ["-started_at"],
            },
        ),
    ]
