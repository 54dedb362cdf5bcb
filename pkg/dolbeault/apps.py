from django.apps import AppConfig


class DolbeaultConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "dolbeault"
    verbose_name = "Calcul de Dolbeault et vérification des déformations"
