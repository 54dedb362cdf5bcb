from django.apps import AppConfig


class TwocatConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "twocat"
    verbose_name = "2-catégorie de Landau-Ginzburg"
