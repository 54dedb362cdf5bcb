from django.apps import AppConfig


class PolyConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "poly"
    verbose_name = "Polynômes et bases de Gröbner"
