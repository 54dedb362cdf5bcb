from django.apps import AppConfig


class MfcoreConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "mfcore"
    verbose_name = "Factorisations matricielles"
