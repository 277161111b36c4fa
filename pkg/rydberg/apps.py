from django.apps import AppConfig


class RydbergConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'rydberg'
    verbose_name = 'Pulsos de Rydberg com bloqueio perfeito'
