from django.apps import AppConfig


class ExperimentsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'experiments'
    verbose_name = 'Harness de experimentos'

    def ready(self):
        """Importa os sinais do registro de execuções."""
        import experiments.signals  # noqa: F401
