from django.apps import AppConfig


class FermionsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'fermions'
    verbose_name = 'Núcleo de férmions livres'
