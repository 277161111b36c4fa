from django.apps import AppConfig


class VariationalConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'variational'
    verbose_name = 'Otimização variacional de circuitos'
