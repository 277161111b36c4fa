from django.db import models


class InitMode(models.TextChoices):
    """Inicialização dos ângulos antes da descida de gradiente."""

    RANDOMIZED_SYMMETRIC = "randomized-symmetric", "Perfil simétrico com ruído"
    BOOTSTRAP = "bootstrap", "Solução de etapa anterior duplicada"
    EXPLICIT = "explicit", "Ângulos fornecidos"
