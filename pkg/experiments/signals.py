import logging

from django.db.models.signals import post_save
from django.dispatch import receiver

from experiments.models import ExperimentRun

logger = logging.getLogger(__name__)


@receiver(post_save, sender=ExperimentRun)
def registrar_transicao(sender, instance, created, **kwargs):
    """Registra em log cada mudança de situação de uma execução."""
    if created:
        logger.info("Execução %s de %s iniciada (semente %s).", instance.pk, instance.kind, instance.seed)
    else:
        logger.info("Execução %s de %s: %s.", instance.pk, instance.kind, instance.status)
