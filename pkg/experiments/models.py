from django.db import models

from experiments.choices import Backend, ExperimentKind, RunStatus


class ExperimentRun(models.Model):
    """Registra uma execução do comando `simulate`.

    Os arquivos de observáveis não guardam horário; somente esta linha do
    registro carrega os instantes de início e fim.

    Attributes:
        kind (CharField): Tipo de experimento.
        seed (BigIntegerField): Semente efetiva da execução.
        config_hash (CharField): Hash curto da configuração validada.
        backend (CharField): Backend numérico selecionado.
        status (CharField): Situação atual da execução.
        output_dir (CharField): Diretório dos artefatos.
        summary (JSONField): Resumo escalar do resultado.
        error_message (TextField): Mensagem do erro, em execuções que falharam.
    """
    kind = models.CharField(max_length=32, choices=ExperimentKind.choices, verbose_name="Experimento")
    seed = models.BigIntegerField(verbose_name="Semente")
    config_hash = models.CharField(max_length=16, db_index=True, verbose_name="Hash da Configuração")
    backend = models.CharField(max_length=16, choices=Backend.choices, default=Backend.FERMION, verbose_name="Backend")
    status = models.CharField(
        max_length=16, choices=RunStatus.choices, default=RunStatus.RUNNING, verbose_name="Situação"
    )
    output_dir = models.CharField(max_length=500, verbose_name="Diretório de Saída")
    summary = models.JSONField(default=dict, blank=True, verbose_name="Resumo")
    error_message = models.TextField(blank=True, default="", verbose_name="Mensagem de Erro")
    started_at = models.DateTimeField(auto_now_add=True, verbose_name="Início")
    finished_at = models.DateTimeField(null=True, blank=True, verbose_name="Fim")

    class Meta:
        verbose_name = "Execução de Experimento"
        verbose_name_plural = "Execuções de Experimentos"
        ordering = ["-started_at"]

    def __str__(self):
        return f"{self.kind} (semente {self.seed}, {self.get_status_display()})"
