# Generated by Django 5.2.4 on 2025-09-02 14:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="ExperimentRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                (
                    "kind",
                    models.CharField(
                        choices=[
                            ("heating", "Aquecimento de Floquet"),
                            ("heff-optimization", "Engenharia do Hamiltoniano efetivo"),
                            ("vsp-scan", "Escala da preparação variacional"),
                            ("fusion", "Fusão de modos de Majorana"),
                            ("braiding", "Trançamento de modos de Majorana"),
                            ("readout", "Leitura por campo local"),
                            ("chiral-edge", "Modo de borda quiral"),
                            ("noisy-vsp", "Preparação com ruído nas portas"),
                            ("rydberg-scan", "Pulsos de Rydberg para G3"),
                            ("oracle-check", "Verificação contra o oráculo de spins"),
                            ("resources", "Estimativa de camadas de portas"),
                            ("optimal-depth", "Profundidade ótima"),
                            ("zero-mode-splitting", "Desdobramento dos modos zero"),
                        ],
                        max_length=32,
                        verbose_name="Experimento",
                    ),
                ),
                ("seed", models.BigIntegerField(verbose_name="Semente")),
                (
                    "config_hash",
                    models.CharField(
                        db_index=True, max_length=16, verbose_name="Hash da Configuração"
                    ),
                ),
                (
                    "backend",
                    models.CharField(
                        choices=[
                            ("fermion", "Férmions livres"),
                            ("oracle", "Vetor de estado"),
                            ("fgs", "Estados gaussianos com ligação dinâmica"),
                        ],
                        default="fermion",
                        max_length=16,
                        verbose_name="Backend",
                    ),
                ),
                (
                    "status",
                    models.CharField(
                        choices=[
                            ("running", "Em execução"),
                            ("finished", "Concluída"),
                            ("failed", "Falhou"),
                        ],
                        default="running",
                        max_length=16,
                        verbose_name="Situação",
                    ),
                ),
                ("output_dir", models.CharField(max_length=500, verbose_name="Diretório de Saída")),
                ("summary", models.JSONField(blank=True, default=dict, verbose_name="Resumo")),
                (
                    "error_message",
                    models.TextField(blank=True, default="", verbose_name="Mensagem de Erro"),
                ),
                ("started_at", models.DateTimeField(auto_now_add=True, verbose_name="Início")),
                ("finished_at", models.DateTimeField(blank=True, null=True, verbose_name="Fim")),
            ],
            options={
                "verbose_name": "Execução de Experimento",
                "verbose_name_plural": "Execuções de Experimentos",
                "ordering": ["-started_at"],
            },
        ),
    ]
