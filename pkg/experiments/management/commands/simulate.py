import json
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from django.utils import timezone

from core.conf import parametro
from core.exceptions import SimulationError
from core.io import build_metadata, para_json, write_json
from experiments.choices import RunStatus
from experiments.models import ExperimentRun
from experiments.runners import RUNNERS, TARGETS
from experiments.serializers import ExperimentConfigSerializer

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    """
    Executa um experimento descrito por um arquivo JSON e grava os artefatos
    (tabelas CSV e `summary.json`) no diretório de saída.
    """
    help = "Executa um experimento a partir de uma configuração JSON."

    def add_arguments(self, parser):
        parser.add_argument("config", help="Arquivo JSON com a configuração do experimento.")
        parser.add_argument("--seed", type=int, help="Substitui a semente da configuração.")
        parser.add_argument("--out", help="Substitui o diretório de saída.")
        parser.add_argument("--backend", help="Substitui o backend numérico.")

    def _carregar(self, caminho: str, options) -> dict:
        try:
            dados = json.loads(Path(caminho).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as erro:
            raise CommandError(f"Não foi possível ler {caminho}: {erro}")
        if not isinstance(dados, dict):
            raise CommandError("A configuração deve ser um objeto JSON.")
        for chave, opcao in (("seed", "seed"), ("output", "out"), ("backend", "backend")):
            if options.get(opcao) is not None:
                dados[chave] = options[opcao]
        serializer = ExperimentConfigSerializer(data=dados)
        if not serializer.is_valid():
            raise CommandError(f"Configuração inválida: {json.dumps(serializer.errors, ensure_ascii=False)}")
        return dict(serializer.validated_data)

    def handle(self, *args, **options):
        config = self._carregar(options["config"], options)
        tipo = config["kind"]
        destino = Path(config.get("output") or parametro("OUTPUT_DIR") / tipo)
        assinatura = para_json({chave: valor for chave, valor in config.items() if chave != "output"})
        metadados = build_metadata(config["seed"], assinatura, TARGETS[tipo])

        self.stdout.write(self.style.NOTICE(f"Iniciando {tipo} (semente {config['seed']}) em {destino}..."))
        execucao = ExperimentRun.objects.create(
            kind=tipo,
            seed=config["seed"],
            config_hash=metadados["config_hash"],
            backend=config["backend"],
            output_dir=str(destino),
        )
        try:
            resumo = RUNNERS[tipo](config, destino, metadados)
        except (SimulationError, ValueError) as erro:
            execucao.status = RunStatus.FAILED
            execucao.error_message = str(erro)
            execucao.finished_at = timezone.now()
            execucao.save(update_fields=["status", "error_message", "finished_at"])
            logger.error("Experimento %s falhou: %s", tipo, erro)
            raise CommandError(f"{type(erro).__name__}: {erro}")

        write_json(destino / "summary.json", resumo, metadados)
        execucao.status = RunStatus.FINISHED
        execucao.summary = para_json(resumo)
        execucao.finished_at = timezone.now()
        execucao.save(update_fields=["status", "summary", "finished_at"])
        self.stdout.write(self.style.SUCCESS(f"{tipo} concluído; artefatos em {destino}."))
