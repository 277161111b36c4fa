"""Gera arquivos de configuração de exemplo para o comando `simulate`.

Este script foi projetado para ser executado como um utilitário autônomo.
Ele inicializa o ambiente Django, monta uma configuração por tipo de
experimento com os parâmetros padrão de cada serializer e grava os
arquivos em `configs/`. Cada configuração é validada antes de ser gravada,
de modo que os exemplos nunca divergem do esquema aceito pelo comando.

Para executar o script, use o comando:
    python gerar_configs_exemplo.py [diretório]
"""
import json
import os
import sys
from pathlib import Path

import django

# Configuração inicial do Django para permitir o uso dos serializers fora do comando.
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "floquet_lab.settings")
django.setup()

from experiments.choices import ExperimentKind  # noqa: E402
from experiments.serializers import ExperimentConfigSerializer  # noqa: E402

# Pequenos ajustes para que os exemplos rodem em minutos numa estação de trabalho.
AJUSTES = {
    ExperimentKind.ORACLE_CHECK.value: {"couplings": {"J": 1.0, "K": 0.0}},
    ExperimentKind.FUSION.value: {"parameters": {"L": 20}},
    ExperimentKind.BRAIDING.value: {"parameters": {"L": 21}},
    ExperimentKind.CHIRAL_EDGE.value: {"parameters": {"L": 12, "n_steps": 20}},
}


def print_success(message: str) -> None:
    """Exibe uma mensagem de sucesso no console com a cor verde."""
    print(f"\033[92m{message}\033[0m")


def gerar(diretorio: Path) -> list:
    """Valida e grava uma configuração por tipo de experimento.

    Returns:
        Os caminhos gravados.
    """
    diretorio.mkdir(parents=True, exist_ok=True)
    gravados = []
    for tipo in ExperimentKind.values:
        dados = {"kind": tipo, "seed": 0, **AJUSTES.get(tipo, {})}
        serializer = ExperimentConfigSerializer(data=dados)
        serializer.is_valid(raise_exception=True)
        caminho = diretorio / f"{tipo}.json"
        caminho.write_text(json.dumps(dados, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        gravados.append(caminho)
        print_success(f"Configuração gravada: {caminho}")
    return gravados


if __name__ == "__main__":
    gerar(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("configs"))
