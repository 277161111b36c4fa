"""Escrita determinística dos artefatos de saída (CSV e JSON).

Os arquivos de observáveis não carregam carimbo de tempo: duas execuções
com a mesma configuração e a mesma semente produzem bytes idênticos.
"""
import csv
import hashlib
import json
import logging
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from floquet_lab import __version__

logger = logging.getLogger(__name__)


def config_hash(config: Mapping) -> str:
    """Calcula o hash curto de uma configuração validada.

    Args:
        config: Dicionário serializável em JSON.

    Returns:
        Os 16 primeiros dígitos hexadecimais do SHA-256 do JSON canônico.
    """
    canonico = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonico.encode("utf-8")).hexdigest()[:16]


def build_metadata(seed: int, config: Mapping, figura: str) -> dict:
    """Monta o cabeçalho de metadados comum a todos os artefatos."""
    return {
        "versao": __version__,
        "semente": seed,
        "config_hash": config_hash(config),
        "figura": figura,
    }


def _formatar(valor) -> str:
    if isinstance(valor, (bool, np.bool_)):
        return str(bool(valor)).lower()
    if isinstance(valor, (int, np.integer)):
        return str(int(valor))
    if isinstance(valor, (float, np.floating)):
        return f"{float(valor):.12g}"
    return str(valor)


def para_json(valor):
    """Converte arrays e escalares do numpy em tipos nativos do JSON."""
    if isinstance(valor, np.ndarray):
        return [para_json(v) for v in valor.tolist()]
    if isinstance(valor, (np.integer,)):
        return int(valor)
    if isinstance(valor, (np.floating,)):
        return float(valor)
    if isinstance(valor, (np.bool_,)):
        return bool(valor)
    if isinstance(valor, Mapping):
        return {str(k): para_json(v) for k, v in valor.items()}
    if isinstance(valor, (list, tuple)):
        return [para_json(v) for v in valor]
    if isinstance(valor, Path):
        return str(valor)
    return valor


def write_csv(
    caminho: Path,
    cabecalho: Sequence[str],
    linhas: Iterable[Sequence],
    metadados: Mapping,
) -> Path:
    """Grava uma tabela CSV precedida por linhas de metadados `# chave=valor`.

    Args:
        caminho: Arquivo de destino; diretórios são criados se necessário.
        cabecalho: Nomes das colunas.
        linhas: Sequências de valores, uma por linha.
        metadados: Pares gravados como comentários no topo do arquivo.

    Returns:
        O caminho gravado.
    """
    caminho = Path(caminho)
    caminho.parent.mkdir(parents=True, exist_ok=True)
    with caminho.open("w", newline="", encoding="utf-8") as arquivo:
        for chave in sorted(metadados):
            arquivo.write(f"# {chave}={metadados[chave]}\n")
        escritor = csv.writer(arquivo, lineterminator="\n")
        escritor.writerow(cabecalho)
        for linha in linhas:
            escritor.writerow([_formatar(v) for v in linha])
    logger.debug("Tabela gravada em %s", caminho)
    return caminho


def write_json(caminho: Path, conteudo: Mapping, metadados: Mapping) -> Path:
    """Grava um resumo JSON com o bloco `metadados` embutido."""
    caminho = Path(caminho)
    caminho.parent.mkdir(parents=True, exist_ok=True)
    documento = {"metadados": dict(metadados), "resultado": para_json(conteudo)}
    caminho.write_text(
        json.dumps(documento, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    logger.debug("Resumo gravado em %s", caminho)
    return caminho
