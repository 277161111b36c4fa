"""Testes do harness de experimentos.
Esta suíte valida:
- A estimativa de camadas de portas e a profundidade ótima.
- A validação estrita das configurações JSON.
- O comando `simulate`: artefatos, determinismo e o registro de execuções.
"""

import json

import numpy as np
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from core.exceptions import ResourceStageError
from core.io import config_hash
from experiments.choices import ResourceStage, RunStatus
from experiments.models import ExperimentRun
from experiments.resources import many_body_fidelity, optimal_depth, resource_estimate, resource_table
from experiments.serializers import ExperimentConfigSerializer


def gravar_config(tmp_path, dados, nome="config.json"):
    caminho = tmp_path / nome
    caminho.write_text(json.dumps(dados), encoding="utf-8")
    return str(caminho)


# Testes da estimativa de recursos


@pytest.mark.parametrize(
    "etapa, L, D, esperado",
    [
        (ResourceStage.PROJECTION, 10, 4, 6.0),
        (ResourceStage.STATE_PREP, 6, 4, 32.8),
        (ResourceStage.EVOLUTION_STEP, 10, 4, 12.0),
        (ResourceStage.READOUT, 10, 4, 240.0),
        (ResourceStage.EDGE_TOTAL, 10, 4, 178.0),
        (ResourceStage.FUSION_TOTAL, 10, 4, 490.0),
    ],
)
def test_camadas_por_etapa(etapa, L, D, esperado):
    assert resource_estimate(etapa, L, D) == pytest.approx(esperado)


def test_etapa_desconhecida():
    with pytest.raises(ResourceStageError):
        resource_estimate("teleporte", 10, 4)
    with pytest.raises(ValueError):
        resource_estimate(ResourceStage.PROJECTION, -1, 4)


def test_tabela_inclui_as_duas_contagens_de_trancamento():
    linhas = resource_table(12, 2)
    trancamento = {l["source"]: l["layers"] for l in linhas if l["stage"] == "braiding-total"}
    assert trancamento["table"] - trancamento["geometry"] == pytest.approx(12 * 2 * 5)
    assert len(linhas) == len(ResourceStage.values) + 1


def test_profundidade_otima_de_referencia():
    otimo = optimal_depth(0.999, 6, 60)
    assert otimo.depth == 7
    assert otimo.fidelity == pytest.approx(0.186582, abs=1e-4)


def test_portas_perfeitas_usam_a_profundidade_maxima():
    assert optimal_depth(1.0, 6, 30).depth == 30


def test_fidelidade_otima_cai_com_o_tamanho():
    fidelidades = [optimal_depth(0.999, L, 60).fidelity for L in (6, 10, 14)]
    assert fidelidades[0] > fidelidades[1] > fidelidades[2]


def test_fidelidade_nula_abaixo_de_d0():
    assert np.all(many_body_fidelity(np.array([3, 5]), 1.0, 6) == 0.0)
    with pytest.raises(ValueError):
        optimal_depth(1.2, 6, 30)
    with pytest.raises(ValueError):
        optimal_depth(0.99, 6, 5)


# Testes da validação de configurações


def test_configuracao_minima_recebe_padroes():
    serializer = ExperimentConfigSerializer(data={"kind": "resources"})
    assert serializer.is_valid(), serializer.errors
    dados = serializer.validated_data
    assert dados["backend"] == "fermion"
    assert dados["seed"] == 0
    assert dados["parameters"] == {"L": 10, "depth": 4}


def test_chave_desconhecida_e_rejeitada():
    serializer = ExperimentConfigSerializer(data={"kind": "resources", "semente": 3})
    assert not serializer.is_valid()
    assert "semente" in serializer.errors


def test_parametro_desconhecido_e_rejeitado():
    serializer = ExperimentConfigSerializer(data={"kind": "resources", "parameters": {"L": 4, "D": 2}})
    assert not serializer.is_valid()
    assert "parameters" in serializer.errors


def test_backend_nao_suportado():
    serializer = ExperimentConfigSerializer(data={"kind": "resources", "backend": "oracle"})
    assert not serializer.is_valid()
    assert "backend" in serializer.errors
    verificacao = ExperimentConfigSerializer(data={"kind": "oracle-check"})
    assert verificacao.is_valid(), verificacao.errors
    assert verificacao.validated_data["backend"] == "oracle"


@pytest.mark.parametrize(
    "parametros",
    [
        {"L": 6, "separations": [1, 4]},
        {"L": 6, "separations": [1]},
    ],
)
def test_separacoes_invalidas(parametros):
    serializer = ExperimentConfigSerializer(data={"kind": "zero-mode-splitting", "parameters": parametros})
    assert not serializer.is_valid()


def test_oraculo_grande_demais():
    serializer = ExperimentConfigSerializer(data={"kind": "oracle-check", "parameters": {"L1": 4, "L2": 4}})
    assert not serializer.is_valid()


def test_profundidade_alvo_deve_ser_potencia_de_dois():
    serializer = ExperimentConfigSerializer(
        data={"kind": "heff-optimization", "parameters": {"base_depth": 2, "target_depth": 6}}
    )
    assert not serializer.is_valid()


def test_ordem_de_camadas_invalida():
    serializer = ExperimentConfigSerializer(data={"kind": "heating", "parameters": {"order": "XXZ"}})
    assert not serializer.is_valid()


def test_thetas_fora_do_intervalo():
    serializer = ExperimentConfigSerializer(data={"kind": "rydberg-scan", "parameters": {"thetas": [0.1, 1.0]}})
    assert not serializer.is_valid()


def test_hash_ignora_a_ordem_das_chaves():
    assert config_hash({"a": 1, "b": [2, 3]}) == config_hash({"b": [2, 3], "a": 1})
    assert config_hash({"a": 1}) != config_hash({"a": 2})


# Testes do comando simulate


@pytest.mark.django_db
def test_simulate_resources_grava_artefatos(tmp_path):
    saida = tmp_path / "recursos"
    call_command("simulate", gravar_config(tmp_path, {"kind": "resources", "parameters": {"L": 10, "depth": 4}}), "--out", str(saida))
    resumo = json.loads((saida / "summary.json").read_text(encoding="utf-8"))
    assert resumo["resultado"]["fusion-total[table]"] == pytest.approx(490.0)
    assert resumo["metadados"]["semente"] == 0
    assert resumo["metadados"]["figura"] == "gate-layer-estimate"
    tabela = (saida / "resources.csv").read_text(encoding="utf-8").splitlines()
    assert tabela[0].startswith("# config_hash=")
    assert "stage,layers,source" in tabela
    execucao = ExperimentRun.objects.get()
    assert execucao.status == RunStatus.FINISHED
    assert execucao.output_dir == str(saida)
    assert execucao.summary["projection[table]"] == 6.0


@pytest.mark.django_db
def test_simulate_e_deterministico(tmp_path):
    config = gravar_config(
        tmp_path, {"kind": "optimal-depth", "seed": 7, "parameters": {"gate_fidelities": [0.999], "sizes": [6, 10]}}
    )
    call_command("simulate", config, "--out", str(tmp_path / "a"))
    call_command("simulate", config, "--out", str(tmp_path / "b"))
    primeiro = (tmp_path / "a" / "optimal_depth.csv").read_bytes()
    assert primeiro == (tmp_path / "b" / "optimal_depth.csv").read_bytes()
    assert (tmp_path / "a" / "summary.json").read_bytes() == (tmp_path / "b" / "summary.json").read_bytes()
    assert b"0.999,6,7," in primeiro
    assert ExperimentRun.objects.filter(status=RunStatus.FINISHED).count() == 2


@pytest.mark.django_db
def test_simulate_semente_da_linha_de_comando(tmp_path):
    config = gravar_config(tmp_path, {"kind": "resources", "seed": 1})
    call_command("simulate", config, "--seed", "5", "--out", str(tmp_path / "saida"))
    assert ExperimentRun.objects.get().seed == 5


@pytest.mark.django_db
def test_simulate_verificacao_do_oraculo(tmp_path):
    saida = tmp_path / "oraculo"
    call_command(
        "simulate",
        gravar_config(tmp_path, {"kind": "oracle-check", "parameters": {"n_cycles": 2, "times": [0.0, 0.3]}}),
        "--out",
        str(saida),
    )
    resumo = json.loads((saida / "summary.json").read_text(encoding="utf-8"))["resultado"]
    assert resumo["max_deviation"] < 1e-8
    assert ExperimentRun.objects.get().backend == "oracle"


@pytest.mark.django_db
def test_simulate_configuracao_invalida(tmp_path):
    with pytest.raises(CommandError):
        call_command("simulate", gravar_config(tmp_path, {"kind": "resources", "extra": 1}))
    with pytest.raises(CommandError):
        call_command("simulate", str(tmp_path / "inexistente.json"))
    assert not ExperimentRun.objects.exists()


@pytest.mark.django_db
def test_simulate_registra_falha(tmp_path):
    config = gravar_config(tmp_path, {"kind": "fusion", "parameters": {"L": 9}})
    with pytest.raises(CommandError):
        call_command("simulate", config, "--out", str(tmp_path / "fusao"))
    execucao = ExperimentRun.objects.get()
    assert execucao.status == RunStatus.FAILED
    assert execucao.error_message
    assert execucao.finished_at is not None
