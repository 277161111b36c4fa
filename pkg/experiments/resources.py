"""Estimativa de camadas de portas e profundidade ótima da preparação.

Cada etapa do protocolo custa um número de camadas de portas de dois
qubits em função do lado L e da profundidade D do circuito de evolução:

    projeção                6
    preparação              22 + 0,3 L²
    passo de evolução       3D
    leitura                 60D
    modo de borda           28 + 0,3 L² + 30D
    fusão                   28 + 0,3 L² + 12D (L − 1)
    trançamento             28 + 0,3 L² + 12D (9⌊L/3⌋ − 18)

A fidelidade de muitos corpos é modelada por

    F(D, f) = (1 − e^{−A (D − D₀) L^{−α}}) f^{6 L² D}.
"""
import logging
from dataclasses import dataclass

import numpy as np

from anyons.protocols import braiding_steps, braiding_steps_resource_table
from core.exceptions import ResourceStageError
from experiments.choices import ResourceStage
from variational.scaling import VspScalingFit

logger = logging.getLogger(__name__)

DEFAULT_SCALING = VspScalingFit(A=73.0, alpha=2.43, D0=5.0)


def _preparacao(L: int) -> float:
    return 22.0 + 0.3 * L**2


def resource_estimate(stage: str, L: int, D: int) -> float:
    """Camadas de portas da etapa `stage`.

    Raises:
        ResourceStageError: Etapa desconhecida.
        ValueError: L ou D negativos.
    """
    if L < 0 or D < 0:
        raise ValueError("L e D devem ser não negativos.")
    match stage:
        case ResourceStage.PROJECTION:
            return 6.0
        case ResourceStage.STATE_PREP:
            return _preparacao(L)
        case ResourceStage.EVOLUTION_STEP:
            return 3.0 * D
        case ResourceStage.READOUT:
            return 60.0 * D
        case ResourceStage.EDGE_TOTAL:
            return 6.0 + _preparacao(L) + 30.0 * D
        case ResourceStage.FUSION_TOTAL:
            return 6.0 + _preparacao(L) + 12.0 * D * (L - 1)
        case ResourceStage.BRAIDING_TOTAL:
            return 6.0 + _preparacao(L) + 12.0 * D * braiding_steps_resource_table(L)
    raise ResourceStageError(f"Etapa desconhecida: {stage!r}.")


def resource_table(L: int, D: int) -> list:
    """Todas as etapas, mais o trançamento com a contagem da geometria implementada.

    Returns:
        Linhas {stage, layers, source}.
    """
    linhas = [
        {"stage": etapa, "layers": resource_estimate(etapa, L, D), "source": "table"}
        for etapa in ResourceStage.values
    ]
    linhas.append({
        "stage": "braiding-total",
        "layers": 6.0 + _preparacao(L) + 12.0 * D * braiding_steps(L),
        "source": "geometry",
    })
    return linhas


def many_body_fidelity(D, f: float, L: int, scaling: VspScalingFit | None = None):
    """F(D, f); nula para D ≤ D₀."""
    ajuste = scaling or DEFAULT_SCALING
    D = np.asarray(D, dtype=float)
    preparacao = np.where(D > ajuste.D0, 1.0 - np.exp(-ajuste.A * (D - ajuste.D0) * float(L) ** (-ajuste.alpha)), 0.0)
    return preparacao * f ** (6.0 * L**2 * D)


@dataclass
class OptimalDepth:
    depth: int
    fidelity: float
    depths: np.ndarray
    fidelities: np.ndarray


def optimal_depth(f: float, L: int, D_max: int, scaling: VspScalingFit | None = None) -> OptimalDepth:
    """Maximiza F(D, f) sobre os inteiros D ∈ [⌊D₀⌋ + 1, D_max].

    Raises:
        ValueError: f fora de (0, 1] ou D_max abaixo do primeiro D válido.
    """
    if not 0.0 < f <= 1.0:
        raise ValueError(f"Fidelidade de porta fora de (0, 1]: {f:g}.")
    ajuste = scaling or DEFAULT_SCALING
    inicio = int(np.floor(ajuste.D0)) + 1
    if D_max < inicio:
        raise ValueError(f"D_max = {D_max} abaixo de D₀ + 1 = {inicio}.")
    profundidades = np.arange(inicio, D_max + 1)
    fidelidades = many_body_fidelity(profundidades, f, L, ajuste)
    k = int(np.argmax(fidelidades))
    logger.info("f=%.4f, L=%d: D*=%d com F*=%.5f", f, L, profundidades[k], fidelidades[k])
    return OptimalDepth(int(profundidades[k]), float(fidelidades[k]), profundidades, fidelidades)
