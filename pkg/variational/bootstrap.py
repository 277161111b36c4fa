"""Bootstrap recursivo: a solução para (τ, D) aplicada duas vezes semeia
a otimização para (2τ, 2D)."""
import logging
from dataclasses import dataclass, replace

import numpy as np

from core.exceptions import ConvergenceError
from fermions.hamiltonian import LayerGenerators
from floquet.circuits import CircuitAngles
from variational.choices import InitMode
from variational.costs import HeffProblem
from variational.optimizer import OptimizerConfig, optimize

logger = logging.getLogger(__name__)


@dataclass
class BootstrapStage:
    tau: float
    depth: int
    cost: float
    iterations: int


@dataclass
class BootstrapResult:
    angles: CircuitAngles
    stages: list


def duplicate_blocks(blocks: np.ndarray) -> np.ndarray:
    """Repete a sequência de blocos: U_D(θ) U_D(θ)."""
    return np.vstack([blocks, blocks])


def recursive_bootstrap(
    generators: LayerGenerators,
    A_target: np.ndarray,
    tau: float,
    base_depth: int,
    target_depth: int,
    config: OptimizerConfig | None = None,
    threshold: float | None = None,
    template: CircuitAngles | None = None,
) -> BootstrapResult:
    """Otimiza em etapas (τ, D), (2τ, 2D), … até `target_depth`.

    Args:
        tau: Passo da primeira etapa.
        base_depth: Profundidade da primeira etapa.
        target_depth: base_depth · 2^k.
        threshold: Custo máximo aceito em cada etapa.
        template: Overrides e fatores por ligação mantidos em todas as etapas.

    Raises:
        ValueError: target_depth não é múltiplo potência de dois de base_depth.
        ConvergenceError: Uma etapa terminou acima de `threshold`.
    """
    razao = target_depth / base_depth
    if base_depth < 1 or razao < 1 or razao != 2 ** int(round(np.log2(razao))):
        raise ValueError(f"{target_depth} não é {base_depth} vezes uma potência de dois.")
    config = config or OptimizerConfig()
    modelo = template or CircuitAngles(np.zeros((1, 3)))
    etapas, x, profundidade, passo, etapa = [], None, base_depth, tau, 0
    while profundidade <= target_depth:
        problema = HeffProblem(generators, A_target, passo, modelo)
        if x is None:
            resultado = optimize(problema, profundidade, config)
        else:
            semente = duplicate_blocks(x.reshape(-1, 3))
            resultado = optimize(problema, profundidade, replace(config, init_mode=InitMode.BOOTSTRAP), semente)
        etapas.append(BootstrapStage(passo, profundidade, resultado.cost, resultado.iterations))
        logger.info("Etapa %d do bootstrap: τ=%g, D=%d, custo=%.3e", etapa, passo, profundidade, resultado.cost)
        if threshold is not None and resultado.cost > threshold:
            raise ConvergenceError(etapa, resultado.cost, threshold)
        x = resultado.x
        profundidade, passo, etapa = 2 * profundidade, 2 * passo, etapa + 1
    return BootstrapResult(modelo.with_flat(x), etapas)


def compare_seeding(
    generators: LayerGenerators,
    A_target: np.ndarray,
    tau: float,
    base_depth: int,
    target_depth: int,
    seeds,
    config: OptimizerConfig | None = None,
) -> dict:
    """Custo final com semente de bootstrap contra a mediana de sementes aleatórias."""
    config = config or OptimizerConfig()
    bootstrap = recursive_bootstrap(generators, A_target, tau, base_depth, target_depth, config)
    tau_final = bootstrap.stages[-1].tau
    problema = HeffProblem(generators, A_target, tau_final, CircuitAngles(np.zeros((1, 3))))
    aleatorios = [optimize(problema, target_depth, replace(config, seed=s)).cost for s in seeds]
    return {
        "bootstrap": bootstrap.stages[-1].cost,
        "random_median": float(np.median(aleatorios)),
        "random": aleatorios,
    }
