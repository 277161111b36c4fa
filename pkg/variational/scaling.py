"""Varredura de profundidade da preparação variacional e ajuste de escala

    1 − F = exp(−A L^{−α} (D − D₀)).
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import stats

from core.conf import escolher
from core.exceptions import InsufficientDataError
from fermions.gauge import toric_gauges
from fermions.gaussian import ground_state
from fermions.hamiltonian import Couplings, assemble_hamiltonian, layer_generators
from floquet.circuits import CircuitAngles
from lattice.honeycomb import build_lattice
from variational.costs import VspProblem
from variational.optimizer import OptimizerConfig, optimize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VspScalingFit:
    """Parâmetros do ajuste 1 − F = exp(−A L^{−α}(D − D₀))."""

    A: float
    alpha: float
    D0: float

    def __post_init__(self):
        if not (self.A > 0 and self.alpha > 0):
            raise InsufficientDataError(f"Ajuste degenerado: A={self.A:.3g}, α={self.alpha:.3g}.")

    def infidelity(self, L: float, D: float) -> float:
        return float(np.exp(-self.A * L ** (-self.alpha) * (D - self.D0)))

    def depth_for_fidelity(self, L: float, fidelity: float) -> float:
        """Profundidade em que F atinge `fidelity`."""
        return self.D0 + np.log(1.0 / (1.0 - fidelity)) * L**self.alpha / self.A


def vsp_problem(L: int, couplings: Couplings) -> VspProblem:
    """Do estado tórico projetado (H_Z no calibre g1) ao estado fundamental de H."""
    rede = build_lattice(L, L)
    calibre, _ = toric_gauges(rede)
    geradores = layer_generators(rede, calibre)
    inicial = ground_state(geradores.generator("Z"))
    final = ground_state(assemble_hamiltonian(rede, calibre, couplings))
    return VspProblem(geradores, inicial, final, CircuitAngles(np.zeros((1, 3))))


def fit_vsp_scaling(rows, floor: float | None = None) -> tuple:
    """Ajusta as inclinações por L e depois a lei de potência entre tamanhos.

    Args:
        rows: Linhas (L, D, 1 − F).

    Returns:
        (VspScalingFit, {L: inclinação}).
    """
    piso = escolher(floor, "VSP_FIT_FLOOR")
    tabela = np.asarray(rows, dtype=float)
    tamanhos = sorted(set(tabela[:, 0]))
    if len(tamanhos) < 2:
        raise InsufficientDataError("O ajuste entre tamanhos exige ao menos dois valores de L.")
    inclinacoes, origens = {}, {}
    for L in tamanhos:
        linhas = tabela[tabela[:, 0] == L]
        if len(linhas) < 2:
            raise InsufficientDataError(f"L={L:g} tem menos de duas profundidades.")
        ajuste = stats.linregress(linhas[:, 1], np.log(np.maximum(linhas[:, 2], piso)))
        inclinacoes[int(L)] = float(ajuste.slope)
        origens[int(L)] = float(ajuste.intercept)
    if any(s >= 0 for s in inclinacoes.values()):
        raise InsufficientDataError(f"Inclinações não negativas: {inclinacoes}.")
    Ls = np.array(list(inclinacoes), dtype=float)
    decaimentos = -np.array(list(inclinacoes.values()))
    potencia = stats.linregress(np.log(Ls), np.log(decaimentos))
    D0 = float(np.mean([origens[L] / decaimentos[k] for k, L in enumerate(inclinacoes)]))
    return VspScalingFit(A=float(np.exp(potencia.intercept)), alpha=float(-potencia.slope), D0=D0), inclinacoes


def vsp_depth_scan(sizes, depths, couplings: Couplings, config: OptimizerConfig | None = None) -> tuple:
    """Otimiza a preparação para cada (L, D) e ajusta a lei de escala.

    Returns:
        (linhas (L, D, 1 − F), VspScalingFit ou None quando não há ajuste).
    """
    config = config or OptimizerConfig()
    linhas = []
    for L in sizes:
        problema = vsp_problem(L, couplings)
        for D in depths:
            resultado = optimize(problema, D, config)
            infidelidade = 1.0 + resultado.cost
            linhas.append((int(L), int(D), float(infidelidade)))
            logger.info("VSP L=%d D=%d: 1−F=%.3e", L, D, infidelidade)
    try:
        ajuste, _ = fit_vsp_scaling(linhas)
    except InsufficientDataError as erro:
        logger.warning("Sem ajuste de escala: %s", erro)
        ajuste = None
    return linhas, ajuste


def depth_for_target(rows, L: int, fidelity: float) -> int | None:
    """Menor D da varredura com F ≥ `fidelity` para o tamanho L."""
    candidatos = [D for Lr, D, inf in rows if Lr == L and 1.0 - inf >= fidelity]
    return min(candidatos) if candidatos else None
