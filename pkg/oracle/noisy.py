"""Preparação variacional com ruído de fase nas portas.

Cada realização soma a todos os ângulos do circuito um erro uniforme em
[−δθ, δθ] e mede um observável do estado preparado com leitura ideal. O
ruído preserva a estrutura de férmions livres, então o motor de Majorana
serve de backend em qualquer tamanho.
"""
import logging
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from fermions.gauge import GaugeConfig, measure_plaquette
from fermions.hamiltonian import LayerGenerators
from floquet.circuits import CircuitAngles, apply_circuit

logger = logging.getLogger(__name__)


@dataclass
class NoisyBenchmark:
    """Média e dispersão do observável para uma amplitude de ruído."""

    delta_theta: float
    mean: float
    std: float
    values: np.ndarray

    @property
    def standard_error(self) -> float:
        return float(self.std / np.sqrt(max(len(self.values), 1)))


def noisy_angles(angles: CircuitAngles, delta_theta: float, rng: np.random.Generator, n_links: int, per_link: bool = False) -> CircuitAngles:
    """Ângulos com erro uniforme somado.

    Com `per_link` cada porta recebe um erro próprio; caso contrário o erro
    é global por camada, como uma incerteza no tempo ou na fase do pulso.
    """
    if delta_theta == 0:
        return angles
    if per_link:
        desvios = rng.uniform(-delta_theta, delta_theta, size=(angles.depth, n_links))
        if angles.link_offsets is not None:
            desvios = desvios + angles.link_offsets
        return replace(angles, link_offsets=desvios)
    ruido = rng.uniform(-delta_theta, delta_theta, size=angles.blocks.shape)
    return angles.with_flat((angles.blocks + ruido).ravel())


def logical_readout(gauge: GaugeConfig, plaquette: int, readout_gamma: Callable[[np.ndarray], float]) -> Callable:
    """Observável (1 + ⟨W_p⟩)/2 lido após um protocolo de leitura.

    Args:
        readout_gamma: Função Γ ↦ ⟨W_p⟩ ao fim da leitura (por exemplo, o
            traço do protocolo de quench de `readout`).
    """
    estatico = measure_plaquette(gauge, plaquette)

    def observavel(gamma: np.ndarray) -> float:
        return 0.5 * (1.0 + estatico * readout_gamma(gamma))

    return observavel


def noisy_vsp_benchmark(
    angles: CircuitAngles,
    generators: LayerGenerators,
    gamma_ini: np.ndarray,
    observable: Callable[[np.ndarray], float],
    delta_theta: float,
    n_realizations: int = 100,
    rng: np.random.Generator | None = None,
    per_link: bool = False,
) -> NoisyBenchmark:
    """Média do observável sobre realizações de ruído.

    Args:
        angles: Ângulos ótimos da preparação.
        gamma_ini: Estado inicial do circuito.
        observable: Função Γ ↦ valor, aplicada ao estado preparado.
        delta_theta: Meia largura do ruído uniforme.
        n_realizations: Número de realizações; com δθ = 0 basta uma.
    """
    if delta_theta < 0:
        raise ValueError("A amplitude do ruído deve ser não negativa.")
    if n_realizations < 1:
        raise ValueError("É preciso ao menos uma realização.")
    rng = rng or np.random.default_rng()
    total = 1 if delta_theta == 0 else n_realizations
    valores = np.empty(total)
    for k in range(total):
        perturbados = noisy_angles(angles, delta_theta, rng, generators.lattice.n_links, per_link)
        valores[k] = observable(apply_circuit(gamma_ini, generators, perturbados))
    resultado = NoisyBenchmark(delta_theta, float(np.mean(valores)), float(np.std(valores)), valores)
    logger.info("Ruído δθ=%.3f: média %.4f ± %.4f", delta_theta, resultado.mean, resultado.standard_error)
    return resultado


def noise_scan(angles, generators, gamma_ini, observable, deltas, n_realizations: int = 100, rng=None, per_link: bool = False) -> list:
    """`noisy_vsp_benchmark` para cada δθ, com o mesmo gerador aleatório."""
    rng = rng or np.random.default_rng()
    return [
        noisy_vsp_benchmark(angles, generators, gamma_ini, observable, d, n_realizations, rng, per_link)
        for d in deltas
    ]


def threshold_crossing(deltas, means, level: float = 0.5):
    """Primeiro δθ em que a média cruza `level`, por interpolação linear.

    Returns:
        O δθ interpolado, ou None se a curva não cruza o nível.
    """
    d = np.asarray(deltas, dtype=float)
    m = np.asarray(means, dtype=float)
    for k in range(1, d.size):
        if (m[k - 1] - level) * (m[k] - level) <= 0 and m[k - 1] != m[k]:
            return float(d[k - 1] + (level - m[k - 1]) * (d[k] - d[k - 1]) / (m[k] - m[k - 1]))
    return None
