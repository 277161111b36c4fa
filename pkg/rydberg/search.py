"""Busca de parâmetros de pulso para a família G3(θ).

Cada ponto da grade é otimizado por Nelder–Mead sobre os cinco parâmetros
a partir de várias sementes. Na varredura por continuação a solução do θ
anterior entra como primeira semente do seguinte.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from rydberg.blockade import BlockadeBasis, PulseParams, blockade_basis, compose_g3, gate_fidelity

logger = logging.getLogger(__name__)

FIDELITY_THRESHOLD = 1e-6


@dataclass
class PulseSolution:
    theta: float
    params: PulseParams
    fidelity: float
    leakage: float
    converged: bool

    @property
    def infidelity(self) -> float:
        return 1.0 - self.fidelity

    def row(self) -> dict:
        return {
            "theta": self.theta,
            "delta1": self.params.delta1,
            "delta2": self.params.delta2,
            "tau1": self.params.tau1,
            "tau2": self.params.tau2,
            "phi": self.params.phi,
            "infidelity": self.infidelity,
            "leakage": self.leakage,
        }


def random_seeds(n: int, rng: np.random.Generator) -> list:
    """Sementes com Δ ∈ [−2, 2], τ ∈ [0.1, 1.5] e φ ∈ (−π, π]."""
    sementes = []
    for _ in range(n):
        d1, d2 = rng.uniform(-2.0, 2.0, size=2)
        t1, t2 = rng.uniform(0.1, 1.5, size=2)
        sementes.append(PulseParams(float(d1), float(d2), float(t1), float(t2), float(rng.uniform(-np.pi, np.pi))))
    return sementes


def _infidelity(x, theta: float, basis: BlockadeBasis) -> float:
    return gate_fidelity(compose_g3(PulseParams.from_vector(x), basis), theta, basis).infidelity


def _validate_theta(theta: float) -> None:
    if not 0.0 < theta <= np.pi / 4 + 1e-12:
        raise ValueError(f"θ = {theta:g} fora de (0, π/4].")


def find_pulse(
    theta: float,
    seeds=None,
    n_seeds: int = 8,
    rng: np.random.Generator | None = None,
    threshold: float = FIDELITY_THRESHOLD,
    max_iter: int = 4000,
) -> PulseSolution:
    """Melhor pulso entre as buscas locais partindo de cada semente.

    Uma solução acima do limiar de infidelidade é devolvida com
    `converged=False` e registrada em log, sem exceção.
    """
    _validate_theta(theta)
    base = blockade_basis(3)
    sementes = list(seeds) if seeds is not None else random_seeds(n_seeds, rng or np.random.default_rng(0))
    if not sementes:
        raise ValueError("É preciso ao menos uma semente.")
    melhor_x, melhor = None, np.inf
    for semente in sementes:
        resultado = optimize.minimize(
            _infidelity,
            semente.as_vector(),
            args=(theta, base),
            method="Nelder-Mead",
            options={"maxiter": max_iter, "xatol": 1e-10, "fatol": 1e-13, "adaptive": True},
        )
        if resultado.fun < melhor:
            melhor_x, melhor = resultado.x, float(resultado.fun)
        if melhor < threshold:
            break
    params = PulseParams.from_vector(melhor_x)
    avaliacao = gate_fidelity(compose_g3(params, base), theta, base)
    convergiu = avaliacao.infidelity < threshold
    if not convergiu:
        logger.warning("θ=%.4f: melhor infidelidade %.2e acima do limiar %.0e.", theta, avaliacao.infidelity, threshold)
    else:
        logger.debug("θ=%.4f: infidelidade %.2e.", theta, avaliacao.infidelity)
    return PulseSolution(float(theta), params, avaliacao.fidelity, avaliacao.leakage, convergiu)


def scan_theta(
    thetas,
    n_seeds: int = 8,
    rng: np.random.Generator | None = None,
    threshold: float = FIDELITY_THRESHOLD,
    fresh_seeds: int = 2,
) -> list:
    """Varredura do maior θ para o menor com continuação.

    O primeiro ponto usa `n_seeds` sementes aleatórias; os demais começam
    pela solução anterior e recorrem a `fresh_seeds` sementes novas.

    Returns:
        Soluções em ordem crescente de θ.
    """
    rng = rng or np.random.default_rng(0)
    ordem = sorted((float(t) for t in thetas), reverse=True)
    solucoes, anterior = [], None
    for theta in ordem:
        sementes = random_seeds(n_seeds, rng) if anterior is None else [anterior.params] + random_seeds(fresh_seeds, rng)
        anterior = find_pulse(theta, seeds=sementes, threshold=threshold)
        solucoes.append(anterior)
    logger.info(
        "Varredura de %d valores de θ: %d abaixo do limiar.", len(solucoes), sum(s.converged for s in solucoes)
    )
    return sorted(solucoes, key=lambda s: s.theta)


def detect_discontinuities(solutions, factor: float = 5.0) -> list:
    """Saltos de parâmetros entre vizinhos muito maiores que o passo típico.

    Returns:
        Tuplas (θ_esquerda, θ_direita, distância) dos saltos maiores que
        `factor` vezes a mediana das distâncias.
    """
    if len(solutions) < 3:
        return []
    ordenadas = sorted(solutions, key=lambda s: s.theta)
    distancias = np.array([a.params.distance(b.params) for a, b in zip(ordenadas, ordenadas[1:])])
    mediana = float(np.median(distancias))
    limite = factor * mediana if mediana > 0 else 0.0
    return [
        (ordenadas[k].theta, ordenadas[k + 1].theta, float(d))
        for k, d in enumerate(distancias)
        if d > limite and d > 0
    ]
