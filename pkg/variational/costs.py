"""Funções custo dos circuitos variacionais e seus gradientes analíticos.

O circuito é U = F₁F₂…F_M (camadas em ordem temporal, primeira à esquerda)
e cada ângulo variacional x pertence a uma única camada, com
∂F_m/∂x = −G_m F_m. Escrevendo U = L_m F_m R_m:

    Q_H = ‖U − e^{−Aτ}‖²_F,       ∂Q_H = 2 Tr[F_m R_m Tᵀ L_m G_m]
    Q_VSP = −σ Pf[(Γ_θ + Γ_fin)/2], ∂Q_VSP = −½ σ Pf[…] Tr[W_m [G_m, Γ_m]]

com T = e^{−Aτ}, σ = sinal de Pf(Γ_fin), Γ_m o estado antes da camada m e
W_m = (F_m R_m)(Γ_θ + Γ_fin)^{−1}(F_m R_m)ᵀ.
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from core.exceptions import SingularOverlapError
from fermions.gaussian import check_pure, parity
from fermions.hamiltonian import LayerGenerators
from fermions.pfaffian import antisymmetrize, pfaffian
from floquet.circuits import (
    BLOCK_TIME_ORDER,
    CircuitAngles,
    Layer,
    circuit_layers,
    derivative_generator,
    layer_orthogonal,
    rotate_gamma,
)
from lattice.choices import LINK_TYPES

logger = logging.getLogger(__name__)

SINGULAR_PFAFFIAN = 1e-14


def _parameter_of_layer(m: int) -> tuple:
    """(bloco, tipo, índice em x) da camada m."""
    bloco, posicao = divmod(m, 3)
    tipo = BLOCK_TIME_ORDER[posicao]
    return bloco, tipo, 3 * bloco + LINK_TYPES.index(tipo)


def target_evolution(A_target: np.ndarray, tau: float) -> np.ndarray:
    """T = e^{−Aτ}."""
    return la.expm(-np.asarray(A_target, dtype=float) * tau)


def cost_heff(angles: CircuitAngles, generators: LayerGenerators, A_target: np.ndarray, tau: float) -> float:
    """‖U(θ) − e^{−Aτ}‖²_F."""
    U = np.eye(generators.lattice.n_sites)
    for camada in circuit_layers(generators, angles):
        U = U @ layer_orthogonal(generators, camada.kind, camada.angles)
    diferenca = U - target_evolution(A_target, tau)
    return float(np.sum(diferenca * diferenca))


def grad_cost_heff(angles: CircuitAngles, generators: LayerGenerators, A_target: np.ndarray, tau: float) -> np.ndarray:
    """Gradiente de `cost_heff` em relação a x = angles.flat()."""
    camadas = circuit_layers(generators, angles)
    fatores = [layer_orthogonal(generators, c.kind, c.angles) for c in camadas]
    n = generators.lattice.n_sites
    sufixos = [np.eye(n)]
    for F in reversed(fatores):
        sufixos.append(F @ sufixos[-1])
    sufixos.reverse()
    Tt = target_evolution(A_target, tau).T
    gradiente = np.zeros(3 * angles.depth)
    esquerda = np.eye(n)
    for m, F in enumerate(fatores):
        bloco, tipo, indice = _parameter_of_layer(m)
        G = derivative_generator(generators, angles, bloco, tipo)
        produto = sufixos[m] @ Tt @ esquerda
        gradiente[indice] = 2.0 * float(np.sum(produto.T * G))
        esquerda = esquerda @ F
    return gradiente


def _evolved(gamma: np.ndarray, generators: LayerGenerators, camadas) -> np.ndarray:
    for camada in camadas:
        gamma = rotate_gamma(gamma, generators, camada)
    return antisymmetrize(gamma)


def cost_vsp(angles: CircuitAngles, generators: LayerGenerators, gamma_ini: np.ndarray, gamma_fin: np.ndarray) -> float:
    """−|⟨ψ_fin|U(θ)|ψ_ini⟩|² pela fórmula da Pfaffiana."""
    check_pure(gamma_ini)
    check_pure(gamma_fin)
    gamma_theta = _evolved(gamma_ini, generators, circuit_layers(generators, angles))
    return -parity(gamma_fin) * pfaffian(0.5 * (gamma_theta + gamma_fin))


def grad_cost_vsp(angles: CircuitAngles, generators: LayerGenerators, gamma_ini: np.ndarray, gamma_fin: np.ndarray) -> np.ndarray:
    """Gradiente de `cost_vsp`.

    Raises:
        SingularOverlapError: (Γ_θ + Γ_fin) não invertível, isto é, estados
            exatamente ortogonais.
    """
    camadas = circuit_layers(generators, angles)
    avancados = [np.array(gamma_ini, dtype=float)]
    for camada in camadas:
        avancados.append(rotate_gamma(avancados[-1], generators, camada))
    gamma_theta = antisymmetrize(avancados[-1])
    soma = gamma_theta + gamma_fin
    pf = pfaffian(0.5 * soma)
    if abs(pf) < SINGULAR_PFAFFIAN:
        raise SingularOverlapError("Γ_θ + Γ_fin é singular: os estados são ortogonais.")
    W = la.inv(soma)
    prefator = -0.5 * parity(gamma_fin) * pf
    gradiente = np.zeros(3 * angles.depth)
    for m in range(len(camadas) - 1, -1, -1):
        camada = camadas[m]
        W = rotate_gamma(W, generators, Layer(camada.kind, -camada.angles))
        bloco, tipo, indice = _parameter_of_layer(m)
        G = derivative_generator(generators, angles, bloco, tipo)
        gamma_m = avancados[m]
        comutador = G @ gamma_m - gamma_m @ G
        gradiente[indice] = prefator * float(np.sum(W.T * comutador))
    return gradiente


@dataclass(frozen=True, eq=False)
class HeffProblem:
    """Aproximação de e^{−Aτ} por um circuito de profundidade D.

    Attributes:
        generators: Geradores das camadas no calibre do alvo.
        A_target: Hamiltoniano alvo.
        tau: Tempo de evolução alvo.
        template: Ângulos com os overrides e fatores de ligação do circuito.
    """

    generators: LayerGenerators
    A_target: np.ndarray
    tau: float
    template: CircuitAngles

    def angles(self, x) -> CircuitAngles:
        return self.template.with_flat(x)

    def cost(self, x) -> float:
        return cost_heff(self.angles(x), self.generators, self.A_target, self.tau)

    def gradient(self, x) -> np.ndarray:
        return grad_cost_heff(self.angles(x), self.generators, self.A_target, self.tau)

    def base_profile(self, depth: int) -> np.ndarray:
        """Trotter ingênuo: θ = Jτ/D em todas as camadas."""
        i, j, _, u = self.generators.pairs["X"]
        escala = float(np.mean(np.abs(self.A_target[i, j] * u))) / 2.0
        return np.full((depth, 3), escala * self.tau / depth)


@dataclass(frozen=True, eq=False)
class VspProblem:
    """Preparação variacional de Γ_fin a partir de Γ_ini."""

    generators: LayerGenerators
    gamma_ini: np.ndarray
    gamma_fin: np.ndarray
    template: CircuitAngles

    def angles(self, x) -> CircuitAngles:
        return self.template.with_flat(x)

    def cost(self, x) -> float:
        return cost_vsp(self.angles(x), self.generators, self.gamma_ini, self.gamma_fin)

    def gradient(self, x) -> np.ndarray:
        return grad_cost_vsp(self.angles(x), self.generators, self.gamma_ini, self.gamma_fin)

    def base_profile(self, depth: int) -> np.ndarray:
        """Rampa adiabática digitalizada: Z diminui enquanto X e Y crescem."""
        s = (np.arange(depth) + 0.5) / depth
        passo = np.pi / 8.0
        return np.column_stack([passo * s, passo * s, passo * (1.0 - s)])

    def fidelity(self, x) -> float:
        return -self.cost(x)
