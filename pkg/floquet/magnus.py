"""Gerador efetivo de Floquet e termos de Magnus de primeira ordem.

Para U = exp(−a₁G₁)·…·exp(−a_nG_n) (primeiro fator aplicado à esquerda),

    log U = −Σ a_m G_m + ½ Σ_{m<n} a_m a_n [G_m, G_n] + O(a³).

Os comutadores ligam sítios da mesma subrede (segundos vizinhos), enquanto
os termos de ordem ímpar ligam subredes opostas; por isso os coeficientes
de segunda ordem podem ser lidos por projeção de Frobenius.
"""
import logging

import numpy as np
import scipy.linalg as la

from core.conf import escolher
from core.exceptions import BranchAmbiguityError
from fermions.gauge import GaugeConfig
from fermions.hamiltonian import Couplings, LayerGenerators, assemble_hamiltonian
from fermions.pfaffian import antisymmetrize
from floquet.circuits import Layer, _check_order, floquet_cycle, sequence_orthogonal
from lattice.honeycomb import LatticeGraph

logger = logging.getLogger(__name__)

PAIRS = (("X", "Y"), ("X", "Z"), ("Y", "Z"))


def orthogonal_log(U: np.ndarray, margin: float | None = None) -> np.ndarray:
    """Logaritmo principal antissimétrico de uma matriz ortogonal.

    Usa a forma de Schur real: cada bloco de rotação 2 × 2 contribui com o
    ângulo atan2(b, a).

    Raises:
        BranchAmbiguityError: Autovalor −1 ou ângulo a menos de `margin` de π.
    """
    margem = escolher(margin, "LOG_BRANCH_MARGIN")
    T, Z = la.schur(np.asarray(U, dtype=float), output="real")
    n = T.shape[0]
    L = np.zeros((n, n))
    i = 0
    while i < n:
        if i + 1 < n and T[i + 1, i] != 0.0:
            a = 0.5 * (T[i, i] + T[i + 1, i + 1])
            b = 0.5 * (T[i, i + 1] - T[i + 1, i])
            phi = np.arctan2(b, a)
            if abs(phi) > np.pi - margem:
                raise BranchAmbiguityError(f"Ângulo de rotação {phi:.6f} fora do ramo principal.")
            L[i, i + 1], L[i + 1, i] = phi, -phi
            i += 2
        else:
            if T[i, i] < 0:
                raise BranchAmbiguityError(f"Autovalor −1 no índice {i}: o logaritmo não é único.")
            i += 1
    return antisymmetrize(Z @ L @ Z.T)


def effective_generator(U: np.ndarray, tau: float, margin: float | None = None) -> np.ndarray:
    """A_F = −log(U)/τ, o gerador exato de um período."""
    if tau <= 0:
        raise ValueError("O passo τ deve ser positivo.")
    return -orthogonal_log(U, margin) / tau


def layer_hamiltonians(generators: LayerGenerators, couplings: Couplings) -> dict:
    """A_α = J Σ w_l G_l para cada tipo α."""
    w = couplings.weights(generators.lattice.n_links)
    return {tipo: couplings.J * generators.generator(tipo, w[generators.pairs[tipo][2]]) for tipo in "XYZ"}


def first_order_generator(
    generators: LayerGenerators,
    couplings: Couplings,
    tau: float,
    order: str = "XYZ",
    symmetric: bool = False,
) -> np.ndarray:
    """Previsão de primeira ordem A₀ + (τ/2) Σ_{p antes de q na ordem} [A_p, A_q].

    Para a ordem XYZ isto coincide com `assemble_hamiltonian` com
    K = J²τ na convenção `linear`. Ciclos palindrômicos não têm o termo.
    """
    _check_order(order)
    camadas = layer_hamiltonians(generators, couplings)
    A = sum(camadas.values())
    if symmetric:
        return A
    for m, p in enumerate(order):
        for q in order[m + 1:]:
            A = A + 0.5 * tau * (camadas[p] @ camadas[q] - camadas[q] @ camadas[p])
    return antisymmetrize(A)


def three_body_pattern(lattice: LatticeGraph, gauge: GaugeConfig, convention: str = "linear", bond_scale=None) -> np.ndarray:
    """Matriz A dos termos de três corpos com K = 1 e J = 0."""
    acoplamentos = Couplings(J=0.0, K=1.0, bond_scale=dict(bond_scale or {}), three_body=convention)
    return assemble_hamiltonian(lattice, gauge, acoplamentos)


def extract_three_body(A_eff: np.ndarray, A0: np.ndarray, lattice: LatticeGraph, gauge: GaugeConfig, convention: str = "linear") -> float:
    """Coeficiente K de (A_eff − A₀) projetado no padrão de três corpos."""
    padrao = three_body_pattern(lattice, gauge, convention)
    norma = float(np.sum(padrao * padrao))
    return float(np.sum((A_eff - A0) * padrao)) / norma


def floquet_effective(
    generators: LayerGenerators,
    couplings: Couplings,
    tau: float,
    order: str = "XYZ",
    symmetric: bool = False,
) -> tuple:
    """Gerador exato e previsão de primeira ordem de um ciclo de Floquet.

    Returns:
        (A_F, A_primeira_ordem).
    """
    U = floquet_cycle(generators, couplings, tau, order, symmetric)
    exato = effective_generator(U, tau)
    previsto = first_order_generator(generators, couplings, tau, order, symmetric)
    logger.debug("Resíduo de Magnus em τ=%g: %.3e", tau, np.linalg.norm(exato - previsto, 2))
    return exato, previsto


def d2_pair_coefficients(phi: float, delta: float) -> dict:
    """Coeficientes analíticos de [G_p, G_q] em log U da sequência D = 2."""
    c_xy = phi * (phi - delta)
    return {("X", "Y"): c_xy, ("X", "Z"): phi**2 - 2.0 * phi * delta - delta**2, ("Y", "Z"): c_xy}


def symmetric_d2_delta(phi: float) -> tuple:
    """Raízes de 2φ² − 3φδ − δ² = 0.

    Com qualquer uma delas os três comutadores da sequência D = 2 têm a
    mesma magnitude, e o de [X, Z] tem sinal oposto aos outros dois.

    Returns:
        (δ₊, δ₋) = ((−3 + √17)φ/2, (−3 − √17)φ/2).
    """
    if phi == 0:
        raise ValueError("φ deve ser não nulo.")
    raizes = ((-3.0 + np.sqrt(17.0)) * phi / 2.0, (-3.0 - np.sqrt(17.0)) * phi / 2.0)
    for delta in raizes:
        c = d2_pair_coefficients(phi, delta)
        if not (c[("X", "Y")] > 0 and c[("Y", "Z")] > 0 and c[("X", "Z")] < 0):
            raise ArithmeticError(f"Padrão de sinais inesperado para δ={delta}.")
        if not np.isclose(-c[("X", "Z")], c[("X", "Y")], rtol=1e-10):
            raise ArithmeticError(f"Magnitudes desiguais para δ={delta}.")
    return raizes


def d2_layers(generators: LayerGenerators, phi: float, delta: float) -> list:
    """Sequência X(φ−δ), Y(φ), Z(φ+δ), X(φ+δ), Y(φ), Z(φ−δ), em ordem temporal."""
    angulos = (("X", phi - delta), ("Y", phi), ("Z", phi + delta), ("X", phi + delta), ("Y", phi), ("Z", phi - delta))
    return [Layer(tipo, np.full(len(generators.pairs[tipo][2]), valor)) for tipo, valor in angulos]


def d2_unitary(generators: LayerGenerators, phi: float, delta: float) -> np.ndarray:
    return sequence_orthogonal(generators, d2_layers(generators, phi, delta))


def magnus_pair_coefficients(U: np.ndarray, generators: LayerGenerators) -> dict:
    """Projeta log U em cada comutador [G_p, G_q] (produto de Frobenius).

    Exige L1, L2 ≥ 3, para que cada par de segundos vizinhos seja ligado
    por um único caminho.
    """
    logU = orthogonal_log(U)
    coeficientes = {}
    for p, q in PAIRS:
        Gp, Gq = generators.generator(p), generators.generator(q)
        C = Gp @ Gq - Gq @ Gp
        coeficientes[(p, q)] = float(np.sum(logU * C) / np.sum(C * C))
    return coeficientes
