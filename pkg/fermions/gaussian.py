"""Estados gaussianos de Majorana: estado fundamental, evolução e sobreposições.

Convenções:
    Γ_ij = (i/2)⟨[c_i, c_j]⟩, de modo que ⟨c_i c_j⟩ = δ_ij − iΓ_ij.
    H = (i/4) Σ A_ij c_i c_j e E = ⟨H⟩ = ¼ Σ_ij A_ij Γ_ij.
    A evolução por um tempo t usa U = exp(−At) e Γ ↦ UᵀΓU.
"""
import logging

import numpy as np
import scipy.linalg as la

from core.conf import escolher
from core.exceptions import DegenerateModesError, GaugeError, PurityError
from fermions.gauge import GaugeConfig
from fermions.pfaffian import antisymmetrize, pfaffian
from lattice.choices import LinkType

logger = logging.getLogger(__name__)

_BLOCO_VAZIO = np.array([[0.0, -1.0], [1.0, 0.0]])


def canonical_form(A: np.ndarray) -> tuple:
    """Forma canônica real de uma matriz antissimétrica.

    Retorna Q ortogonal e ε ≥ 0 tais que QᵀAQ = ⊕_k [[0, ε_k], [−ε_k, 0]],
    com os modos ordenados por energia crescente. Autovalores nulos isolados
    da forma de Schur são agrupados em pares com ε = 0.

    Args:
        A: Matriz N × N real antissimétrica, N par.

    Returns:
        (Q, eps) com Q de dimensão N × N e eps de dimensão N/2.
    """
    A = antisymmetrize(np.asarray(A, dtype=float))
    n = A.shape[0]
    if n % 2:
        raise ValueError("A forma canônica exige dimensão par.")
    T, Z = la.schur(A, output="real")
    blocos, nulos = [], []
    i = 0
    while i < n:
        if i + 1 < n and T[i + 1, i] != 0.0:
            b = 0.5 * (T[i, i + 1] - T[i + 1, i])
            u, v = Z[:, i], Z[:, i + 1]
            if b < 0:
                u, v, b = v, u, -b
            blocos.append((b, u, v))
            i += 2
        else:
            nulos.append(Z[:, i])
            i += 1
    for k in range(0, len(nulos) - 1, 2):
        blocos.append((0.0, nulos[k], nulos[k + 1]))
    blocos.sort(key=lambda bloco: bloco[0])
    Q = np.empty((n, n))
    eps = np.empty(n // 2)
    for k, (b, u, v) in enumerate(blocos):
        Q[:, 2 * k] = u
        Q[:, 2 * k + 1] = v
        eps[k] = b
    return Q, eps


def purity_residue(gamma: np.ndarray) -> float:
    """max |Γ² + I|; zero para estados puros."""
    return float(np.max(np.abs(gamma @ gamma + np.eye(gamma.shape[0]))))


def check_pure(gamma: np.ndarray, tol: float | None = None) -> None:
    """Garante Γ² = −I dentro da tolerância de pureza."""
    residuo = purity_residue(gamma)
    if residuo > escolher(tol, "PURITY_TOL"):
        raise PurityError(f"Estado impuro: |Γ² + I| = {residuo:.2e}.")


def reproject(gamma: np.ndarray) -> np.ndarray:
    """Projeta Γ de volta em uma matriz antissimétrica e ortogonal (polar)."""
    ortogonal, _ = la.polar(antisymmetrize(gamma))
    return antisymmetrize(ortogonal)


def parity(gamma: np.ndarray) -> int:
    """Paridade fermiônica de um estado puro: o sinal de Pf(Γ)."""
    return 1 if pfaffian(gamma) >= 0 else -1


def mode_state(Q: np.ndarray, ocupados) -> np.ndarray:
    """Estado gaussiano com os modos `ocupados` da base canônica Q preenchidos."""
    n = Q.shape[0]
    bloco = np.zeros((n, n))
    for k in range(n // 2):
        sinal = -1.0 if k in ocupados else 1.0
        bloco[2 * k:2 * k + 2, 2 * k:2 * k + 2] = sinal * _BLOCO_VAZIO
    return antisymmetrize(Q @ bloco @ Q.T)


def ground_state(
    A: np.ndarray,
    occupations=None,
    parity_sector: int | None = None,
    zero_tol: float | None = None,
) -> np.ndarray:
    """Estado fundamental gaussiano de A.

    Args:
        A: Matriz do Hamiltoniano.
        occupations: Índices de modos a ocupar. Obrigatório quando há modos
            com energia abaixo de `zero_tol`; uma lista vazia escolhe todos
            vazios.
        parity_sector: Se informado (±1), devolve o estado de menor energia
            com essa paridade, ocupando o modo mais baixo quando necessário.
        zero_tol: Limiar de modo degenerado; padrão ZERO_MODE_TOL.

    Returns:
        Γ puro, com energia −½ Σ ε_k quando nenhum modo é ocupado.

    Raises:
        DegenerateModesError: Modos quase nulos sem ocupação explícita.
    """
    Q, eps = canonical_form(A)
    degenerados = np.flatnonzero(eps < escolher(zero_tol, "ZERO_MODE_TOL"))
    if degenerados.size and occupations is None and parity_sector is None:
        raise DegenerateModesError(degenerados.tolist(), eps[degenerados].tolist())
    ocupados = set() if occupations is None else {int(k) for k in occupations}
    gamma = mode_state(Q, ocupados)
    if parity_sector is not None and parity(gamma) != parity_sector:
        ocupados ^= {0}
        gamma = mode_state(Q, ocupados)
    return gamma


def excite_mode(gamma: np.ndarray, A: np.ndarray, k: int) -> np.ndarray:
    """Inverte a ocupação do modo k de A no estado Γ.

    Aplica o Majorana d_{2k} = Σ_i Q_{i,2k} c_i, que é uma reflexão de
    Householder na direção q = Q[:, 2k].
    """
    Q, eps = canonical_form(A)
    if not 0 <= k < eps.size:
        raise ValueError(f"Modo {k} inexistente; há {eps.size} modos.")
    q = Q[:, 2 * k]
    R = np.eye(gamma.shape[0]) - 2.0 * np.outer(q, q)
    return antisymmetrize(R @ gamma @ R)


def energy(gamma: np.ndarray, A: np.ndarray) -> float:
    """Valor esperado ⟨H⟩ = ¼ Σ A_ij Γ_ij."""
    if gamma.shape != A.shape:
        raise ValueError(f"Dimensões incompatíveis: Γ {gamma.shape}, A {A.shape}.")
    return 0.25 * float(np.einsum("ij,ij->", A, gamma))


def propagator(A: np.ndarray, t: float) -> np.ndarray:
    """U = exp(−At), re-projetada na variedade ortogonal quando UᵀU se afasta de I."""
    U = la.expm(-np.asarray(A, dtype=float) * t)
    if np.max(np.abs(U.T @ U - np.eye(U.shape[0]))) <= 1e-13:
        return U
    ortogonal, _ = la.polar(U)
    return ortogonal


def conjugate(gamma: np.ndarray, U: np.ndarray) -> np.ndarray:
    """Γ ↦ UᵀΓU."""
    return antisymmetrize(U.T @ gamma @ U)


def evolve(gamma: np.ndarray, A: np.ndarray, t: float) -> np.ndarray:
    """Evolui Γ sob A por um tempo t."""
    if gamma.shape != A.shape:
        raise ValueError(f"Dimensões incompatíveis: Γ {gamma.shape}, A {A.shape}.")
    if t == 0:
        return np.array(gamma, dtype=float)
    return conjugate(gamma, propagator(A, t))


def overlap(gamma1: np.ndarray, gamma2: np.ndarray, tol: float | None = None) -> float:
    """|⟨ψ₁|ψ₂⟩|² = Pf(Γ₁) · Pf[(Γ₁ + Γ₂)/2] para estados puros.

    O fator Pf(Γ₁) = ±1 fixa a orientação; o resultado é limitado a [0, 1]
    e correções de arredondamento acima de 1e−10 são registradas.
    """
    check_pure(gamma1, tol)
    check_pure(gamma2, tol)
    bruto = parity(gamma1) * pfaffian(0.5 * (gamma1 + gamma2))
    valor = min(max(bruto, 0.0), 1.0)
    if abs(valor - bruto) > 1e-10:
        logger.info("Sobreposição limitada de %.3e para %.3e.", bruto, valor)
    return valor


def apply_pauli_quench(gamma: np.ndarray, gauge: GaugeConfig, site: int, pauli: str) -> tuple:
    """Conjugação do estado pelo Pauli σ^α_site = i b^α c.

    O operador inverte u na ligação α do sítio e troca o sinal de c_site,
    isto é, da linha e da coluna `site` de Γ.

    Returns:
        (Γ, calibre) atualizados.

    Raises:
        GaugeError: O sítio não tem ligação do tipo pedido (borda do cilindro).
    """
    if pauli not in LinkType.values:
        raise ValueError(f"Pauli desconhecido: {pauli!r}.")
    ligacao = gauge.lattice.site_link(site, pauli)
    if ligacao is None:
        raise GaugeError(f"O sítio {site} não tem ligação {pauli}.")
    novo = np.array(gamma, dtype=float)
    novo[site, :] *= -1.0
    novo[:, site] *= -1.0
    return novo, gauge.flipped([ligacao])


def link_correlator(gamma: np.ndarray, gauge: GaugeConfig, link: int) -> float:
    """⟨σ^α_i σ^α_j⟩ = −u_ij Γ_ij na ligação α (i ímpar)."""
    ligacao = gauge.lattice.links[link]
    return float(-gauge.u[link] * gamma[ligacao.i, ligacao.j])
