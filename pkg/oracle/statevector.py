"""Simulador exato de vetor de estado para redes pequenas.

O qubit q corresponde ao bit q do índice da base (little-endian) e o estado
|0⟩ é o autoestado +1 de σ^z. Uma string de Pauli atua como

    P|s⟩ = i^{n_Y} (−1)^{popcount(s & zmask)} |s ⊕ xmask⟩,

em que xmask marca os sítios com X ou Y e zmask os sítios com Z ou Y.
"""
import logging
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from core.conf import parametro
from core.exceptions import LatticeError, OracleCapacityError
from fermions.hamiltonian import Couplings, three_body_paths, three_body_sign
from lattice.choices import LINK_TYPES
from lattice.honeycomb import LatticeGraph, plaquette_operator

logger = logging.getLogger(__name__)


def check_capacity(n_qubits: int) -> None:
    """Recusa sistemas acima do limite ORACLE_MAX_QUBITS."""
    limite = parametro("ORACLE_MAX_QUBITS")
    if n_qubits > limite:
        raise OracleCapacityError(f"{n_qubits} qubits excedem o limite do oráculo ({limite}).")


@lru_cache(maxsize=8)
def _basis(n_qubits: int) -> np.ndarray:
    indices = np.arange(2**n_qubits, dtype=np.int64)
    indices.setflags(write=False)
    return indices


def zero_state(n_qubits: int) -> np.ndarray:
    """Produto |0…0⟩."""
    check_capacity(n_qubits)
    estado = np.zeros(2**n_qubits, dtype=complex)
    estado[0] = 1.0
    return estado


def n_qubits_of(state: np.ndarray) -> int:
    n = int(state.size).bit_length() - 1
    if 2**n != state.size:
        raise ValueError("O vetor de estado deve ter dimensão 2^N.")
    return n


def pauli_masks(ops, n_qubits: int) -> tuple:
    """Máscaras (xmask, zmask) e número de Y de uma string de Pauli.

    Args:
        ops: Pares (sítio, rótulo) com sítios distintos.
    """
    xmask = zmask = n_y = 0
    vistos = set()
    for sitio, rotulo in ops:
        if not 0 <= sitio < n_qubits:
            raise LatticeError(f"Sítio {sitio} fora do intervalo [0, {n_qubits}).")
        if sitio in vistos:
            raise ValueError(f"Sítio {sitio} repetido na string de Pauli.")
        vistos.add(sitio)
        bit = 1 << int(sitio)
        if rotulo in ("X", "Y"):
            xmask |= bit
        if rotulo in ("Z", "Y"):
            zmask |= bit
        if rotulo == "Y":
            n_y += 1
        elif rotulo not in ("X", "Z"):
            raise ValueError(f"Rótulo de Pauli desconhecido: {rotulo!r}.")
    return xmask, zmask, n_y


def _phases(n_qubits: int, zmask: int, n_y: int) -> np.ndarray:
    sinais = 1 - 2 * (np.bitwise_count(_basis(n_qubits) & zmask) & 1)
    return (1j**n_y) * sinais


def apply_pauli_string(state: np.ndarray, ops) -> np.ndarray:
    """P|ψ⟩ para uma string de Pauli em sítios distintos."""
    n = n_qubits_of(state)
    xmask, zmask, n_y = pauli_masks(ops, n)
    resultado = np.empty_like(state)
    resultado[_basis(n) ^ xmask] = _phases(n, zmask, n_y) * state
    return resultado


def measure_pauli_string(state: np.ndarray, ops) -> float:
    """⟨ψ|P|ψ⟩ (sem colapso)."""
    if not ops:
        return float(np.vdot(state, state).real)
    return float(np.vdot(state, apply_pauli_string(state, ops)).real)


def pauli_rotation(state: np.ndarray, ops, theta: float) -> np.ndarray:
    """e^{iθP}|ψ⟩ = cos θ |ψ⟩ + i sen θ P|ψ⟩."""
    if theta == 0:
        return np.array(state, dtype=complex)
    return np.cos(theta) * state + 1j * np.sin(theta) * apply_pauli_string(state, ops)


def apply_two_body(state: np.ndarray, lattice: LatticeGraph, link: int, pauli: str, theta: float) -> np.ndarray:
    """Porta e^{iθ σ^α_i σ^α_j} na ligação `link`."""
    if not 0 <= link < lattice.n_links:
        raise LatticeError(f"Ligação {link} fora do intervalo [0, {lattice.n_links}).")
    ligacao = lattice.links[link]
    return pauli_rotation(state, [(ligacao.i, pauli), (ligacao.j, pauli)], theta)


def apply_single(state: np.ndarray, site: int, axis: str, theta: float) -> np.ndarray:
    """Rotação de um qubit e^{iθ σ^axis}."""
    return pauli_rotation(state, [(site, axis)], theta)


def apply_spin_layer(state: np.ndarray, lattice: LatticeGraph, kind: str, angle, bond_scale=None) -> np.ndarray:
    """Camada Π_l e^{iθ_l σ^α σ^α} sobre todas as ligações do tipo `kind`."""
    escalas = bond_scale or {}
    for indice, ligacao in enumerate(lattice.links):
        if ligacao.kind == kind:
            theta = angle * escalas.get(indice, 1.0)
            state = pauli_rotation(state, [(ligacao.i, kind), (ligacao.j, kind)], theta)
    return state


def spin_floquet_cycle(state: np.ndarray, lattice: LatticeGraph, couplings: Couplings, tau: float, order: str = "XYZ") -> np.ndarray:
    """Um período de Trotter U_{order[0]} U_{order[1]} U_{order[2]} |ψ⟩."""
    for tipo in reversed(order):
        state = apply_spin_layer(state, lattice, tipo, couplings.J * tau, couplings.bond_scale)
    return state


def g2_gate(theta: float) -> np.ndarray:
    """Matriz 4 × 4 de G₂(θ) = e^{iθ Z⊗Z}."""
    zz = np.array([1.0, -1.0, -1.0, 1.0])
    return np.diag(np.exp(1j * theta * zz))


def pauli_sum(n_qubits: int, terms) -> sp.csr_matrix:
    """Matriz esparsa de Σ coef · P.

    Args:
        terms: Pares (coeficiente real, string de Pauli).
    """
    check_capacity(n_qubits)
    base = _basis(n_qubits)
    linhas, colunas, valores = [], [], []
    for coeficiente, ops in terms:
        xmask, zmask, n_y = pauli_masks(ops, n_qubits)
        linhas.append(base ^ xmask)
        colunas.append(base)
        valores.append(coeficiente * _phases(n_qubits, zmask, n_y))
    dimensao = 2**n_qubits
    if not valores:
        return sp.csr_matrix((dimensao, dimensao), dtype=complex)
    matriz = sp.coo_matrix(
        (np.concatenate(valores), (np.concatenate(linhas), np.concatenate(colunas))),
        shape=(dimensao, dimensao),
    )
    return matriz.tocsr()


def spin_terms(lattice: LatticeGraph, couplings: Couplings) -> list:
    """Termos de Pauli de H = −Σ J w σ^ασ^α + Σ K ε s w w σ^α_i σ^γ_k σ^β_j.

    O sinal s é o de Levi-Civita de (α, β, γ), com α o tipo de (i, k) e β o
    de (k, j); com ele cada termo coincide com o termo K de Majorana.
    """
    w = couplings.weights(lattice.n_links)
    termos = []
    for indice, ligacao in enumerate(lattice.links):
        if w[indice] != 0.0:
            termos.append((-couplings.J * w[indice], [(ligacao.i, ligacao.kind), (ligacao.j, ligacao.kind)]))
    if couplings.K == 0.0 and not couplings.k_overrides:
        return termos
    for i, k, j, l1, l2 in three_body_paths(lattice):
        if i > j:
            continue
        coeficiente = couplings.k_overrides.get(
            (i, k, j), couplings.k_overrides.get((j, k, i), couplings.K * w[l1] * w[l2])
        )
        if coeficiente == 0.0:
            continue
        alfa, beta = lattice.links[l1].kind, lattice.links[l2].kind
        gama = next(t for t in LINK_TYPES if t not in (alfa, beta))
        sinal = three_body_sign(alfa, beta, couplings.three_body) * three_body_sign(alfa, beta, "cyclic")
        termos.append((coeficiente * sinal, [(i, alfa), (k, gama), (j, beta)]))
    return termos


def spin_hamiltonian(lattice: LatticeGraph, couplings: Couplings) -> sp.csr_matrix:
    """Hamiltoniano de spins esparso correspondente a `assemble_hamiltonian`."""
    return pauli_sum(lattice.n_sites, spin_terms(lattice, couplings))


def evolve_state(state: np.ndarray, hamiltonian: sp.csr_matrix, t: float) -> np.ndarray:
    """e^{−iHt}|ψ⟩ por `expm_multiply`."""
    if t == 0:
        return np.array(state, dtype=complex)
    return expm_multiply(-1j * t * hamiltonian, state)


def expectation_value(state: np.ndarray, operator: sp.spmatrix) -> float:
    return float(np.vdot(state, operator @ state).real)


def plaquette_expectation(state: np.ndarray, lattice: LatticeGraph, p: int) -> float:
    """⟨W_p⟩ com W_p = σ^y σ^z σ^x σ^y σ^z σ^x ao redor da plaqueta."""
    return measure_pauli_string(state, plaquette_operator(lattice, p))


def link_correlator_spin(state: np.ndarray, lattice: LatticeGraph, link: int) -> float:
    """⟨σ^α_i σ^α_j⟩ na ligação α."""
    ligacao = lattice.links[link]
    return measure_pauli_string(state, [(ligacao.i, ligacao.kind), (ligacao.j, ligacao.kind)])


def normalize(state: np.ndarray) -> np.ndarray:
    norma = np.linalg.norm(state)
    if norma == 0:
        raise ValueError("Vetor de estado nulo.")
    return state / norma
