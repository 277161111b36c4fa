"""Átomos com níveis {0, 1, r} sob bloqueio de Rydberg perfeito.

Unidades: frequências em Ω e durações em 2π/Ω, de modo que um pulso de
duração τ é exp(−i 2π τ H). O pulso acopla 1 ↔ r em todos os átomos com

    ⟨r|H|1⟩ = (1/2) e^{−iφ},  ⟨r|H|r⟩ = −Δ,

e estados com dois ou mais átomos em r são excluídos da base.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import linalg, optimize

logger = logging.getLogger(__name__)

LEVELS = ("0", "1", "r")


@dataclass(frozen=True)
class BlockadeBasis:
    """Estados permitidos de `n_atoms` átomos, como cadeias como "01r".

    Attributes:
        states: Estados em ordem lexicográfica de (0, 1, r).
        qubit_states: Estados sem r em ordem binária, átomo 0 mais significativo.
    """

    n_atoms: int
    states: tuple

    @property
    def dimension(self) -> int:
        return len(self.states)

    @property
    def index(self) -> dict:
        return {estado: k for k, estado in enumerate(self.states)}

    @property
    def qubit_states(self) -> tuple:
        return tuple("".join(bits) for bits in itertools.product("01", repeat=self.n_atoms))

    @property
    def qubit_indices(self) -> np.ndarray:
        indice = self.index
        return np.array([indice[s] for s in self.qubit_states])

    @property
    def rydberg_indices(self) -> np.ndarray:
        return np.array([k for k, s in enumerate(self.states) if "r" in s])


@lru_cache(maxsize=None)
def blockade_basis(n_atoms: int = 3) -> BlockadeBasis:
    """Base com no máximo um átomo em r (dimensão 20 para três átomos)."""
    if n_atoms < 1:
        raise ValueError("É preciso ao menos um átomo.")
    estados = tuple(
        "".join(niveis) for niveis in itertools.product(LEVELS, repeat=n_atoms) if niveis.count("r") <= 1
    )
    return BlockadeBasis(n_atoms, estados)


def pulse_hamiltonian(delta: float, phi: float, basis: BlockadeBasis | None = None) -> np.ndarray:
    """Hamiltoniano hermitiano de um pulso global restrito à base bloqueada."""
    basis = basis or blockade_basis()
    indice = basis.index
    H = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    for k, estado in enumerate(basis.states):
        if "r" in estado:
            H[k, k] = -delta
            continue
        for atomo, nivel in enumerate(estado):
            if nivel != "1":
                continue
            alvo = indice[estado[:atomo] + "r" + estado[atomo + 1:]]
            H[alvo, k] = 0.5 * np.exp(-1j * phi)
            H[k, alvo] = 0.5 * np.exp(1j * phi)
    return H


def pulse_unitary(delta: float, tau: float, phi: float, basis: BlockadeBasis | None = None) -> np.ndarray:
    """R(Δ, τ, φ) = exp(−i 2π τ H(Δ, φ))."""
    return linalg.expm(-2j * np.pi * tau * pulse_hamiltonian(delta, phi, basis))


@dataclass(frozen=True)
class PulseParams:
    """Parâmetros da sequência de três pulsos.

    Attributes:
        delta1: Dessintonia dos pulsos externos.
        delta2: Dessintonia do pulso central.
        tau1: Duração dos pulsos externos.
        tau2: Metade da duração do pulso central.
        phi: Salto de fase.
    """

    delta1: float
    delta2: float
    tau1: float
    tau2: float
    phi: float

    def __post_init__(self):
        if self.tau1 < 0 or self.tau2 < 0:
            raise ValueError(f"Durações negativas: τ1={self.tau1:g}, τ2={self.tau2:g}.")

    def as_vector(self) -> np.ndarray:
        return np.array([self.delta1, self.delta2, self.tau1, self.tau2, self.phi])

    @classmethod
    def from_vector(cls, x) -> "PulseParams":
        """Durações pelo valor absoluto e φ reduzido a (−π, π]."""
        d1, d2, t1, t2, phi = (float(v) for v in x)
        phi = float(np.angle(np.exp(1j * phi)))
        return cls(d1, d2, abs(t1), abs(t2), phi)

    def distance(self, other: "PulseParams") -> float:
        diferenca = self.as_vector() - other.as_vector()
        diferenca[4] = np.angle(np.exp(1j * diferenca[4]))
        return float(np.linalg.norm(diferenca))


def pulse_sequence(params: PulseParams) -> list:
    """Os três pulsos (Δ, τ, φ) na ordem de aplicação."""
    return [
        (params.delta1, params.tau1, 0.0),
        (params.delta2, 2.0 * params.tau2, params.phi),
        (params.delta1, params.tau1, 2.0 * params.phi),
    ]


def compose_g3(params: PulseParams, basis: BlockadeBasis | None = None) -> np.ndarray:
    """G3 = R(Δ1, τ1, 2φ) R(Δ2, 2τ2, φ) R(Δ1, τ1, 0)."""
    basis = basis or blockade_basis()
    U = np.eye(basis.dimension, dtype=complex)
    for delta, tau, phi in pulse_sequence(params):
        U = pulse_unitary(delta, tau, phi, basis) @ U
    return U


def rydberg_populations(params: PulseParams, initial: str, basis: BlockadeBasis | None = None) -> np.ndarray:
    """População em r partindo do estado `initial`, antes e depois de cada pulso."""
    basis = basis or blockade_basis()
    estado = np.zeros(basis.dimension, dtype=complex)
    estado[basis.index[initial]] = 1.0
    rydberg = basis.rydberg_indices
    populacoes = [float(np.sum(np.abs(estado[rydberg]) ** 2))]
    for delta, tau, phi in pulse_sequence(params):
        estado = pulse_unitary(delta, tau, phi, basis) @ estado
        populacoes.append(float(np.sum(np.abs(estado[rydberg]) ** 2)))
    return np.array(populacoes)


def lp_closure_time(delta: float) -> float:
    """τ = 1/√(2 + Δ²): o setor |11⟩ de dois átomos volta ao subespaço de qubits."""
    return float(1.0 / np.sqrt(2.0 + delta**2))


def qubit_block(U: np.ndarray, basis: BlockadeBasis | None = None) -> np.ndarray:
    """Bloco 2ⁿ × 2ⁿ de U no subespaço de qubits."""
    basis = basis or blockade_basis()
    indices = basis.qubit_indices
    return U[np.ix_(indices, indices)]


def z_signs(n_atoms: int) -> np.ndarray:
    """Matriz 2ⁿ × n com os autovalores de Z de cada átomo (|0⟩ → +1)."""
    bits = np.array(list(itertools.product((0, 1), repeat=n_atoms)))
    return 1 - 2 * bits


def target_gate(theta: float, n_atoms: int = 3) -> np.ndarray:
    """Diagonal de e^{iθ Z⊗…⊗Z}."""
    return np.exp(1j * theta * np.prod(z_signs(n_atoms), axis=1))


def average_gate_fidelity(M: np.ndarray, target_diagonal: np.ndarray) -> float:
    """(|Tr(T†M)|² + Tr(M†M)) / (d(d + 1)) para um alvo diagonal T."""
    d = target_diagonal.size
    traco = np.sum(np.conj(target_diagonal) * np.diag(M))
    return float((abs(traco) ** 2 + np.real(np.trace(M.conj().T @ M))) / (d * (d + 1)))


@dataclass
class GateFidelity:
    """Fidelidade no melhor referencial de fases Z locais.

    Attributes:
        fidelity: Fidelidade média maximizada.
        leakage: 1 − Tr(M†M)/2ⁿ, a norma perdida para estados com r.
        phases: Fases α_k de exp(i Σ α_k Z_k) aplicadas após a porta.
        frame_free: Fidelidade sem correção de fases.
    """

    fidelity: float
    leakage: float
    phases: np.ndarray
    frame_free: float

    @property
    def infidelity(self) -> float:
        return 1.0 - self.fidelity


def _initial_phases(M: np.ndarray, target_diagonal: np.ndarray, sinais: np.ndarray) -> np.ndarray:
    fases = np.angle(np.conj(target_diagonal) * np.diag(M))
    projeto = np.column_stack([np.ones(len(fases)), sinais])
    coeficientes, *_ = np.linalg.lstsq(projeto, -fases, rcond=None)
    return coeficientes[1:]


def gate_fidelity(U: np.ndarray, theta: float, basis: BlockadeBasis | None = None) -> GateFidelity:
    """Compara U com e^{iθ ZZZ} a menos de fase global e de fases Z locais.

    A fase global não entra em |Tr(T†M)|²; as fases locais são maximizadas
    com Nelder–Mead a partir do referencial nulo e de um ajuste linear às
    fases da diagonal, e o melhor valor nunca é inferior ao do referencial
    nulo.
    """
    basis = basis or blockade_basis()
    M = qubit_block(U, basis)
    alvo = target_gate(theta, basis.n_atoms)
    sinais = z_signs(basis.n_atoms)

    def negativa(alfa):
        referencial = np.exp(1j * sinais @ alfa)
        return -average_gate_fidelity(referencial[:, None] * M, alvo)

    nulo = np.zeros(basis.n_atoms)
    melhor_x, melhor = nulo, -negativa(nulo)
    livre = melhor
    for inicio in (nulo, _initial_phases(M, alvo, sinais)):
        resultado = optimize.minimize(negativa, inicio, method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-15})
        if -resultado.fun > melhor:
            melhor_x, melhor = resultado.x, float(-resultado.fun)
    perda = 1.0 - float(np.real(np.trace(M.conj().T @ M))) / len(alvo)
    return GateFidelity(melhor, perda, np.asarray(melhor_x), livre)
