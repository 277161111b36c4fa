"""Preparação do setor sem vórtices: projeção, medição de síndromes e
pareamento por linha com strings Z, além do resfriamento dissipativo.

Um σ^z no sítio par b(r, c) inverte apenas W(r, c) e W(r, c − 1), de modo
que strings Z ao longo de uma linha movem vórtices dentro dela.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from core.exceptions import SimulationError, SyndromeParityError
from lattice.honeycomb import LatticeGraph, plaquette_operator
from oracle.statevector import apply_pauli_string, check_capacity, measure_pauli_string

logger = logging.getLogger(__name__)

SYNDROME_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Syndrome:
    """Valores W_p medidos, organizados em uma matriz L2 × L1 (linha, coluna).

    Attributes:
        values: Matriz de ±1.
    """

    values: np.ndarray

    def __post_init__(self):
        valores = np.array(self.values, dtype=int)
        if valores.ndim != 2 or not np.all(np.abs(valores) == 1):
            raise ValueError("A síndrome deve ser uma matriz de ±1.")
        object.__setattr__(self, "values", valores)

    @property
    def row_length(self) -> int:
        return self.values.shape[1]

    def defects(self, row: int) -> list:
        """Colunas com W_p = −1 na linha."""
        return [int(c) for c in np.flatnonzero(self.values[row] == -1)]

    @property
    def vortex_count(self) -> int:
        return int(np.sum(self.values == -1))

    def check_row_parity(self) -> None:
        for linha in range(self.values.shape[0]):
            if len(self.defects(linha)) % 2:
                raise SyndromeParityError(f"Número ímpar de vórtices na linha {linha}.")


def _sector_projector(state: np.ndarray, ops, sign: int) -> np.ndarray:
    return 0.5 * (state + sign * apply_pauli_string(state, ops))


def project_vortex_free(state: np.ndarray, lattice: LatticeGraph) -> tuple:
    """Aplica Π_p (1 + W_p)/2 e renormaliza.

    No toro o produto de todos os W_p é a identidade, então a última
    plaqueta é omitida.

    Returns:
        (estado projetado, probabilidade de sucesso).

    Raises:
        SimulationError: A projeção anula o estado.
    """
    check_capacity(lattice.n_sites)
    plaquetas = range(lattice.n_plaquettes - 1 if lattice.boundary == "torus" else lattice.n_plaquettes)
    projetado = np.array(state, dtype=complex)
    for p in plaquetas:
        projetado = _sector_projector(projetado, plaquette_operator(lattice, p), +1)
    probabilidade = float(np.vdot(projetado, projetado).real)
    if probabilidade < 1e-14:
        raise SimulationError("O estado não tem componente no setor sem vórtices.")
    return projetado / np.sqrt(probabilidade), probabilidade


def syndrome_of(state: np.ndarray, lattice: LatticeGraph) -> Syndrome:
    """Síndrome de um estado com W_p definidos."""
    valores = np.array([measure_pauli_string(state, plaquette_operator(lattice, p)) for p in range(lattice.n_plaquettes)])
    if np.any(np.abs(np.abs(valores) - 1.0) > SYNDROME_TOL):
        raise SimulationError("O estado não é autoestado de todos os W_p.")
    return Syndrome(np.sign(valores).reshape(-1, lattice.L1))


def sample_syndrome(state: np.ndarray, lattice: LatticeGraph, rng: np.random.Generator) -> tuple:
    """Mede todos os W_p em sequência, com colapso.

    Returns:
        (síndrome, estado pós-medição).
    """
    estado = np.array(state, dtype=complex)
    valores = np.empty(lattice.n_plaquettes, dtype=int)
    for p in range(lattice.n_plaquettes):
        operador = plaquette_operator(lattice, p)
        positivo = _sector_projector(estado, operador, +1)
        probabilidade = float(np.vdot(positivo, positivo).real)
        if rng.random() < probabilidade:
            valores[p], estado = 1, positivo / np.sqrt(probabilidade)
        else:
            negativo = estado - positivo
            valores[p], estado = -1, negativo / np.sqrt(1.0 - probabilidade)
    return Syndrome(valores.reshape(-1, lattice.L1)), estado


def ring_distance(a: int, b: int, length: int) -> int:
    d = abs(a - b) % length
    return min(d, length - d)


def pair_row(columns, length: int) -> tuple:
    """Pareamento de custo mínimo de vórtices em um anel.

    Programação dinâmica por intervalos sobre pareamentos sem cruzamento,
    que contêm um ótimo para a distância sobre o anel.

    Returns:
        (custo, lista de pares (c1, c2)).

    Raises:
        SyndromeParityError: Número ímpar de posições.
    """
    pontos = sorted(int(c) for c in columns)
    m = len(pontos)
    if m % 2:
        raise SyndromeParityError(f"Não é possível parear {m} vórtices.")

    @lru_cache(maxsize=None)
    def melhor(i, j):
        if i > j:
            return 0, ()
        opcoes = []
        for k in range(i + 1, j + 1, 2):
            custo_interno, pares_internos = melhor(i + 1, k - 1)
            custo_resto, pares_resto = melhor(k + 1, j)
            custo = ring_distance(pontos[i], pontos[k], length) + custo_interno + custo_resto
            opcoes.append((custo, ((pontos[i], pontos[k]),) + pares_internos + pares_resto))
        return min(opcoes)

    custo, pares = melhor(0, m - 1)
    return custo, list(pares)


def z_string(lattice: LatticeGraph, row: int, c1: int, c2: int) -> list:
    """String Z mínima que inverte W(row, c1) e W(row, c2)."""
    L = lattice.L1
    direto = (c2 - c1) % L
    if direto <= L - direto:
        colunas = [(c1 + 1 + k) % L for k in range(direto)]
    else:
        colunas = [(c2 + 1 + k) % L for k in range(L - direto)]
    return [(lattice.even_site(row, c), "Z") for c in colunas]


class PairingResult(NamedTuple):
    syndrome: Syndrome
    strings: list
    state: np.ndarray


def sample_and_pair(state: np.ndarray, lattice: LatticeGraph, rng: np.random.Generator) -> PairingResult:
    """Mede a síndrome, pareia vórtices por linha e aplica as correções.

    Returns:
        Síndrome, strings Z de correção e o estado corrigido (sem vórtices).
    """
    if lattice.boundary != "torus":
        raise SimulationError("O pareamento por linhas exige o toro.")
    sindrome, estado = sample_syndrome(state, lattice, rng)
    sindrome.check_row_parity()
    strings = []
    for linha in range(lattice.L2):
        _, pares = pair_row(sindrome.defects(linha), lattice.L1)
        for c1, c2 in pares:
            strings.append(z_string(lattice, linha, c1, c2))
    for string in strings:
        estado = apply_pauli_string(estado, string)
    logger.info("Síndrome com %d vórtices corrigida por %d strings.", sindrome.vortex_count, len(strings))
    return PairingResult(sindrome, strings, estado)


def _step_toward(column: int, sink: int, length: int) -> int:
    para_frente = (sink - column) % length
    if para_frente == 0:
        return column
    return (column + 1) % length if para_frente <= length - para_frente else (column - 1) % length


def dissipative_cooling_rounds(syndrome: Syndrome, sink: int) -> list:
    """Rodadas de transporte condicional de vórtices até o sorvedouro.

    Em cada rodada todo vórtice fora do sorvedouro anda uma plaqueta na
    direção mais curta; vórtices na mesma plaqueta se aniquilam aos pares.

    Returns:
        Número de vórtices após cada rodada, começando pela contagem inicial.
    """
    syndrome.check_row_parity()
    L = syndrome.row_length
    if not 0 <= sink < L:
        raise ValueError(f"Coluna do sorvedouro {sink} fora de [0, {L}).")
    linhas = [syndrome.defects(r) for r in range(syndrome.values.shape[0])]
    contagens = [sum(len(v) for v in linhas)]
    while contagens[-1] > 0:
        if len(contagens) > L:
            raise SimulationError("O resfriamento excedeu o limite de rodadas.")
        novas = []
        for vortices in linhas:
            ocupacao = {}
            for coluna in vortices:
                destino = _step_toward(coluna, sink, L)
                ocupacao[destino] = ocupacao.get(destino, 0) ^ 1
            novas.append(sorted(c for c, impar in ocupacao.items() if impar))
        linhas = novas
        contagens.append(sum(len(v) for v in linhas))
    return contagens


def cool_state(state: np.ndarray, lattice: LatticeGraph, sink: int) -> tuple:
    """Resfriamento aplicado a um estado com síndrome definida.

    Cada passo de um vórtice de (r, c) para (r, c ± 1) é um σ^z no sítio
    par entre as duas plaquetas.

    Returns:
        (contagens por rodada, estado final sem vórtices).
    """
    sindrome = syndrome_of(state, lattice)
    contagens = dissipative_cooling_rounds(sindrome, sink)
    L = lattice.L1
    estado = np.array(state, dtype=complex)
    for linha in range(lattice.L2):
        vortices = sindrome.defects(linha)
        while vortices:
            ocupacao = {}
            for coluna in vortices:
                destino = _step_toward(coluna, sink, L)
                if destino != coluna:
                    entre = destino if destino == (coluna + 1) % L else coluna
                    estado = apply_pauli_string(estado, [(lattice.even_site(linha, entre), "Z")])
                ocupacao[destino] = ocupacao.get(destino, 0) ^ 1
            vortices = sorted(c for c, impar in ocupacao.items() if impar)
    return contagens, estado
