"""Camadas de portas de dois qubits e ciclos de Floquet no espaço de Majorana.

Uma camada do tipo α com ângulos θ_l aplica e^{iΣ θ_l σ^α σ^α} sobre as
ligações α. No espaço de Majorana ela é U = exp(−Σ θ_l G_l), com um bloco
2 × 2 por ligação:

    [[cos 2θ, −u sin 2θ], [u sin 2θ, cos 2θ]]

Sequências são compostas com o primeiro fator aplicado à esquerda, e o
estado evolui como Γ ↦ UᵀΓU. Uma string de ordem como "XYZ" nomeia o
produto de unitários de spin da esquerda para a direita; o fator mais à
direita (Z) age primeiro.
"""
import logging
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

import numpy as np

from core.exceptions import LatticeError, MissingAnglesError
from fermions.hamiltonian import Couplings, LayerGenerators
from fermions.pfaffian import antisymmetrize
from lattice.choices import LINK_TYPES

logger = logging.getLogger(__name__)

BLOCK_TIME_ORDER = ("Z", "Y", "X")


class Layer(NamedTuple):
    """Uma camada com um ângulo por ligação do tipo `kind`."""

    kind: str
    angles: np.ndarray


def _check_order(order: str) -> None:
    if sorted(order) != sorted(LINK_TYPES):
        raise ValueError(f"Ordem de camadas inválida: {order!r}.")


def layer_angles(generators: LayerGenerators, kind: str, angle, overrides: Mapping[int, float] | None = None) -> np.ndarray:
    """Vetor de ângulos das ligações do tipo `kind`.

    Args:
        generators: Geradores pré-calculados.
        kind: Tipo da camada.
        angle: Ângulo comum ou vetor com um ângulo por ligação do tipo.
        overrides: Ângulos explícitos por índice global de ligação.

    Raises:
        LatticeError: Override em ligação inexistente ou de outro tipo.
    """
    _, _, ligacoes, _ = generators.pairs[kind]
    angulos = np.broadcast_to(np.asarray(angle, dtype=float), ligacoes.shape).copy()
    if overrides:
        posicao = {int(l): k for k, l in enumerate(ligacoes)}
        for ligacao, valor in overrides.items():
            if not 0 <= ligacao < generators.lattice.n_links:
                raise LatticeError(f"Override em ligação inexistente {ligacao}.")
            if ligacao not in posicao:
                raise LatticeError(f"A ligação {ligacao} não é do tipo {kind}.")
            angulos[posicao[ligacao]] = valor
    return angulos


def layer_orthogonal(generators: LayerGenerators, kind: str, angle, overrides: Mapping[int, float] | None = None) -> np.ndarray:
    """Matriz ortogonal exp(−Σ θ_l G_l) de uma camada completa."""
    i, j, _, u = generators.pairs[kind]
    theta = layer_angles(generators, kind, angle, overrides)
    c, s = np.cos(2.0 * theta), u * np.sin(2.0 * theta)
    U = np.eye(generators.lattice.n_sites)
    U[i, i] = c
    U[j, j] = c
    U[i, j] = -s
    U[j, i] = s
    return U


def rotate_gamma(gamma: np.ndarray, generators: LayerGenerators, layer: Layer) -> np.ndarray:
    """Aplica uma camada diretamente sobre Γ, em O(N²).

    As ligações de uma camada são disjuntas, portanto as rotações de linhas
    e colunas podem ser feitas de forma vetorizada.
    """
    i, j, _, u = generators.pairs[layer.kind]
    c = np.cos(2.0 * layer.angles)
    s = u * np.sin(2.0 * layer.angles)
    novo = np.array(gamma, dtype=float)
    linhas_i, linhas_j = novo[i, :].copy(), novo[j, :].copy()
    novo[i, :] = c[:, None] * linhas_i + s[:, None] * linhas_j
    novo[j, :] = -s[:, None] * linhas_i + c[:, None] * linhas_j
    colunas_i, colunas_j = novo[:, i].copy(), novo[:, j].copy()
    novo[:, i] = colunas_i * c + colunas_j * s
    novo[:, j] = -colunas_i * s + colunas_j * c
    return novo


def apply_layer(gamma: np.ndarray, generators: LayerGenerators, kind: str, angle, overrides=None) -> np.ndarray:
    """Γ após uma camada do tipo `kind`."""
    return rotate_gamma(gamma, generators, Layer(kind, layer_angles(generators, kind, angle, overrides)))


def sequence_orthogonal(generators: LayerGenerators, layers) -> np.ndarray:
    """Produto das camadas em ordem temporal (primeira à esquerda)."""
    U = np.eye(generators.lattice.n_sites)
    for camada in layers:
        U = U @ layer_orthogonal(generators, camada.kind, camada.angles)
    return U


def apply_sequence(gamma: np.ndarray, generators: LayerGenerators, layers) -> np.ndarray:
    """Aplica as camadas sobre Γ em ordem temporal."""
    for camada in layers:
        gamma = rotate_gamma(gamma, generators, camada)
    return antisymmetrize(gamma)


def floquet_layers(
    generators: LayerGenerators,
    couplings: Couplings,
    tau: float,
    order: str = "XYZ",
    symmetric: bool = False,
) -> list:
    """Camadas de um período de Trotter, em ordem temporal.

    Cada ligação recebe o ângulo J·τ·w_l. Com `symmetric`, a sequência é
    palindrômica (as duas primeiras camadas da ordem com meio ângulo em
    cada extremidade), o que elimina o termo de primeira ordem.
    """
    if tau <= 0:
        raise ValueError("O passo τ deve ser positivo.")
    _check_order(order)
    w = couplings.weights(generators.lattice.n_links)
    temporal = list(reversed(order))

    def camada(tipo, fator):
        _, _, ligacoes, _ = generators.pairs[tipo]
        return Layer(tipo, fator * couplings.J * tau * w[ligacoes])

    if not symmetric:
        return [camada(tipo, 1.0) for tipo in temporal]
    externas = [camada(tipo, 0.5) for tipo in temporal[:-1]]
    return externas + [camada(temporal[-1], 1.0)] + list(reversed(externas))


def floquet_cycle(
    generators: LayerGenerators,
    couplings: Couplings,
    tau: float,
    order: str = "XYZ",
    symmetric: bool = False,
) -> np.ndarray:
    """Matriz ortogonal de um período do ciclo de Floquet."""
    return sequence_orthogonal(generators, floquet_layers(generators, couplings, tau, order, symmetric))


def orthogonality_residue(U: np.ndarray) -> float:
    """max |UᵀU − I|."""
    return float(np.max(np.abs(U.T @ U - np.eye(U.shape[0]))))


@dataclass(frozen=True, eq=False)
class CircuitAngles:
    """Ângulos de um circuito em camadas de profundidade D.

    Cada bloco b aplica, nesta ordem temporal, as camadas Z, Y e X com os
    ângulos blocks[b] = (θx, θy, θz). O ângulo efetivo da ligação l do tipo t
    no bloco b é override[(b, l)] quando existe e, caso contrário,
    θ_t · bond_scale[l] + link_offsets[b, l].

    Attributes:
        blocks: Matriz D × 3 de ângulos em radianos.
        overrides: Ângulos fixos por (bloco, ligação); não são variacionais.
        bond_scale: Fator por ligação (−1 em ligações invertidas).
        link_offsets: Desvios D × n_links, usados para ruído nas portas.
    """

    blocks: np.ndarray
    overrides: Mapping[tuple, float] = field(default_factory=dict)
    bond_scale: Mapping[int, float] = field(default_factory=dict)
    link_offsets: np.ndarray | None = None

    def __post_init__(self):
        blocos = np.array(self.blocks, dtype=float)
        if blocos.ndim != 2 or blocos.shape[1] != 3 or blocos.shape[0] < 1:
            raise MissingAnglesError(f"Esperado D × 3 ângulos com D ≥ 1; recebido {blocos.shape}.")
        if not np.all(np.isfinite(blocos)):
            raise MissingAnglesError("Ângulos não finitos.")
        for bloco, _ in self.overrides:
            if not 0 <= bloco < blocos.shape[0]:
                raise MissingAnglesError(f"Override no bloco inexistente {bloco}.")
        object.__setattr__(self, "blocks", blocos)
        if self.link_offsets is not None:
            desvios = np.array(self.link_offsets, dtype=float)
            if desvios.ndim != 2 or desvios.shape[0] != blocos.shape[0]:
                raise MissingAnglesError("Os desvios por ligação devem ter uma linha por bloco.")
            object.__setattr__(self, "link_offsets", desvios)

    @property
    def depth(self) -> int:
        return self.blocks.shape[0]

    def flat(self) -> np.ndarray:
        """Vetor x com x[3b + t] = blocks[b, t]."""
        return self.blocks.ravel().copy()

    def with_flat(self, x) -> "CircuitAngles":
        """Cópia com novos ângulos variacionais, mantendo o resto."""
        return CircuitAngles(
            np.asarray(x, dtype=float).reshape(-1, 3),
            overrides=self.overrides,
            bond_scale=self.bond_scale,
            link_offsets=self.link_offsets,
        )

    def overrides_in(self, block: int) -> dict:
        return {l: v for (b, l), v in self.overrides.items() if b == block}


def _check_circuit_links(generators: LayerGenerators, angles: CircuitAngles) -> None:
    n_links = generators.lattice.n_links
    for ligacao in list(angles.bond_scale) + [l for _, l in angles.overrides]:
        if not 0 <= ligacao < n_links:
            raise LatticeError(f"O circuito referencia a ligação inexistente {ligacao}.")
    if angles.link_offsets is not None and angles.link_offsets.shape[1] != n_links:
        raise MissingAnglesError(f"Desvios para {angles.link_offsets.shape[1]} ligações; a rede tem {n_links}.")


def circuit_layers(generators: LayerGenerators, angles: CircuitAngles) -> list:
    """Camadas do circuito em ordem temporal (3D camadas)."""
    _check_circuit_links(generators, angles)
    escala = np.ones(generators.lattice.n_links)
    for ligacao, valor in angles.bond_scale.items():
        escala[ligacao] = valor
    camadas = []
    for bloco in range(angles.depth):
        fixos = angles.overrides_in(bloco)
        for tipo in BLOCK_TIME_ORDER:
            _, _, ligacoes, _ = generators.pairs[tipo]
            theta = angles.blocks[bloco, LINK_TYPES.index(tipo)] * escala[ligacoes]
            if angles.link_offsets is not None:
                theta = theta + angles.link_offsets[bloco, ligacoes]
            for k, ligacao in enumerate(ligacoes):
                if int(ligacao) in fixos:
                    theta[k] = fixos[int(ligacao)]
            camadas.append(Layer(tipo, theta))
    return camadas


def circuit_orthogonal(generators: LayerGenerators, angles: CircuitAngles) -> np.ndarray:
    """Matriz ortogonal total do circuito."""
    return sequence_orthogonal(generators, circuit_layers(generators, angles))


def apply_circuit(gamma: np.ndarray, generators: LayerGenerators, angles: CircuitAngles) -> np.ndarray:
    """Γ após o circuito inteiro."""
    return apply_sequence(gamma, generators, circuit_layers(generators, angles))


def derivative_generator(generators: LayerGenerators, angles: CircuitAngles, block: int, kind: str) -> np.ndarray:
    """Gerador G tal que ∂U_camada/∂θ = −G U_camada para o ângulo (block, kind).

    Ligações com override não dependem do ângulo variacional e ficam fora.
    """
    _, _, ligacoes, _ = generators.pairs[kind]
    escalas = np.array([angles.bond_scale.get(int(l), 1.0) for l in ligacoes])
    fixos = angles.overrides_in(block)
    for k, ligacao in enumerate(ligacoes):
        if int(ligacao) in fixos:
            escalas[k] = 0.0
    return generators.generator(kind, escalas)
