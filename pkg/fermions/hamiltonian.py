"""Montagem da matriz antissimétrica A do Hamiltoniano de Majorana.

H = (i/4) Σ_ij A_ij c_i c_j, com A_ij = 2 J w u_ij nas ligações e termos de
três corpos 2 K ε u_ik u_kj entre segundos vizinhos i, j via k. O sinal ε
depende da ordem dos tipos das duas ligações do caminho:

    linear: ε = +1 quando o tipo de (i, k) precede o de (k, j) em X < Y < Z.
            Coincide com o ciclo de Trotter XYZ, para o qual K = J²τ.
    cyclic: ε = +1 quando (i, k) → (k, j) segue X → Y → Z → X.
            Coincide com a sequência D = 2 simétrica.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

import numpy as np

from core.exceptions import GaugeError, HamiltonianError
from fermions.gaussian import canonical_form
from fermions.gauge import GaugeConfig, gauge_classes
from lattice.choices import LINK_TYPES
from lattice.honeycomb import LatticeGraph

logger = logging.getLogger(__name__)

THREE_BODY_CONVENTIONS = ("linear", "cyclic")


def three_body_sign(first: str, second: str, convention: str = "linear") -> int:
    """Sinal ε do caminho cujas ligações têm tipos `first` e depois `second`."""
    a, b = LINK_TYPES.index(first), LINK_TYPES.index(second)
    if a == b:
        raise HamiltonianError("Um caminho de segundos vizinhos usa dois tipos distintos.")
    if convention == "linear":
        return 1 if a < b else -1
    if convention == "cyclic":
        return 1 if (a + 1) % 3 == b else -1
    raise HamiltonianError(f"Convenção de três corpos desconhecida: {convention!r}.")


@dataclass(frozen=True)
class Couplings:
    """Acoplamentos do modelo de Kitaev com termo de três corpos.

    Attributes:
        J: Acoplamento de dois corpos (unidade de energia).
        K: Coeficiente dos termos que quebram reversão temporal.
        bond_scale: Fator multiplicativo de J por ligação; −1 marca uma
            ligação invertida e valores intermediários aparecem durante rampas.
        k_overrides: K explícito por tripla (i, k, j), em qualquer orientação.
        three_body: Convenção de sinal (`linear` ou `cyclic`).
    """

    J: float = 1.0
    K: float = 0.0
    bond_scale: Mapping[int, float] = field(default_factory=dict)
    k_overrides: Mapping[tuple, float] = field(default_factory=dict)
    three_body: str = "linear"

    def __post_init__(self):
        if not np.isfinite(self.J) or not np.isfinite(self.K):
            raise HamiltonianError("Acoplamentos devem ser finitos.")
        if self.three_body not in THREE_BODY_CONVENTIONS:
            raise HamiltonianError(f"Convenção de três corpos desconhecida: {self.three_body!r}.")
        for valor in list(self.bond_scale.values()) + list(self.k_overrides.values()):
            if not np.isfinite(valor):
                raise HamiltonianError("Fatores de ligação e K locais devem ser finitos.")

    @property
    def flipped_bonds(self) -> frozenset:
        """Conjunto explícito das ligações com J invertido."""
        return frozenset(k for k, escala in self.bond_scale.items() if escala < 0)

    def weights(self, n_links: int) -> np.ndarray:
        """Vetor w com o fator de cada ligação (1 onde não há modificação)."""
        w = np.ones(n_links)
        for ligacao, escala in self.bond_scale.items():
            if not 0 <= ligacao < n_links:
                raise HamiltonianError(f"Fator definido para ligação inexistente {ligacao}.")
            w[ligacao] = escala
        return w

    def with_scale(self, link: int, value: float) -> "Couplings":
        """Cópia com o fator da ligação `link` substituído."""
        escalas = dict(self.bond_scale)
        if value == 1.0:
            escalas.pop(link, None)
        else:
            escalas[link] = value
        return replace(self, bond_scale=escalas)

    def signature(self) -> tuple:
        """Identificador da configuração de ligações modificadas."""
        return tuple(sorted((k, float(v)) for k, v in self.bond_scale.items()))


def _check_gauge(lattice: LatticeGraph, gauge: GaugeConfig) -> None:
    if gauge.lattice is not lattice and gauge.lattice.links != lattice.links:
        raise GaugeError("O calibre foi construído para outra rede.")


def _check_overrides(lattice: LatticeGraph, couplings: Couplings) -> None:
    for tripla in couplings.k_overrides:
        i, k, j = tripla
        if lattice.link_between(i, k) is None or lattice.link_between(k, j) is None:
            raise HamiltonianError(f"Termo K {tripla} referencia ligações ausentes.")


def three_body_paths(lattice: LatticeGraph, exclude_links: Iterable[int] = ()):
    """Percorre os caminhos ordenados i -l1- k -l2- j de segundos vizinhos.

    Yields:
        Tuplas (i, k, j, l1, l2).
    """
    excluidas = set(exclude_links)
    for k in range(lattice.n_sites):
        incidentes = [l for l in lattice.site_links(k) if l not in excluidas]
        for l1 in incidentes:
            for l2 in incidentes:
                if l1 == l2:
                    continue
                i, j = lattice.other_end(l1, k), lattice.other_end(l2, k)
                if i != j:
                    yield i, k, j, l1, l2


def assemble_hamiltonian(
    lattice: LatticeGraph,
    gauge: GaugeConfig,
    couplings: Couplings,
    exclude_links: Iterable[int] = (),
) -> np.ndarray:
    """Monta a matriz A (N × N, real e antissimétrica).

    Args:
        lattice: A rede.
        gauge: Valores u de todas as ligações.
        couplings: J, K, fatores por ligação e K locais.
        exclude_links: Ligações omitidas junto com os termos K que as usam
            (empregado quando a ligação é tratada dinamicamente).

    Returns:
        A matriz A com Aᵀ = −A exatamente.

    Raises:
        GaugeError: Calibre de outra rede.
        HamiltonianError: Termo K referenciando ligações ausentes.
    """
    _check_gauge(lattice, gauge)
    _check_overrides(lattice, couplings)
    excluidas = set(exclude_links)
    n = lattice.n_sites
    w = couplings.weights(lattice.n_links)
    A = np.zeros((n, n))

    for indice, ligacao in enumerate(lattice.links):
        if indice in excluidas:
            continue
        valor = 2.0 * couplings.J * w[indice] * gauge.u[indice]
        A[ligacao.i, ligacao.j] += valor
        A[ligacao.j, ligacao.i] -= valor

    if couplings.K != 0.0 or couplings.k_overrides:
        for i, k, j, l1, l2 in three_body_paths(lattice, excluidas):
            coeficiente = couplings.k_overrides.get(
                (i, k, j), couplings.k_overrides.get((j, k, i), couplings.K * w[l1] * w[l2])
            )
            if coeficiente == 0.0:
                continue
            sinal = three_body_sign(lattice.links[l1].kind, lattice.links[l2].kind, couplings.three_body)
            A[i, j] += 2.0 * coeficiente * sinal * gauge.link_value(l1, i) * gauge.link_value(l2, k)
    return 0.5 * (A - A.T)


def bloch_spectrum(L1: int, L2: int, J: float = 1.0, K: float = 0.0, three_body: str = "linear") -> np.ndarray:
    """Energias de modo do toro uniforme sem vórtices, no espaço de momentos.

    Oráculo independente de `assemble_hamiltonian`: ε(k) = √(|f|² + g²) com
    |f| = 2J|1 + e^{ik₁} + e^{ik₂}| e g = 4K S(k), onde S depende da convenção.

    Returns:
        As L1·L2 energias em ordem crescente.
    """
    k1 = 2.0 * np.pi * np.arange(L1) / L1
    k2 = 2.0 * np.pi * np.arange(L2) / L2
    K1, K2 = np.meshgrid(k1, k2, indexing="ij")
    f = 2.0 * J * np.abs(1.0 + np.exp(1j * K1) + np.exp(1j * K2))
    if three_body == "linear":
        S = np.sin(K1) + np.sin(K2) + np.sin(K2 - K1)
    elif three_body == "cyclic":
        S = np.sin(K1) - np.sin(K2) + np.sin(K2 - K1)
    else:
        raise HamiltonianError(f"Convenção de três corpos desconhecida: {three_body!r}.")
    return np.sort(np.sqrt(f**2 + (4.0 * K * S) ** 2).ravel())


@dataclass(frozen=True, eq=False)
class LayerGenerators:
    """Geradores das camadas X, Y e Z na representação de Majorana.

    Cada gerador G_α tem entradas 2u nas ligações do tipo α e é soma direta
    de blocos 2 × 2; essa é a sua decomposição canônica, de modo que a
    exponencial de qualquer combinação de ângulos por ligação é analítica.

    Attributes:
        lattice: A rede.
        gauge: O calibre usado.
        pairs: Por tipo, (índices i, índices j, índices de ligação, u).
    """

    lattice: LatticeGraph
    gauge: GaugeConfig
    pairs: dict

    def generator(self, kind: str, scales: np.ndarray | None = None) -> np.ndarray:
        """Matriz densa Σ_l s_l G_l sobre as ligações do tipo `kind`."""
        i, j, ligacoes, u = self.pairs[kind]
        s = np.ones(len(ligacoes)) if scales is None else np.asarray(scales, dtype=float)
        G = np.zeros((self.lattice.n_sites, self.lattice.n_sites))
        G[i, j] = 2.0 * u * s
        G[j, i] = -2.0 * u * s
        return G

    def reconstruction_error(self, kind: str) -> float:
        """Diferença entre o gerador reconstruído pelos blocos e A(J=1) da camada."""
        i, j, ligacoes, u = self.pairs[kind]
        A = np.zeros((self.lattice.n_sites, self.lattice.n_sites))
        for indice in ligacoes:
            ligacao = self.lattice.links[indice]
            A[ligacao.i, ligacao.j] = 2.0 * self.gauge.u[indice]
            A[ligacao.j, ligacao.i] = -2.0 * self.gauge.u[indice]
        return float(np.max(np.abs(self.generator(kind) - A)))


def layer_generators(lattice: LatticeGraph, gauge: GaugeConfig) -> LayerGenerators:
    """Pré-calcula os blocos das três camadas para o calibre dado."""
    _check_gauge(lattice, gauge)
    pares = {}
    for tipo in LINK_TYPES:
        ligacoes = np.array([k for k, l in enumerate(lattice.links) if l.kind == tipo], dtype=int)
        i = np.array([lattice.links[k].i for k in ligacoes], dtype=int)
        j = np.array([lattice.links[k].j for k in ligacoes], dtype=int)
        pares[tipo] = (i, j, ligacoes, gauge.u[ligacoes].copy())
    return LayerGenerators(lattice=lattice, gauge=gauge, pairs=pares)


def ground_sector_scan(lattice: LatticeGraph, couplings: Couplings) -> list:
    """Energia −½ Σ ε_k do estado fundamental de cada classe de calibre.

    Returns:
        Pares (calibre, energia) ordenados por energia crescente.
    """
    energias = []
    for calibre in gauge_classes(lattice):
        _, eps = canonical_form(assemble_hamiltonian(lattice, calibre, couplings))
        energias.append((calibre, -0.5 * float(np.sum(eps))))
    energias.sort(key=lambda par: par[1])
    logger.info("Menor energia entre %d classes: %.6f", len(energias), energias[0][1])
    return energias
