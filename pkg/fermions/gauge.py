"""Campo de calibre Z₂ (u_ij) e operadores de plaqueta.

O valor armazenado para a ligação k é u_ij com i na subrede ímpar; a
leitura na orientação oposta devolve −u_ij.
"""
import itertools
import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np

from core.exceptions import GaugeError, LatticeError
from lattice.choices import LinkType
from lattice.honeycomb import LatticeGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GaugeConfig:
    """Configuração de calibre imutável sobre as ligações de uma rede.

    Attributes:
        lattice: Rede à qual o calibre se refere.
        u: Vetor de ±1, um valor por ligação (orientação ímpar → par).
    """

    lattice: LatticeGraph
    u: np.ndarray

    def __post_init__(self):
        valores = np.asarray(self.u, dtype=float).copy()
        if valores.shape != (self.lattice.n_links,):
            raise GaugeError(
                f"Calibre com {valores.size} valores para {self.lattice.n_links} ligações."
            )
        if not np.all(np.abs(valores) == 1.0):
            raise GaugeError("Valores de calibre devem ser ±1.")
        valores.setflags(write=False)
        object.__setattr__(self, "u", valores)

    def value(self, i: int, j: int) -> float:
        """u_ij na orientação pedida (antissimétrico sob inversão)."""
        ligacao = self.lattice.link_between(i, j)
        if ligacao is None:
            raise GaugeError(f"Não há ligação entre os sítios {i} e {j}.")
        return self.link_value(ligacao, i)

    def link_value(self, link: int, start: int) -> float:
        """u da ligação `link` lida a partir do sítio `start`."""
        valor = self.u[link]
        return valor if self.lattice.links[link].i == start else -valor

    def flipped(self, links) -> "GaugeConfig":
        """Nova configuração com os sinais das ligações indicadas invertidos."""
        novo = self.u.copy()
        for ligacao in links:
            novo[ligacao] = -novo[ligacao]
        return GaugeConfig(self.lattice, novo)


def uniform_gauge(lattice: LatticeGraph) -> GaugeConfig:
    """Calibre com u = +1 em todas as ligações (setor sem vórtices)."""
    return GaugeConfig(lattice, np.ones(lattice.n_links))


def restrict_gauge(gauge: GaugeConfig, lattice: LatticeGraph) -> GaugeConfig:
    """Copia u para `lattice`, cujas ligações são um subconjunto das da rede do calibre.

    Usado ao cortar o toro em cilindro: os sítios coincidem e as ligações
    cortadas são descartadas.

    Raises:
        GaugeError: `lattice` tem uma ligação ausente na rede de origem.
    """
    valores = np.empty(lattice.n_links)
    for k, ligacao in enumerate(lattice.links):
        origem = gauge.lattice.link_between(ligacao.i, ligacao.j)
        if origem is None:
            raise GaugeError(f"A ligação ({ligacao.i}, {ligacao.j}) não existe na rede do calibre.")
        valores[k] = gauge.link_value(origem, ligacao.i)
    return GaugeConfig(lattice, valores)


def measure_plaquette(gauge: GaugeConfig, p: int) -> float:
    """W_p como produto orientado (ímpar → par) dos u ao redor da plaqueta."""
    return float(np.prod(gauge.u[list(gauge.lattice.plaquette_links(p))]))


def plaquette_values(gauge: GaugeConfig) -> np.ndarray:
    """Vetor com W_p de todas as plaquetas."""
    return np.array([measure_plaquette(gauge, p) for p in range(gauge.lattice.n_plaquettes)])


def gauge_transform(gauge: GaugeConfig, site: int, gamma: np.ndarray | None = None):
    """Transformação de calibre local em um sítio.

    Inverte u em todas as ligações incidentes e, se `gamma` for dado,
    conjuga o estado (c_site → −c_site), o que preserva todos os
    observáveis invariantes de calibre.

    Returns:
        O novo calibre, ou o par (calibre, Γ) quando `gamma` é informado.
    """
    novo = gauge.flipped(gauge.lattice.site_links(site))
    if gamma is None:
        return novo
    transformado = np.array(gamma, dtype=float)
    transformado[site, :] *= -1.0
    transformado[:, site] *= -1.0
    return novo, transformado


def toric_gauges(lattice: LatticeGraph) -> tuple:
    """As duas classes de calibre que representam o estado tórico projetado.

    O estado |0…0⟩ projetado no setor sem vórtices corresponde, na
    representação de Majorana, à média sobre duas classes de holonomia:
    g1 inverte as ligações Y a(r, 1)-b(r, 0) em todas as linhas e g2
    inverte ainda todas as ligações Z entre as linhas 0 e L2 − 1.
    """
    if lattice.boundary != "torus":
        raise LatticeError("As classes tóricas só existem no toro.")
    ligacoes_y = [lattice.link_between(lattice.odd_site(r, 1), lattice.even_site(r, 0)) for r in range(lattice.L2)]
    g1 = uniform_gauge(lattice).flipped(ligacoes_y)
    ligacoes_z = [
        lattice.link_between(lattice.odd_site(0, c), lattice.even_site(lattice.L2 - 1, c))
        for c in range(lattice.L1)
    ]
    return g1, g1.flipped(ligacoes_z)


def gauge_classes(lattice: LatticeGraph):
    """Enumera um representante de cada classe de fluxo e holonomia.

    As ligações fora de uma árvore geradora do grafo da rede formam o
    espaço de ciclos; fixar u = +1 na árvore e variar as demais ligações
    percorre todas as classes de equivalência de calibre. O número de
    configurações é 2^(L − N + 1), viável apenas em redes pequenas.

    Yields:
        Um `GaugeConfig` por classe.
    """
    grafo = nx.Graph()
    grafo.add_nodes_from(range(lattice.n_sites))
    for k, ligacao in enumerate(lattice.links):
        grafo.add_edge(ligacao.i, ligacao.j, indice=k)
    arvore = nx.minimum_spanning_tree(grafo)
    na_arvore = {dados["indice"] for _, _, dados in arvore.edges(data=True)}
    livres = [k for k in range(lattice.n_links) if k not in na_arvore]
    logger.debug("Enumerando %d classes de calibre.", 2 ** len(livres))
    base = uniform_gauge(lattice)
    for escolha in itertools.product((False, True), repeat=len(livres)):
        yield base.flipped([k for k, inverter in zip(livres, escolha) if inverter])


def z_link_of(lattice: LatticeGraph, site: int):
    """Ligação Z do sítio, ou None na borda do cilindro."""
    return lattice.site_link(site, LinkType.Z)
