"""Topologia da rede hexagonal (favo de mel) usada por todos os módulos.

Convenção de índices:
    A célula (r, c), com 0 ≤ r < L2 (linha) e 0 ≤ c < L1 (coluna), guarda
    dois sítios. O sítio 2·(r·L1 + c) pertence à subrede ímpar e o sítio
    2·(r·L1 + c) + 1 à subrede par. As ligações são, com a = ímpar e b = par:

        X: a(r, c) - b(r, c)
        Y: a(r, c) - b(r, c − 1)
        Z: a(r, c) - b(r − 1, c)

    Geometricamente a rede é um "muro de tijolos": as ligações X e Y formam
    cadeias em zigue-zague ao longo de cada linha e as ligações Z unem linhas
    vizinhas. No cilindro são cortadas as ligações Z entre a linha 0 e a
    linha L2 − 1; a direção periódica é a das colunas.

    A plaqueta (r, c) percorre a(r+1, c), b(r+1, c), a(r+1, c+1), b(r, c+1),
    a(r, c+1), b(r, c) com rótulos Y, Z, X, Y, Z, X.
"""
from dataclasses import dataclass, field
from typing import NamedTuple

from core.exceptions import LatticeError
from lattice.choices import Boundary, LinkType, LINK_TYPES

PLAQUETTE_LABELS = (LinkType.Y, LinkType.Z, LinkType.X, LinkType.Y, LinkType.Z, LinkType.X)


class Link(NamedTuple):
    """Ligação orientada da subrede ímpar (i) para a subrede par (j)."""

    i: int
    j: int
    kind: str


class Plaquette(NamedTuple):
    """Hexágono com seus seis sítios ordenados e rótulos de Pauli."""

    row: int
    col: int
    sites: tuple
    labels: tuple


@dataclass(frozen=True)
class LatticeGraph:
    """Rede hexagonal imutável com ligações tipadas e plaquetas.

    Attributes:
        L1: Número de colunas de células (direção sempre periódica).
        L2: Número de linhas de células.
        boundary: Toro ou cilindro.
        links: Ligações (i ímpar, j par, tipo), na ordem de construção.
        plaquettes: Plaquetas em ordem linha-coluna.
        cut_pairs: Pares (a, b) das ligações Z removidas no cilindro.
    """

    L1: int
    L2: int
    boundary: str
    links: tuple
    plaquettes: tuple
    cut_pairs: tuple = ()
    _link_index: dict = field(default_factory=dict, repr=False, compare=False)
    _site_links: tuple = field(default=(), repr=False, compare=False)
    _link_plaquettes: tuple = field(default=(), repr=False, compare=False)
    _plaquette_index: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_sites(self) -> int:
        return 2 * self.L1 * self.L2

    @property
    def n_links(self) -> int:
        return len(self.links)

    @property
    def n_plaquettes(self) -> int:
        return len(self.plaquettes)

    def odd_site(self, row: int, col: int) -> int:
        """Índice do sítio ímpar da célula (row, col), com índices periódicos."""
        return 2 * ((row % self.L2) * self.L1 + (col % self.L1))

    def even_site(self, row: int, col: int) -> int:
        """Índice do sítio par da célula (row, col), com índices periódicos."""
        return self.odd_site(row, col) + 1

    def cell_of(self, site: int) -> tuple:
        """Retorna (linha, coluna) da célula que contém o sítio."""
        self._check_site(site)
        celula = site // 2
        return divmod(celula, self.L1)

    @staticmethod
    def is_odd(site: int) -> bool:
        """Verdadeiro para sítios da subrede ímpar (índices pares)."""
        return site % 2 == 0

    def site_links(self, site: int) -> tuple:
        """Índices das ligações incidentes no sítio."""
        self._check_site(site)
        return self._site_links[site]

    def link_between(self, i: int, j: int):
        """Índice da ligação entre dois sítios, ou None se não houver."""
        return self._link_index.get((min(i, j), max(i, j)))

    def site_link(self, site: int, kind: str):
        """Ligação do tipo `kind` incidente no sítio, ou None se ausente."""
        for indice in self.site_links(site):
            if self.links[indice].kind == kind:
                return indice
        return None

    def other_end(self, link: int, site: int) -> int:
        """Extremidade da ligação oposta a `site`."""
        ligacao = self.links[link]
        return ligacao.j if ligacao.i == site else ligacao.i

    def link_plaquettes(self, link: int) -> tuple:
        """Plaquetas que contêm a ligação (duas no toro, uma ou duas no cilindro)."""
        return self._link_plaquettes[link]

    def plaquette_index(self, row: int, col: int) -> int:
        """Índice da plaqueta (row, col), com a coluna periódica."""
        chave = (row % self.L2, col % self.L1)
        if chave not in self._plaquette_index:
            raise LatticeError(f"Plaqueta ({row}, {col}) não existe nesta rede.")
        return self._plaquette_index[chave]

    def plaquette(self, p: int) -> Plaquette:
        if not 0 <= p < self.n_plaquettes:
            raise LatticeError(f"Plaqueta {p} fora do intervalo [0, {self.n_plaquettes}).")
        return self.plaquettes[p]

    def plaquette_links(self, p: int) -> tuple:
        """As seis ligações da plaqueta, na ordem de percurso."""
        sitios = self.plaquette(p).sites
        return tuple(self.link_between(sitios[k], sitios[(k + 1) % 6]) for k in range(6))

    def shared_link(self, p: int, q: int):
        """Ligação comum a duas plaquetas vizinhas, ou None."""
        comuns = set(self.plaquette_links(p)) & set(self.plaquette_links(q))
        if len(comuns) != 1:
            return None
        return comuns.pop()

    def plaquette_neighbors(self, p: int) -> tuple:
        """Plaquetas que compartilham uma ligação com `p`."""
        vizinhas = []
        for ligacao in self.plaquette_links(p):
            for q in self.link_plaquettes(ligacao):
                if q != p and q not in vizinhas:
                    vizinhas.append(q)
        return tuple(vizinhas)

    def z_loop(self, row: int) -> list:
        """Laço Z não contrátil: σ^z em todos os sítios de uma linha."""
        operador = []
        for col in range(self.L1):
            operador.append((self.odd_site(row, col), LinkType.Z))
            operador.append((self.even_site(row, col), LinkType.Z))
        return operador

    def y_loop(self, col: int = 0) -> list:
        """Laço Y vertical: σ^y nos dois sítios da célula (r, col) de cada linha."""
        operador = []
        for row in range(self.L2):
            operador.append((self.odd_site(row, col), LinkType.Y))
            operador.append((self.even_site(row, col), LinkType.Y))
        return operador

    def _check_site(self, site: int) -> None:
        if not 0 <= site < self.n_sites:
            raise LatticeError(f"Sítio {site} fora do intervalo [0, {self.n_sites}).")


def build_lattice(L1: int, L2: int, boundary: str = Boundary.TORUS) -> LatticeGraph:
    """Constrói a rede hexagonal L1 × L2.

    Args:
        L1: Colunas de células (≥ 2).
        L2: Linhas de células (≥ 2).
        boundary: `torus` ou `cylinder`.

    Returns:
        A rede com ligações, plaquetas e tabelas de adjacência.

    Raises:
        LatticeError: Dimensões menores que 2 ou contorno desconhecido.
    """
    if L1 < 2 or L2 < 2:
        raise LatticeError(f"A rede exige L1, L2 ≥ 2; recebido ({L1}, {L2}).")
    if boundary not in Boundary.values:
        raise LatticeError(f"Contorno desconhecido: {boundary!r}.")

    def a(r, c):
        return 2 * ((r % L2) * L1 + (c % L1))

    def b(r, c):
        return a(r, c) + 1

    cilindro = boundary == Boundary.CYLINDER
    links, cortes = [], []
    for r in range(L2):
        for c in range(L1):
            links.append(Link(a(r, c), b(r, c), LinkType.X))
            links.append(Link(a(r, c), b(r, c - 1), LinkType.Y))
            if cilindro and r == 0:
                cortes.append((a(r, c), b(r - 1, c)))
            else:
                links.append(Link(a(r, c), b(r - 1, c), LinkType.Z))

    linhas_plaquetas = L2 - 1 if cilindro else L2
    plaquettes = []
    for r in range(linhas_plaquetas):
        for c in range(L1):
            sitios = (a(r + 1, c), b(r + 1, c), a(r + 1, c + 1), b(r, c + 1), a(r, c + 1), b(r, c))
            plaquettes.append(Plaquette(r, c, sitios, PLAQUETTE_LABELS))

    indice_ligacao = {}
    incidencias = [[] for _ in range(2 * L1 * L2)]
    for k, ligacao in enumerate(links):
        indice_ligacao[(min(ligacao.i, ligacao.j), max(ligacao.i, ligacao.j))] = k
        incidencias[ligacao.i].append(k)
        incidencias[ligacao.j].append(k)

    ligacao_plaquetas = [[] for _ in links]
    for p, plaqueta in enumerate(plaquettes):
        for k in range(6):
            u, v = plaqueta.sites[k], plaqueta.sites[(k + 1) % 6]
            ligacao_plaquetas[indice_ligacao[(min(u, v), max(u, v))]].append(p)

    return LatticeGraph(
        L1=L1,
        L2=L2,
        boundary=str(boundary),
        links=tuple(links),
        plaquettes=tuple(plaquettes),
        cut_pairs=tuple(cortes),
        _link_index=indice_ligacao,
        _site_links=tuple(tuple(v) for v in incidencias),
        _link_plaquettes=tuple(tuple(v) for v in ligacao_plaquetas),
        _plaquette_index={(pl.row, pl.col): p for p, pl in enumerate(plaquettes)},
    )


def plaquette_operator(lattice: LatticeGraph, p: int) -> list:
    """Operador de plaqueta W_p como lista ordenada de (sítio, rótulo de Pauli).

    Args:
        lattice: A rede.
        p: Índice da plaqueta.

    Returns:
        Seis pares (sítio, rótulo) no padrão Y, Z, X, Y, Z, X.
    """
    plaqueta = lattice.plaquette(p)
    return list(zip(plaqueta.sites, plaqueta.labels))


def links_of_kind(lattice: LatticeGraph, kind: str) -> list:
    """Índices das ligações de um tipo."""
    return [k for k, ligacao in enumerate(lattice.links) if ligacao.kind == kind]


def lattice_to_dict(lattice: LatticeGraph) -> dict:
    """Descrição serializável em JSON (sítios, ligações e plaquetas)."""
    return {
        "L1": lattice.L1,
        "L2": lattice.L2,
        "boundary": lattice.boundary,
        "n_sites": lattice.n_sites,
        "links": [[ligacao.i, ligacao.j, str(ligacao.kind)] for ligacao in lattice.links],
        "plaquettes": [
            {"row": pl.row, "col": pl.col, "sites": list(pl.sites), "labels": [str(x) for x in pl.labels]}
            for pl in lattice.plaquettes
        ],
        "cut_pairs": [list(par) for par in lattice.cut_pairs],
    }


__all__ = [
    "LINK_TYPES",
    "Link",
    "Plaquette",
    "LatticeGraph",
    "build_lattice",
    "plaquette_operator",
    "links_of_kind",
    "lattice_to_dict",
]
