"""Criação e transporte de modos de Majorana por inversão adiabática de J.

Inverter o sinal de J numa ligação, sem tocar em u, produz o mesmo A que
inverter u ali: aparecem estados ligados nas duas plaquetas vizinhas, mas
os valores W_p medidos pelo calibre não mudam. Uma cadeia de ligações
invertidas separa os dois modos das extremidades, e inverter a ligação
comum a duas plaquetas vizinhas move o modo de uma para a outra.
"""
import logging
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy import stats

from core.conf import escolher, parametro
from core.exceptions import GeometryError, InsufficientDataError, LatticeError, MissingAnglesError, StaleFrameError
from fermions.gauge import GaugeConfig, uniform_gauge
from fermions.gaussian import canonical_form, check_pure, evolve, mode_state, overlap, parity
from fermions.hamiltonian import Couplings, assemble_hamiltonian, layer_generators
from floquet.circuits import CircuitAngles, apply_circuit
from lattice.honeycomb import LatticeGraph, build_lattice
from anyons.choices import MOVE_OFFSETS, Backend, Ramp

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOL = 1e-6


def ramp_value(start: float, fraction: float, ramp: str = Ramp.LINEAR) -> float:
    """Fator da ligação na fração `fraction` ∈ [0, 1] da rampa start → −start."""
    if ramp == Ramp.LINEAR:
        return start * (1.0 - 2.0 * fraction)
    if ramp == Ramp.COSINE:
        return start * float(np.cos(np.pi * fraction))
    raise ValueError(f"Rampa desconhecida: {ramp!r}.")


def walk(start: tuple, moves) -> list:
    """Células (linha, coluna) visitadas a partir de `start`, inclusive."""
    celulas = [tuple(start)]
    for passo in moves:
        dr, dc = MOVE_OFFSETS[str(passo)]
        r, c = celulas[-1]
        celulas.append((r + dr, c + dc))
    return celulas


def path_links(lattice: LatticeGraph, cells) -> list:
    """Ligações atravessadas ao percorrer as plaquetas `cells` em ordem.

    Raises:
        GeometryError: Duas células consecutivas não são vizinhas nesta rede.
    """
    try:
        plaquetas = [lattice.plaquette_index(r, c) for r, c in cells]
    except LatticeError as erro:
        raise GeometryError(str(erro)) from erro
    ligacoes = []
    for p, q in zip(plaquetas, plaquetas[1:]):
        ligacao = lattice.shared_link(p, q)
        if ligacao is None:
            raise GeometryError(f"As plaquetas {p} e {q} não compartilham uma ligação.")
        ligacoes.append(ligacao)
    return ligacoes


@dataclass(frozen=True)
class BondPath:
    """Sequência de ligações invertidas uma a uma, em padrão de escada.

    Attributes:
        links: Ligações na ordem de inversão.
        substeps: Subpassos da rampa de cada ligação.
        ramp: Forma da rampa.
    """

    links: tuple
    substeps: int = 20
    ramp: str = Ramp.LINEAR

    def __post_init__(self):
        if self.substeps < 1:
            raise ValueError("Cada ligação exige ao menos um subpasso.")
        if self.ramp not in Ramp.values:
            raise ValueError(f"Rampa desconhecida: {self.ramp!r}.")
        object.__setattr__(self, "links", tuple(int(l) for l in self.links))

    @classmethod
    def from_moves(cls, lattice: LatticeGraph, start: tuple, moves, substeps: int | None = None, ramp: str = Ramp.LINEAR) -> "BondPath":
        return cls(tuple(path_links(lattice, walk(start, moves))), escolher(substeps, "ADIABATIC_SUBSTEPS"), ramp)

    def validate(self, lattice: LatticeGraph) -> None:
        """Ligações consecutivas devem pertencer a uma mesma plaqueta."""
        for a, b in zip(self.links, self.links[1:]):
            if not set(lattice.link_plaquettes(a)) & set(lattice.link_plaquettes(b)):
                raise GeometryError(f"As ligações {a} e {b} não compartilham uma plaqueta.")


def flip_bond_adiabatic(
    gamma: np.ndarray,
    lattice: LatticeGraph,
    gauge: GaugeConfig,
    couplings: Couplings,
    link: int,
    substeps: int | None = None,
    substep_time: float | None = None,
    backend: str = Backend.IDEAL,
    ramp: str = Ramp.LINEAR,
    circuit: CircuitAngles | None = None,
) -> tuple:
    """Leva o fator da ligação `link` de s a −s em `substeps` subpassos.

    No backend ideal cada subpasso evolui sob o Hamiltoniano instantâneo
    por `substep_time`. No backend de circuito cada subpasso aplica uma vez
    o circuito `circuit` com os fatores por ligação instantâneos; os termos
    K que usam a ligação acompanham o sinal por meio de w.

    Returns:
        (Γ, acoplamentos com a ligação invertida).

    Raises:
        LatticeError: Ligação inexistente.
        PurityError: Estado de entrada impuro.
        MissingAnglesError: Backend de circuito sem ângulos otimizados.
    """
    if not 0 <= link < lattice.n_links:
        raise LatticeError(f"Ligação {link} fora do intervalo [0, {lattice.n_links}).")
    if backend not in Backend.values:
        raise ValueError(f"Backend desconhecido: {backend!r}.")
    if backend == Backend.FLOQUET_CIRCUIT and circuit is None:
        raise MissingAnglesError("O backend de circuito exige ângulos base otimizados.")
    check_pure(gamma)
    n = escolher(substeps, "ADIABATIC_SUBSTEPS")
    dt = escolher(substep_time, "ADIABATIC_SUBSTEP_TIME")
    if n < 1:
        raise ValueError("Cada ligação exige ao menos um subpasso.")
    inicial = float(couplings.weights(lattice.n_links)[link])
    geradores = layer_generators(lattice, gauge) if backend == Backend.FLOQUET_CIRCUIT else None
    for k in range(n):
        atual = couplings.with_scale(link, ramp_value(inicial, (k + 0.5) / n, ramp))
        if geradores is None:
            gamma = evolve(gamma, assemble_hamiltonian(lattice, gauge, atual), dt)
        else:
            gamma = apply_circuit(gamma, geradores, replace(circuit, bond_scale=dict(atual.bond_scale)))
    logger.debug("Ligação %d invertida em %d subpassos (%s).", link, n, backend)
    return gamma, couplings.with_scale(link, -inicial)


def transport(gamma, lattice, gauge, couplings, path: BondPath, frame_pairs: int | None = None, frame_parity: int | None = None, **kwargs) -> tuple:
    """Inverte as ligações de `path` em ordem.

    Args:
        frame_pairs: Se informado, registra após cada ligação as
            sobreposições com a base lógica instantânea desse número de pares.
        frame_parity: Paridade do estado, conservada pela evolução; quando
            omitida é calculada uma vez a partir de Γ.

    Returns:
        (Γ, acoplamentos finais, traço de `LogicalOverlaps`).
    """
    path.validate(lattice)
    if frame_pairs == 2 and frame_parity is None:
        frame_parity = parity(gamma)
    traco = []
    for ligacao in path.links:
        gamma, couplings = flip_bond_adiabatic(
            gamma, lattice, gauge, couplings, ligacao, substeps=path.substeps, ramp=path.ramp, **kwargs
        )
        if frame_pairs is not None:
            quadro = build_logical_frame(lattice, gauge, couplings, frame_pairs, parity_sector=frame_parity)
            traco.append(logical_overlaps(gamma, quadro, couplings))
    return gamma, couplings, traco


class LogicalOverlaps(NamedTuple):
    """|⟨0_L|ψ⟩|² e |⟨1_L|ψ⟩|²."""

    zero: float
    one: float

    @property
    def leakage(self) -> float:
        return 1.0 - self.zero - self.one


@dataclass(frozen=True, eq=False)
class LogicalFrame:
    """Estados lógicos instantâneos de uma configuração de ligações.

    Attributes:
        signature: `Couplings.signature()` para a qual a base foi construída.
        gamma0: |0⟩_L, todos os modos vazios.
        gamma1: |1⟩_L, os modos localizados ocupados.
        energies: Energias dos modos localizados.
        separation: Distância entre os modos em plaquetas, quando conhecida.
        shifted: A paridade pedida exigiu um quase-modo ocupado em cada
            estado; |0⟩_L ocupa o modo 0 e |1⟩_L o modo 1.
    """

    signature: tuple
    gamma0: np.ndarray
    gamma1: np.ndarray
    energies: np.ndarray
    separation: int | None = None
    shifted: bool = False

    @property
    def trusted(self) -> bool:
        """Modos afastados o bastante para a degenerescência ser confiável."""
        return self.separation is not None and self.separation >= parametro("FRAME_MIN_SEPARATION")


def build_logical_frame(
    lattice: LatticeGraph,
    gauge: GaugeConfig,
    couplings: Couplings,
    n_pairs: int = 1,
    separation: int | None = None,
    parity_sector: int | None = None,
) -> LogicalFrame:
    """Base lógica com um par (dois Majoranas) ou dois pares (quatro).

    Com dois pares |1⟩_L ocupa os dois modos mais baixos, de modo que os
    dois estados da base têm a mesma paridade. A paridade do vácuo de A
    muda quando as ligações invertidas diferem das iniciais por um laço que
    envolve um número ímpar de sítios; com dois pares e `parity_sector` a
    base fica no setor do estado evoluído, e se o vácuo estiver no outro
    setor cada estado lógico ocupa um dos dois modos mais baixos. Com um
    par a base já cobre os dois setores e `parity_sector` é ignorado.

    Raises:
        GeometryError: Estados da base não ortogonais.
    """
    if n_pairs not in (1, 2):
        raise ValueError("A base lógica aceita um ou dois pares de modos.")
    A = assemble_hamiltonian(lattice, gauge, couplings)
    Q, eps = canonical_form(A)
    vazio = mode_state(Q, set())
    deslocada = n_pairs == 2 and parity_sector is not None and parity(vazio) != parity_sector
    if deslocada:
        vazio, ocupado = mode_state(Q, {0}), mode_state(Q, {1})
    else:
        ocupado = mode_state(Q, set(range(n_pairs)))
    if overlap(vazio, ocupado) > ORTHOGONALITY_TOL:
        raise GeometryError("Os estados da base lógica não são ortogonais.")
    quadro = LogicalFrame(couplings.signature(), vazio, ocupado, eps[:n_pairs].copy(), separation, deslocada)
    if separation is not None and not quadro.trusted:
        logger.warning("Base lógica com modos a %d plaquetas de distância.", separation)
    if deslocada:
        logger.info("Vácuo fora do setor do estado; base lógica com um modo ocupado em cada estado.")
    return quadro


def logical_overlaps(gamma: np.ndarray, frame: LogicalFrame, couplings: Couplings) -> LogicalOverlaps:
    """Sobreposições do estado com a base lógica.

    Raises:
        StaleFrameError: Base construída para outra configuração de ligações.
    """
    if frame.signature != couplings.signature():
        raise StaleFrameError(f"Base para {frame.signature}; ligações atuais {couplings.signature()}.")
    return LogicalOverlaps(overlap(frame.gamma0, gamma), overlap(frame.gamma1, gamma))


def splitting_links(lattice: LatticeGraph, separation: int, row: int = 0, col: int = 0) -> list:
    """Cadeia de `separation` ligações Z consecutivas ao longo de uma linha de plaquetas."""
    if separation < 1 or separation > lattice.L1 // 2:
        raise GeometryError(f"Separação {separation} fora de [1, {lattice.L1 // 2}] nesta rede.")
    return path_links(lattice, walk((row, col), ["E"] * separation))


def zero_mode_splitting(separation: int, L: int, couplings: Couplings | None = None) -> float:
    """Menor energia de partícula única com dois modos a `separation` plaquetas."""
    couplings = couplings or Couplings(K=0.2)
    rede = build_lattice(L, L)
    for ligacao in splitting_links(rede, separation):
        couplings = couplings.with_scale(ligacao, -1.0)
    _, eps = canonical_form(assemble_hamiltonian(rede, uniform_gauge(rede), couplings))
    return float(eps[0])


def splitting_series(separations, L: int, couplings: Couplings | None = None) -> np.ndarray:
    energias = np.array([zero_mode_splitting(d, L, couplings) for d in separations])
    logger.info("Desdobramento dos modos para d=%s: %s", list(separations), energias)
    return energias


def fit_splitting(separations, energies) -> tuple:
    """Ajuste log ε = a + b·d.

    Returns:
        (inclinação, intercepto, R²).
    """
    d = np.asarray(separations, dtype=float)
    e = np.asarray(energies, dtype=float)
    if d.size < 2 or np.any(e <= 0):
        raise InsufficientDataError("O ajuste exige ao menos duas energias positivas.")
    ajuste = stats.linregress(d, np.log(e))
    return float(ajuste.slope), float(ajuste.intercept), float(ajuste.rvalue**2)
