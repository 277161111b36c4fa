"""Fusão e trançamento de quatro modos de Majorana no toro L × L.

As posições são células de plaqueta (linha, coluna). Os dois pares
iniciais (1, 2) e (3, 4) são ligações únicas invertidas sobre o estado
fundamental sem vórtices; os modos se movem por `transport`, e após cada
ligação o estado é comparado com a base lógica instantânea, no setor de
paridade do estado evoluído.

Fusão (L par, L ≥ 8, d = L/2 − 2, h = ⌊d/2⌋):
    1 em (r₀, c₀), 2 em (r₀+1, c₀), 4 em (r₀−h, c₀+d), 3 em (r₀−h−1, c₀+d).
    O modo 2 segue E×(d−1−h) e SE×h até o vizinho noroeste de 4; o modo 3
    faz o caminho simétrico W×(d−1−h) e NW×h até o vizinho sudeste de 1.
    Os dois andam alternadamente, uma ligação por vez, e ficam a pelo
    menos h plaquetas um do outro até formarem os pares (1, 3) e (2, 4).

Trançamento (m = ⌊L/3⌋ ≥ 4, T = 9m − 23):
    3 no centro, 4 no vizinho leste e 2 no canto oeste de um hexágono de
    raio ρ ao redor de 3, com 1 logo a oeste de 2. O modo 4 sai d passos
    para leste, o modo 2 percorre o hexágono SE, E, N, NW, W, S e o modo 4
    volta. Com T ímpar os lados E, NW e S têm uma plaqueta a mais; ρ e d
    equilibram a distância do laço ao modo 3 e ao modo 4 estacionado.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from core.conf import escolher
from core.exceptions import GeometryError
from fermions.gauge import plaquette_values, uniform_gauge
from fermions.gaussian import parity
from fermions.hamiltonian import Couplings
from lattice.honeycomb import LatticeGraph, build_lattice
from anyons.choices import Backend, Ramp
from anyons.transport import BondPath, build_logical_frame, logical_overlaps, path_links, transport, walk

logger = logging.getLogger(__name__)

DEFAULT_COUPLINGS = Couplings(J=1.0, K=0.2)


def fusion_steps(L: int) -> int:
    """2(L/2 − 2 − 1) ligações invertidas na fusão."""
    return 2 * (L // 2 - 3)


def braiding_steps(L: int) -> int:
    """9⌊L/3⌋ − 23 ligações por laço de trançamento."""
    return 9 * (L // 3) - 23


def braiding_steps_resource_table(L: int) -> int:
    """Contagem 9⌊L/3⌋ − 18 usada na estimativa de recursos.

    Difere de `braiding_steps` por 5 ligações; a geometria implementada
    segue `braiding_steps`.
    """
    return 9 * (L // 3) - 18


@dataclass
class AnyonGeometry:
    """Posições e caminhos de um experimento com quatro modos.

    Attributes:
        modes: Célula inicial de cada modo (1 a 4).
        pair_links: Ligações invertidas que criam os pares iniciais.
        paths: Trechos (rótulo, ligações) na ordem de execução.
    """

    L: int
    modes: dict
    pair_links: tuple
    paths: list = field(default_factory=list)

    @property
    def steps(self) -> int:
        return sum(len(ligacoes) for _, ligacoes in self.paths)


def fusion_geometry(lattice: LatticeGraph) -> AnyonGeometry:
    """Geometria da fusão numa rede L × L.

    Raises:
        GeometryError: L ímpar, L < 8 ou rede não quadrada.
    """
    L = lattice.L1
    if lattice.L2 != L or L % 2 or L < 8:
        raise GeometryError(f"A fusão exige um toro L × L com L par e L ≥ 8; recebido {lattice.L1} × {lattice.L2}.")
    d = L // 2 - 2
    h = d // 2
    r0, c0 = L // 2, 1
    modos = {1: (r0, c0), 2: (r0 + 1, c0), 3: (r0 - h - 1, c0 + d), 4: (r0 - h, c0 + d)}
    pares = (path_links(lattice, [modos[1], modos[2]])[0], path_links(lattice, [modos[4], modos[3]])[0])
    rota2 = path_links(lattice, walk(modos[2], ["E"] * (d - 1 - h) + ["SE"] * h))
    rota3 = path_links(lattice, walk(modos[3], ["W"] * (d - 1 - h) + ["NW"] * h))
    caminhos = []
    for ligacao2, ligacao3 in zip(rota2, rota3):
        caminhos.append(("mode-2", [ligacao2]))
        caminhos.append(("mode-3", [ligacao3]))
    return AnyonGeometry(L, modos, pares, caminhos)


def braiding_loop(radius: int, odd: bool = False) -> list:
    """Passos do hexágono de raio `radius` a partir do seu canto oeste.

    Com `odd` os lados E, NW e S ganham uma plaqueta e o laço fica com
    6·radius + 3 passos.
    """
    extra = 1 if odd else 0
    lados = [("SE", radius), ("E", radius + extra), ("N", radius), ("NW", radius + extra), ("W", radius), ("S", radius + extra)]
    return [passo for direcao, n in lados for passo in [direcao] * n]


def braiding_geometry(lattice: LatticeGraph, n_loops: int = 1) -> AnyonGeometry:
    """Geometria do laço do modo 2 ao redor do modo 3.

    Raises:
        GeometryError: ⌊L/3⌋ < 4 ou laço maior que a rede.
    """
    L = lattice.L1
    m = L // 3
    if lattice.L2 != L or m < 4:
        raise GeometryError(f"O trançamento exige um toro L × L com ⌊L/3⌋ ≥ 4; recebido {lattice.L1} × {lattice.L2}.")
    if n_loops < 1:
        raise ValueError("É preciso ao menos um laço.")
    total = braiding_steps(L)
    impar = bool(total % 2)
    base = 3 if impar else 0
    raio = max(1, (total - base + 2) // 10)
    d = (total - 6 * raio - base) // 2
    alcance = raio + (1 if impar else 0)
    if d + 1 <= alcance or d + raio + 3 > L - 2:
        raise GeometryError(f"O laço de raio {raio} com saída {d} não cabe na rede {L} × {L}.")
    r3, c3 = L // 2, raio + 2
    modos = {
        1: (r3, c3 - raio - 1),
        2: (r3, c3 - raio),
        3: (r3, c3),
        4: (r3, c3 + 1),
    }
    pares = (path_links(lattice, [modos[1], modos[2]])[0], path_links(lattice, [modos[3], modos[4]])[0])
    saida = walk(modos[4], ["E"] * d)
    laco = braiding_loop(raio, impar)
    caminhos = [("mode-4-out", path_links(lattice, saida))]
    for k in range(n_loops):
        caminhos.append((f"mode-2-loop-{k}", path_links(lattice, walk(modos[2], laco))))
    caminhos.append(("mode-4-back", path_links(lattice, walk(saida[-1], ["W"] * d))))
    return AnyonGeometry(L, modos, pares, caminhos)


@dataclass
class AnyonExperimentResult:
    """Resultado de fusão ou trançamento.

    Attributes:
        probabilities: Probabilidades normalizadas de |0⟩_L e |1⟩_L na base final.
        trace: Sobreposições (|0⟩_L, |1⟩_L) na base instantânea, uma por ligação
            e mais o ponto inicial; só os extremos quando o traço não é registrado.
        leakage: 1 − soma das sobreposições finais.
        steps: Ligações invertidas.
        plaquettes_preserved: W_p inalterados ao longo do protocolo.
        frame_shifted: A base final precisou de um modo ocupado em cada estado.
    """

    probabilities: tuple
    trace: list
    leakage: float
    steps: int
    plaquettes_preserved: bool = True
    frame_shifted: bool = False

    def trace_rows(self):
        for passo, (zero, um) in enumerate(self.trace):
            yield {"step": passo, "overlap_0": zero, "overlap_1": um, "leakage": 1.0 - zero - um}


def _run(lattice, geometry: AnyonGeometry, couplings, substeps, substep_time, backend, ramp, circuit, record_trace=True) -> AnyonExperimentResult:
    calibre = uniform_gauge(lattice)
    fluxos = plaquette_values(calibre)
    for ligacao in geometry.pair_links:
        couplings = couplings.with_scale(ligacao, -1.0)
    quadro = build_logical_frame(lattice, calibre, couplings, n_pairs=2)
    gamma = quadro.gamma0
    paridade = parity(gamma)
    traco = [tuple(logical_overlaps(gamma, quadro, couplings))]
    n = escolher(substeps, "ADIABATIC_SUBSTEPS")
    for rotulo, ligacoes in geometry.paths:
        gamma, couplings, parcial = transport(
            gamma,
            lattice,
            calibre,
            couplings,
            BondPath(tuple(ligacoes), n, ramp),
            frame_pairs=2 if record_trace else None,
            frame_parity=paridade,
            substep_time=substep_time,
            backend=backend,
            circuit=circuit,
        )
        traco.extend(tuple(o) for o in parcial)
        logger.debug("Trecho %s concluído: %d ligações.", rotulo, len(ligacoes))
    final = build_logical_frame(lattice, calibre, couplings, n_pairs=2, parity_sector=paridade)
    zero, um = logical_overlaps(gamma, final, couplings)
    if record_trace:
        traco[-1] = (zero, um)
    else:
        traco.append((zero, um))
    total = zero + um
    probabilidades = (zero / total, um / total) if total > 0 else (float("nan"), float("nan"))
    return AnyonExperimentResult(
        probabilities=probabilidades,
        trace=traco,
        leakage=1.0 - total,
        steps=geometry.steps,
        plaquettes_preserved=bool(np.array_equal(fluxos, plaquette_values(calibre))),
        frame_shifted=final.shifted,
    )


def fusion_experiment(
    L: int,
    couplings: Couplings | None = None,
    substeps: int | None = None,
    substep_time: float | None = None,
    backend: str = Backend.IDEAL,
    ramp: str = Ramp.COSINE,
    circuit=None,
    record_trace: bool = True,
) -> AnyonExperimentResult:
    """Recombina os pares (1, 2), (3, 4) em (1, 3), (2, 4).

    `probabilities` é (p_vácuo, p_ψ): as sobreposições com o vácuo dos
    pares cruzados e com os dois pares ocupados.
    """
    rede = build_lattice(L, L)
    geometria = fusion_geometry(rede)
    resultado = _run(rede, geometria, couplings or DEFAULT_COUPLINGS, substeps, substep_time, backend, ramp, circuit, record_trace)
    logger.info("Fusão L=%d: p_vácuo=%.3f, p_ψ=%.3f", L, *resultado.probabilities)
    return resultado


def braiding_experiment(
    L: int,
    couplings: Couplings | None = None,
    substeps: int | None = None,
    substep_time: float | None = None,
    backend: str = Backend.IDEAL,
    ramp: str = Ramp.COSINE,
    circuit=None,
    n_loops: int = 1,
    record_trace: bool = True,
) -> AnyonExperimentResult:
    """Leva o modo 2 ao redor do modo 3 `n_loops` vezes.

    Ao fim as ligações diferem das iniciais por laços fechados. Com um
    número par de ligações invertidas o laço envolve um número par de
    sítios, a configuração final é uma transformação de calibre da inicial
    e `probabilities[1]` é p_flip.

    Raises:
        GeometryError: Número ímpar de ligações invertidas (⌊L/3⌋ par com
            um número ímpar de laços).
    """
    rede = build_lattice(L, L)
    geometria = braiding_geometry(rede, n_loops)
    if geometria.steps % 2:
        raise GeometryError(
            f"{geometria.steps} ligações invertidas envolvem um número ímpar de sítios; "
            "a configuração final não é equivalente à inicial. Use ⌊L/3⌋ ímpar ou um número par de laços."
        )
    resultado = _run(rede, geometria, couplings or DEFAULT_COUPLINGS, substeps, substep_time, backend, ramp, circuit, record_trace)
    logger.info("Trançamento L=%d (%d laços): p_flip=%.3f", L, n_loops, resultado.probabilities[1])
    return resultado
