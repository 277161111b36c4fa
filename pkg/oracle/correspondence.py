"""Comparação entre o motor de férmions livres e o oráculo de spins.

O estado |0…0⟩ projetado no setor sem vórtices é a soma, com pesos iguais,
de dois setores do laço Y vertical V. Na representação de Majorana cada
setor é o estado fundamental de H_Z em uma das classes de `toric_gauges`,
de modo que todo observável invariante de calibre vale ½(f_g1 + f_g2).
"""
import logging

import numpy as np

from fermions.gauge import measure_plaquette, toric_gauges
from fermions.gaussian import apply_pauli_quench, energy, evolve, ground_state, link_correlator, overlap
from fermions.hamiltonian import Couplings, assemble_hamiltonian, layer_generators
from floquet.circuits import floquet_cycle
from lattice.honeycomb import LatticeGraph
from oracle.projection import project_vortex_free
from oracle.statevector import (
    apply_pauli_string,
    evolve_state,
    expectation_value,
    link_correlator_spin,
    pauli_sum,
    plaquette_expectation,
    spin_floquet_cycle,
    spin_hamiltonian,
    zero_state,
)
from readout.fgs import extended_hamiltonian, integrate

logger = logging.getLogger(__name__)


def projected_toric_state(lattice: LatticeGraph) -> np.ndarray:
    """|0…0⟩ projetado no setor W_p = +1."""
    estado, _ = project_vortex_free(zero_state(lattice.n_sites), lattice)
    return estado


def toric_fermion_states(lattice: LatticeGraph) -> list:
    """Pares (calibre, Γ) dos dois setores do estado tórico projetado."""
    estados = []
    for calibre in toric_gauges(lattice):
        A_z = layer_generators(lattice, calibre).generator("Z")
        estados.append((calibre, ground_state(A_z)))
    return estados


def fermion_observables(states, lattice: LatticeGraph) -> dict:
    """Correlações de ligação e W_p médios sobre os setores."""
    correlacoes = np.mean([[link_correlator(g, c, l) for l in range(lattice.n_links)] for c, g in states], axis=0)
    plaquetas = np.mean([[measure_plaquette(c, p) for p in range(lattice.n_plaquettes)] for c, _ in states], axis=0)
    return {"links": correlacoes, "plaquettes": plaquetas}


def spin_observables(state: np.ndarray, lattice: LatticeGraph) -> dict:
    return {
        "links": np.array([link_correlator_spin(state, lattice, l) for l in range(lattice.n_links)]),
        "plaquettes": np.array([plaquette_expectation(state, lattice, p) for p in range(lattice.n_plaquettes)]),
    }


def _max_deviation(a: dict, b: dict) -> float:
    return max(float(np.max(np.abs(a[chave] - b[chave]))) for chave in a)


def compare_floquet_cycles(lattice: LatticeGraph, couplings: Couplings, tau: float, n_cycles: int, order: str = "XYZ") -> float:
    """Maior desvio das correlações e W_p após cada ciclo de Trotter."""
    estado = projected_toric_state(lattice)
    setores = toric_fermion_states(lattice)
    ciclos = [floquet_cycle(layer_generators(lattice, c), couplings, tau, order) for c, _ in setores]
    desvio = _max_deviation(spin_observables(estado, lattice), fermion_observables(setores, lattice))
    for _ in range(n_cycles):
        estado = spin_floquet_cycle(estado, lattice, couplings, tau, order)
        setores = [(c, U.T @ g @ U) for (c, g), U in zip(setores, ciclos)]
        desvio = max(desvio, _max_deviation(spin_observables(estado, lattice), fermion_observables(setores, lattice)))
    return desvio


def compare_quench(lattice: LatticeGraph, couplings: Couplings, times, quench=None) -> float:
    """Maior desvio sob evolução contínua com H, opcionalmente após um Pauli.

    Args:
        quench: Par (sítio, Pauli) aplicado no instante zero; o sítio deve
            estar fora da coluna 0 para não misturar os setores de V.
    """
    estado = projected_toric_state(lattice)
    setores = toric_fermion_states(lattice)
    if quench is not None:
        sitio, pauli = quench
        estado = apply_pauli_string(estado, [(sitio, pauli)])
        setores = [tuple(reversed(apply_pauli_quench(g, c, sitio, pauli))) for c, g in setores]
    H = spin_hamiltonian(lattice, couplings)
    matrizes = [assemble_hamiltonian(lattice, c, couplings) for c, _ in setores]
    desvio = 0.0
    for t in times:
        spin = spin_observables(evolve_state(estado, H, t), lattice)
        fermion = fermion_observables([(c, evolve(g, A, t)) for (c, g), A in zip(setores, matrizes)], lattice)
        desvio = max(desvio, _max_deviation(spin, fermion))
    return desvio


def compare_energy(lattice: LatticeGraph, couplings: Couplings) -> tuple:
    """(⟨H⟩ no oráculo, média de ⟨H⟩ nos dois setores de Majorana)."""
    estado = projected_toric_state(lattice)
    H = spin_hamiltonian(lattice, couplings)
    medias = [energy(g, assemble_hamiltonian(lattice, c, couplings)) for c, g in toric_fermion_states(lattice)]
    return expectation_value(estado, H), float(np.mean(medias))


def sector_components(state: np.ndarray, lattice: LatticeGraph) -> list:
    """Componentes (1 ± V)/2 |ψ⟩ do laço Y vertical na coluna 0."""
    V = lattice.y_loop(0)
    imagem = apply_pauli_string(state, V)
    return [0.5 * (state + imagem), 0.5 * (state - imagem)]


def _normalized_overlap(a: np.ndarray, b: np.ndarray) -> float:
    return float(abs(np.vdot(a, b)) ** 2 / (np.vdot(a, a).real * np.vdot(b, b).real))


def compare_sector_overlaps(lattice: LatticeGraph, couplings: Couplings, t: float) -> tuple:
    """Sobreposições |⟨ψ(0)|ψ(t)⟩|² por setor, nos dois quadros.

    Returns:
        (lista ordenada do oráculo, lista ordenada de Majorana).
    """
    inicial = projected_toric_state(lattice)
    final = evolve_state(inicial, spin_hamiltonian(lattice, couplings), t)
    spin = sorted(_normalized_overlap(a, b) for a, b in zip(sector_components(inicial, lattice), sector_components(final, lattice)))
    fermion = sorted(
        overlap(g, evolve(g, assemble_hamiltonian(lattice, c, couplings), t)) for c, g in toric_fermion_states(lattice)
    )
    return spin, fermion


def oracle_check(lattice: LatticeGraph, couplings: Couplings, tau: float = 0.1, n_cycles: int = 5, times=(0.0, 0.3, 0.7)) -> dict:
    """Relatório com os desvios entre os dois motores em uma rede pequena."""
    energia_spin, energia_fermion = compare_energy(lattice, couplings)
    spin, fermion = compare_sector_overlaps(lattice, couplings, times[-1])
    sitio = lattice.odd_site(0, 1)
    relatorio = {
        "floquet_cycles": compare_floquet_cycles(lattice, couplings, tau, n_cycles),
        "quench": compare_quench(lattice, couplings, times),
        "pauli_quench": compare_quench(lattice, couplings, times, quench=(sitio, "Z")),
        "energy": abs(energia_spin - energia_fermion),
        "overlaps": float(np.max(np.abs(np.array(spin) - np.array(fermion)))),
    }
    logger.info("Verificação contra o oráculo: %s", relatorio)
    return relatorio


def compare_field_quench(lattice: LatticeGraph, couplings: Couplings, h: float, site: int, times, dt: float | None = None) -> dict:
    """⟨W_p⟩(t) sob o campo −h σ^z_site: FGS com ligação dinâmica contra o oráculo.

    O sítio deve estar fora da coluna 0 para que o campo comute com V e
    a média sobre os dois setores continue valendo.

    Returns:
        Dicionário com os tempos, as duas séries e o maior desvio.
    """
    estado = projected_toric_state(lattice)
    H = spin_hamiltonian(lattice, couplings) + pauli_sum(lattice.n_sites, [(-h, [(site, "Z")])])
    sistemas, estados = [], []
    for calibre, gamma in toric_fermion_states(lattice):
        sistema = extended_hamiltonian(lattice, calibre, couplings, site, h)
        sistemas.append(sistema)
        estados.append(sistema.initial_state(gamma))
    plaqueta = sistemas[0].readout_plaquette
    spin, fermion, anterior = [], [], 0.0
    for t in sorted(times):
        estados = [integrate(s, g, t - anterior, dt).gamma for s, g in zip(sistemas, estados)]
        anterior = t
        spin.append(plaquette_expectation(evolve_state(estado, H, t), lattice, plaqueta))
        fermion.append(float(np.mean([s.plaquette_value(g) for s, g in zip(sistemas, estados)])))
    desvio = float(np.max(np.abs(np.array(spin) - np.array(fermion))))
    logger.info("Campo h=%.3f no sítio %d: desvio máximo de W_p %.3e", h, site, desvio)
    return {"times": sorted(times), "spin": spin, "fermion": fermion, "deviation": desvio}
