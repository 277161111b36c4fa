"""Testes do oráculo de vetor de estado.
Esta suíte valida:
- A álgebra de strings de Pauli e o limite de qubits.
- A concordância entre o oráculo de spins e o motor de Majorana no toro 2x2.
- A medição de síndromes, o pareamento por linha e o resfriamento.
- Os auxiliares da preparação variacional com ruído.
"""

import itertools

import networkx as nx
import numpy as np
import pytest

from core.exceptions import OracleCapacityError, SyndromeParityError
from fermions.gauge import uniform_gauge
from fermions.gaussian import energy, ground_state
from fermions.hamiltonian import Couplings, assemble_hamiltonian, layer_generators
from floquet.circuits import CircuitAngles, apply_circuit
from lattice.honeycomb import build_lattice
from oracle.correspondence import (
    compare_energy,
    compare_field_quench,
    oracle_check,
    projected_toric_state,
)
from oracle.noisy import logical_readout, noisy_angles, noisy_vsp_benchmark, threshold_crossing
from oracle.projection import (
    Syndrome,
    cool_state,
    dissipative_cooling_rounds,
    pair_row,
    ring_distance,
    sample_and_pair,
    syndrome_of,
    z_string,
)
from oracle.statevector import (
    apply_pauli_string,
    g2_gate,
    measure_pauli_string,
    normalize,
    spin_hamiltonian,
    zero_state,
)


@pytest.fixture(scope="module")
def torus_3x2():
    return build_lattice(3, 2)


@pytest.fixture(scope="module")
def estado_projetado_3x2(torus_3x2):
    return projected_toric_state(torus_3x2)


def estado_aleatorio(rng, n):
    return normalize(rng.normal(size=2**n) + 1j * rng.normal(size=2**n))


# Testes da álgebra de Pauli


def test_zero_e_autoestado_de_z():
    estado = zero_state(3)
    assert measure_pauli_string(estado, [(1, "Z")]) == pytest.approx(1.0)
    assert measure_pauli_string(estado, [(1, "X")]) == pytest.approx(0.0)
    invertido = apply_pauli_string(estado, [(1, "X")])
    assert measure_pauli_string(invertido, [(1, "Z")]) == pytest.approx(-1.0)
    assert invertido[0b010] == 1.0


def test_y_e_i_vezes_xz(rng):
    """Verifica Y = iXZ atuando em um estado aleatório."""
    psi = estado_aleatorio(rng, 3)
    xz = apply_pauli_string(apply_pauli_string(psi, [(2, "Z")]), [(2, "X")])
    assert np.allclose(apply_pauli_string(psi, [(2, "Y")]), 1j * xz)


def test_pauli_ao_quadrado_e_identidade(rng):
    psi = estado_aleatorio(rng, 4)
    string = [(0, "X"), (1, "Y"), (3, "Z")]
    assert np.allclose(apply_pauli_string(apply_pauli_string(psi, string), string), psi)


def test_string_de_pauli_invalida():
    estado = zero_state(2)
    with pytest.raises(ValueError):
        apply_pauli_string(estado, [(0, "X"), (0, "Z")])
    with pytest.raises(ValueError):
        apply_pauli_string(estado, [(0, "W")])


def test_limite_de_qubits_do_oraculo():
    with pytest.raises(OracleCapacityError):
        zero_state(25)


def test_porta_g2_e_diagonal_e_unitaria():
    G = g2_gate(0.3)
    assert np.allclose(G, np.diag(np.diag(G)))
    assert np.allclose(G.conj().T @ G, np.eye(4))
    assert G[0, 0] == pytest.approx(np.exp(0.3j))
    assert G[1, 1] == pytest.approx(np.exp(-0.3j))


@pytest.mark.parametrize("K", [0.0, 0.2])
def test_hamiltoniano_de_spins_e_hermitiano(torus_2x2, K):
    H = spin_hamiltonian(torus_2x2, Couplings(K=K))
    assert abs(H - H.conj().T).max() < 1e-14


# Testes de concordância com o motor de Majorana


def test_verificacao_completa_no_toro_2x2(torus_2x2):
    relatorio = oracle_check(torus_2x2, Couplings(J=1.0, K=0.0))
    assert set(relatorio) == {"floquet_cycles", "quench", "pauli_quench", "energy", "overlaps"}
    for chave, desvio in relatorio.items():
        assert desvio < 1e-8, chave


def test_energia_do_estado_torico(torus_2x2):
    spin, fermion = compare_energy(torus_2x2, Couplings(J=1.0, K=0.0))
    assert spin == pytest.approx(fermion, abs=1e-10)


def test_quench_de_campo_nulo_preserva_a_plaqueta(torus_2x2):
    resultado = compare_field_quench(torus_2x2, Couplings(), 0.0, torus_2x2.odd_site(0, 1), [0.0, 0.25, 0.5])
    assert resultado["deviation"] < 1e-8
    assert np.allclose(resultado["spin"], 1.0)


def test_quench_de_campo_fraco_acompanha_o_oraculo(torus_2x2):
    resultado = compare_field_quench(torus_2x2, Couplings(), 0.05, torus_2x2.odd_site(0, 1), [0.0, 0.5, 1.0], dt=0.01)
    assert resultado["times"] == [0.0, 0.5, 1.0]
    assert resultado["spin"][0] == pytest.approx(1.0)
    assert resultado["deviation"] < 0.05


# Testes de síndromes e pareamento


def test_estado_projetado_nao_tem_vortices(torus_3x2, estado_projetado_3x2):
    sindrome = syndrome_of(estado_projetado_3x2, torus_3x2)
    assert sindrome.vortex_count == 0
    assert sindrome.values.shape == (2, 3)


def test_z_em_sitio_par_cria_dois_vortices_na_linha(torus_3x2, estado_projetado_3x2):
    excitado = apply_pauli_string(estado_projetado_3x2, [(torus_3x2.even_site(0, 0), "Z")])
    sindrome = syndrome_of(excitado, torus_3x2)
    assert sindrome.defects(0) == [0, 2]
    assert sindrome.defects(1) == []


def test_string_z_desfaz_o_par(torus_3x2, estado_projetado_3x2):
    excitado = apply_pauli_string(estado_projetado_3x2, [(torus_3x2.even_site(0, 0), "Z")])
    custo, pares = pair_row([0, 2], 3)
    assert custo == 1
    assert pares == [(0, 2)]
    corrigido = apply_pauli_string(excitado, z_string(torus_3x2, 0, *pares[0]))
    assert syndrome_of(corrigido, torus_3x2).vortex_count == 0


def test_amostragem_e_pareamento_corrigem_o_estado(torus_3x2, estado_projetado_3x2, rng):
    excitado = apply_pauli_string(estado_projetado_3x2, [(torus_3x2.even_site(1, 1), "Z")])
    resultado = sample_and_pair(excitado, torus_3x2, rng)
    assert resultado.syndrome.vortex_count == 2
    assert len(resultado.strings) == 1
    assert syndrome_of(resultado.state, torus_3x2).vortex_count == 0


def test_pareamento_de_custo_minimo_no_anel():
    custo, pares = pair_row([0, 1, 4, 5], 6)
    assert custo == 2
    assert sorted(pares) == [(0, 1), (4, 5)]
    assert ring_distance(0, 5, 6) == 1
    assert pair_row([], 6) == (0, [])


def test_pareamento_coincide_com_o_emparelhamento_do_networkx(rng):
    """Compara o custo por programação dinâmica com um emparelhamento perfeito de peso mínimo."""
    for _ in range(20):
        tamanho = 2 * int(rng.integers(1, 5))
        colunas = sorted(rng.choice(10, size=tamanho, replace=False).tolist())
        grafo = nx.Graph()
        for a, b in itertools.combinations(colunas, 2):
            grafo.add_edge(a, b, weight=ring_distance(a, b, 10))
        emparelhamento = nx.min_weight_matching(grafo)
        referencia = sum(ring_distance(a, b, 10) for a, b in emparelhamento)
        assert pair_row(colunas, 10)[0] == referencia


def test_pareamento_rejeita_numero_impar():
    with pytest.raises(SyndromeParityError):
        pair_row([1, 2, 3], 4)
    with pytest.raises(SyndromeParityError):
        Syndrome(np.array([[-1, 1, 1]])).check_row_parity()


def test_rodadas_de_resfriamento():
    sindrome = Syndrome(np.array([[-1, 1, 1, 1, -1, 1]]))
    assert dissipative_cooling_rounds(sindrome, 0) == [2, 2, 0]
    with pytest.raises(ValueError):
        dissipative_cooling_rounds(sindrome, 6)


def test_resfriamento_de_um_estado(torus_3x2, estado_projetado_3x2):
    excitado = apply_pauli_string(estado_projetado_3x2, [(torus_3x2.even_site(0, 0), "Z")])
    contagens, final = cool_state(excitado, torus_3x2, 1)
    assert contagens == [2, 0]
    assert syndrome_of(final, torus_3x2).vortex_count == 0


# Testes da preparação com ruído


@pytest.fixture(scope="module")
def circuito_3x3(torus_3x3, gauge_3x3):
    geradores = layer_generators(torus_3x3, gauge_3x3)
    A = assemble_hamiltonian(torus_3x3, gauge_3x3, Couplings(K=0.2))
    return geradores, A, ground_state(A)


def test_ruido_nulo_preserva_os_angulos(rng):
    angulos = CircuitAngles(np.ones((2, 3)))
    assert noisy_angles(angulos, 0.0, rng, 27) is angulos
    ruidosos = noisy_angles(angulos, 0.1, rng, 27)
    assert np.max(np.abs(ruidosos.blocks - angulos.blocks)) <= 0.1


def test_ruido_por_ligacao(rng):
    ruidosos = noisy_angles(CircuitAngles(np.ones((2, 3))), 0.1, rng, 27, per_link=True)
    assert ruidosos.link_offsets.shape == (2, 27)
    assert np.max(np.abs(ruidosos.link_offsets)) <= 0.1


def test_benchmark_sem_ruido_usa_uma_realizacao(circuito_3x3):
    geradores, A, gamma = circuito_3x3
    angulos = CircuitAngles(np.full((2, 3), 0.1))
    resultado = noisy_vsp_benchmark(angulos, geradores, gamma, lambda g: energy(g, A), 0.0)
    assert resultado.values.size == 1
    assert resultado.std == 0.0
    assert resultado.mean == pytest.approx(energy(apply_circuit(gamma, geradores, angulos), A))


def test_benchmark_com_ruido(circuito_3x3):
    geradores, A, gamma = circuito_3x3
    angulos = CircuitAngles(np.full((2, 3), 0.1))
    resultado = noisy_vsp_benchmark(
        angulos, geradores, gamma, lambda g: energy(g, A), 0.05, n_realizations=8, rng=np.random.default_rng(4)
    )
    assert resultado.values.size == 8
    assert resultado.values.min() <= resultado.mean <= resultado.values.max()
    with pytest.raises(ValueError):
        noisy_vsp_benchmark(angulos, geradores, gamma, lambda g: 0.0, -0.1)


def test_leitura_logica_ideal(torus_3x3):
    observavel = logical_readout(uniform_gauge(torus_3x3), 0, lambda g: 1.0)
    assert observavel(np.zeros((18, 18))) == 1.0


def test_cruzamento_do_limiar():
    assert threshold_crossing([0.0, 0.1, 0.2], [1.0, 0.8, 0.2]) == pytest.approx(0.15)
    assert threshold_crossing([0.0, 0.1], [1.0, 0.9]) is None
