"""Testes dos pulsos de Rydberg com bloqueio.
Esta suíte valida:
- A base bloqueada e a estrutura do Hamiltoniano de pulso.
- A composição de três pulsos: unitariedade, blocos e simetria entre átomos.
- A fidelidade de porta com referencial de fases Z locais.
- A busca de pulsos e a detecção de descontinuidades.
"""

import itertools

import numpy as np
import pytest

from rydberg.blockade import (
    PulseParams,
    blockade_basis,
    compose_g3,
    gate_fidelity,
    lp_closure_time,
    pulse_hamiltonian,
    pulse_unitary,
    qubit_block,
    rydberg_populations,
    target_gate,
    z_signs,
)
from rydberg.search import PulseSolution, detect_discontinuities, find_pulse, random_seeds

EXEMPLO = PulseParams(delta1=0.7, delta2=-1.1, tau1=0.45, tau2=0.3, phi=1.2)


def embutir(diagonal, base):
    """Unitária que age como `diagonal` nos qubits e como identidade no resto."""
    U = np.eye(base.dimension, dtype=complex)
    indices = base.qubit_indices
    U[np.ix_(indices, indices)] = np.diag(diagonal)
    return U


def padrao_de_zeros(estado):
    return tuple(k for k, nivel in enumerate(estado) if nivel == "0")


# Testes da base e do Hamiltoniano


def test_dimensoes_da_base_bloqueada():
    assert blockade_basis(3).dimension == 20
    assert blockade_basis(2).dimension == 8
    assert all(s.count("r") <= 1 for s in blockade_basis(3).states)
    assert blockade_basis(3).qubit_states[1] == "001"
    with pytest.raises(ValueError):
        blockade_basis(0)


@pytest.mark.parametrize("delta, phi", [(0.0, 0.0), (1.3, 0.4), (-2.0, -2.9)])
def test_hamiltoniano_de_pulso_e_hermitiano(delta, phi):
    H = pulse_hamiltonian(delta, phi)
    assert np.allclose(H, H.conj().T)
    base = blockade_basis(3)
    for k in base.rydberg_indices:
        assert H[k, k] == -delta


def test_estado_000_nao_acopla():
    base = blockade_basis(3)
    k = base.index["000"]
    assert np.array_equal(pulse_hamiltonian(0.8, 0.5)[:, k], np.zeros(base.dimension))


def test_acoplamentos_coletivos():
    """|111⟩ acopla ao estado W de três átomos com √3/2 e |110⟩ ao de dois com √2/2."""
    base = blockade_basis(3)
    H = pulse_hamiltonian(0.0, 0.0)
    w3 = np.zeros(base.dimension)
    for estado in ("r11", "1r1", "11r"):
        w3[base.index[estado]] = 1 / np.sqrt(3)
    assert abs(w3 @ H[:, base.index["111"]]) == pytest.approx(np.sqrt(3) / 2)
    w2 = np.zeros(base.dimension)
    for estado in ("r10", "1r0"):
        w2[base.index[estado]] = 1 / np.sqrt(2)
    assert abs(w2 @ H[:, base.index["110"]]) == pytest.approx(np.sqrt(2) / 2)


# Testes da sequência de pulsos


def test_duracoes_nulas_dao_a_identidade():
    U = compose_g3(PulseParams(1.0, 2.0, 0.0, 0.0, 0.3))
    assert np.allclose(U, np.eye(20))


def test_sequencia_e_unitaria():
    U = compose_g3(EXEMPLO)
    assert np.allclose(U.conj().T @ U, np.eye(20), atol=1e-12)


def test_pulsos_preservam_os_atomos_em_zero():
    """Átomos em |0⟩ não participam: U é bloco-diagonal no padrão de zeros."""
    base = blockade_basis(3)
    U = compose_g3(EXEMPLO)
    for a, b in itertools.product(base.states, repeat=2):
        if padrao_de_zeros(a) != padrao_de_zeros(b):
            assert abs(U[base.index[a], base.index[b]]) < 1e-12


def test_invariancia_por_permutacao_dos_atomos():
    base = blockade_basis(3)
    U = compose_g3(EXEMPLO)
    for permutacao in itertools.permutations(range(3)):
        def permutar(estado):
            return "".join(estado[p] for p in permutacao)

        for a, b in itertools.product(base.states, repeat=2):
            original = U[base.index[a], base.index[b]]
            permutado = U[base.index[permutar(a)], base.index[permutar(b)]]
            assert permutado == pytest.approx(original, abs=1e-12)


@pytest.mark.parametrize("delta", [0.0, 0.5, -1.7])
def test_fechamento_de_dois_atomos(delta):
    base = blockade_basis(2)
    U = pulse_unitary(delta, lp_closure_time(delta), 0.0, base)
    estado = U[:, base.index["11"]]
    assert np.sum(np.abs(estado[base.rydberg_indices]) ** 2) < 1e-20
    assert abs(estado[base.index["11"]]) == pytest.approx(1.0)


def test_populacoes_de_rydberg():
    populacoes = rydberg_populations(EXEMPLO, "111")
    assert populacoes.shape == (4,)
    assert populacoes[0] == 0.0
    assert np.all((populacoes >= 0) & (populacoes <= 1 + 1e-12))
    assert np.allclose(rydberg_populations(EXEMPLO, "000"), 0.0)


def test_parametros_de_pulso():
    with pytest.raises(ValueError):
        PulseParams(0.0, 0.0, -0.1, 0.2, 0.0)
    p = PulseParams.from_vector([0.1, 0.2, -0.3, 0.4, 1.5 * np.pi])
    assert p.tau1 == pytest.approx(0.3)
    assert p.phi == pytest.approx(-0.5 * np.pi)
    a = PulseParams(0.0, 0.0, 0.5, 0.5, np.pi - 0.01)
    b = PulseParams(0.0, 0.0, 0.5, 0.5, -np.pi + 0.01)
    assert a.distance(b) == pytest.approx(0.02)


# Testes da fidelidade de porta


def test_sinais_de_z():
    sinais = z_signs(2)
    assert sinais.tolist() == [[1, 1], [1, -1], [-1, 1], [-1, -1]]
    assert np.allclose(target_gate(0.2, 2), np.exp(0.2j * np.array([1, -1, -1, 1])))


def test_alvo_embutido_tem_fidelidade_um():
    base = blockade_basis(3)
    U = embutir(target_gate(0.3), base)
    resultado = gate_fidelity(U, 0.3)
    assert resultado.fidelity == pytest.approx(1.0, abs=1e-12)
    assert resultado.leakage == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(qubit_block(U, base), np.diag(target_gate(0.3)))


def test_fases_locais_sao_absorvidas_pelo_referencial():
    base = blockade_basis(3)
    alfa = np.array([0.1, -0.2, 0.3])
    U = embutir(target_gate(0.3) * np.exp(1j * z_signs(3) @ alfa), base)
    resultado = gate_fidelity(U, 0.3)
    assert resultado.frame_free < 0.99
    assert resultado.fidelity == pytest.approx(1.0, abs=1e-9)


def test_fase_global_nao_importa():
    U = embutir(np.exp(0.7j) * target_gate(0.2), blockade_basis(3))
    assert gate_fidelity(U, 0.2).frame_free == pytest.approx(1.0, abs=1e-12)


def test_referencial_otimizado_nunca_piora():
    resultado = gate_fidelity(compose_g3(EXEMPLO), 0.4)
    assert resultado.fidelity >= resultado.frame_free
    assert 0.0 <= resultado.leakage <= 1.0


# Testes da busca de pulsos


def test_busca_melhora_a_semente(rng):
    semente = random_seeds(1, rng)[0]
    inicial = gate_fidelity(compose_g3(semente), 0.5).infidelity
    solucao = find_pulse(0.5, seeds=[semente], max_iter=150)
    assert solucao.infidelity <= inicial + 1e-15
    assert solucao.theta == 0.5
    assert set(solucao.row()) == {"theta", "delta1", "delta2", "tau1", "tau2", "phi", "infidelity", "leakage"}


@pytest.mark.parametrize("theta", [0.0, -0.1, 1.0])
def test_theta_fora_do_intervalo(theta):
    with pytest.raises(ValueError):
        find_pulse(theta, seeds=[EXEMPLO])


def test_busca_exige_sementes():
    with pytest.raises(ValueError):
        find_pulse(0.3, seeds=[])


def test_sementes_aleatorias_no_intervalo(rng):
    for semente in random_seeds(20, rng):
        assert -2.0 <= semente.delta1 <= 2.0
        assert 0.1 <= semente.tau2 <= 1.5
        assert -np.pi <= semente.phi <= np.pi


def test_deteccao_de_descontinuidades():
    solucoes = []
    for k in range(6):
        salto = 1.0 if k >= 4 else 0.0
        params = PulseParams(0.5 + 0.01 * k + salto, 0.0, 0.4, 0.4, 0.0)
        solucoes.append(PulseSolution(0.1 * (k + 1), params, 1.0, 0.0, True))
    saltos = detect_discontinuities(solucoes)
    assert len(saltos) == 1
    assert saltos[0][:2] == (pytest.approx(0.4), pytest.approx(0.5))
    assert detect_discontinuities(solucoes[:2]) == []


def test_busca_atinge_o_limiar_de_infidelidade(rng):
    solucao = find_pulse(np.pi / 4, n_seeds=16, rng=rng)
    assert solucao.converged
    assert solucao.infidelity < 1e-6
