"""Testes da leitura por estados gaussianos com ligação dinâmica.
Esta suíte valida:
- O contrato de Wick para quatro Majoranas e o campo médio como gradiente da energia.
- O integrador RK4 contra a evolução exata e a conservação de energia.
- A descida em tempo imaginário.
- A configuração da leitura, o modelo de dois níveis e a busca do primeiro mínimo.
- O pulso composto em duas etapas e a calibração do campo.
"""

import numpy as np
import pytest

from core.exceptions import GaugeError, IntegratorInstabilityError, NoMinimumError, UngappedTwoLevelError
from fermions.gaussian import conjugate, energy, evolve, excite_mode, ground_state, overlap, propagator, purity_residue
from fermions.hamiltonian import Couplings, assemble_hamiltonian
from fermions.pfaffian import pfaffian
from fermions.gauge import uniform_gauge
from readout.fgs import ExtendedHamiltonian, extended_hamiltonian, imaginary_time_ground_state, integrate, pf4, rk4_step
from readout.protocol import (
    ReadoutResult,
    TwoLevelEstimate,
    TwoLevelModel,
    best_field,
    calibration_sweep,
    first_minimum,
    fit_tls,
    readout_protocol,
    readout_setup,
    readout_summary,
    readout_traces,
    spectral_tls,
    tls_model,
    tls_parameters,
)

from .conftest import random_skew


@pytest.fixture(scope="module")
def setup():
    return readout_setup(5, 3)


@pytest.fixture(scope="module")
def A_3x3(torus_3x3, gauge_3x3):
    return assemble_hamiltonian(torus_3x3, gauge_3x3, Couplings(J=1.0, K=0.2))


def resultado_sintetico(h, vazio, ocupado):
    return ReadoutResult(h, 1.0, vazio, ocupado, False, np.zeros(1), np.zeros(1), np.zeros(1))


# Testes do teorema de Wick e do campo médio


def test_pf4_e_o_pfaffiano_do_bloco(rng):
    gamma = random_skew(rng, 8)
    indices = [1, 3, 4, 6]
    assert pf4(gamma, indices) == pytest.approx(pfaffian(gamma[np.ix_(indices, indices)]))


def test_energia_estendida_coincide_com_a_estatica(setup):
    """Com ⟨u*⟩ igual ao valor estático os termos quárticos reproduzem A."""
    for h in (0.0, 0.3):
        sistema = setup.system(h)
        for gamma in (setup.gamma_empty, setup.gamma_occupied):
            assert sistema.energy(sistema.initial_state(gamma)) == pytest.approx(energy(gamma, setup.A), abs=1e-12)


def test_campo_medio_e_o_gradiente_da_energia(setup, rng):
    sistema = setup.system(0.4)
    gamma = random_skew(rng, sistema.dimension)
    H = sistema.mean_field(gamma)
    assert np.allclose(H, -H.T)
    passo = 1e-6
    for _ in range(10):
        a, b = rng.choice(sistema.dimension, size=2, replace=False)
        direcao = np.zeros_like(gamma)
        direcao[a, b], direcao[b, a] = 1.0, -1.0
        derivada = (sistema.energy(gamma + passo * direcao) - sistema.energy(gamma - passo * direcao)) / (2 * passo)
        assert derivada == pytest.approx(0.5 * H[a, b], abs=1e-6)


def test_campo_fica_no_bloco_do_sitio(setup):
    sistema = setup.system(0.5)
    n = sistema.dimension - 2
    assert sistema.field[n, setup.site] == pytest.approx(-1.0)
    assert np.count_nonzero(sistema.field) == 2
    assert sistema.quartic


def test_sistema_invertido(setup):
    sistema = setup.system(0.5)
    invertido = sistema.reversed()
    assert np.array_equal(invertido.matter, -sistema.matter)
    assert np.array_equal(invertido.field, sistema.field)
    assert [g for g, _ in invertido.quartic] == [-g for g, _ in sistema.quartic]


def test_sitio_sem_ligacao_z(cylinder_4x3):
    calibre = uniform_gauge(cylinder_4x3)
    with pytest.raises(GaugeError):
        extended_hamiltonian(cylinder_4x3, calibre, Couplings(), cylinder_4x3.odd_site(0, 0), 0.1)


def test_estado_inicial_com_dimensao_errada(setup):
    with pytest.raises(ValueError):
        setup.system(0.1).initial_state(np.zeros((4, 4)))


# Testes do integrador


def test_rk4_coincide_com_a_evolucao_exata(A_3x3):
    gamma = ground_state(A_3x3)
    perturbado = conjugate(gamma, propagator(random_skew(np.random.default_rng(1), 18), 0.1))
    trajetoria = integrate(ExtendedHamiltonian(matter=A_3x3), perturbado, 1.0, dt=0.001)
    assert np.allclose(trajetoria.gamma, evolve(perturbado, A_3x3, 1.0), atol=1e-7)
    assert purity_residue(trajetoria.gamma) < 1e-10


def test_instantes_incluem_o_passo_parcial(A_3x3):
    trajetoria = integrate(ExtendedHamiltonian(matter=A_3x3), ground_state(A_3x3), 0.035, dt=0.01)
    assert np.allclose(trajetoria.times, [0.0, 0.01, 0.02, 0.03, 0.035])
    assert trajetoria.values.shape == (5,)
    with pytest.raises(ValueError):
        integrate(ExtendedHamiltonian(matter=A_3x3), ground_state(A_3x3), -1.0)


def test_energia_conservada_com_campo(setup):
    sistema = setup.system(0.6)
    trajetoria = integrate(sistema, sistema.initial_state(setup.gamma_occupied), 1.0, dt=0.005)
    assert np.max(np.abs(trajetoria.values - trajetoria.values[0])) < 1e-5


def test_passo_grande_demais_e_instavel(setup):
    sistema = setup.system(0.5)
    with pytest.raises(IntegratorInstabilityError):
        rk4_step(sistema, sistema.initial_state(setup.gamma_empty), 2.0)


def test_sem_campo_a_plaqueta_nao_muda(setup):
    sistema = setup.system(0.0)
    trajetoria = integrate(sistema, sistema.initial_state(setup.gamma_occupied), 1.0, observe=sistema.plaquette_value)
    assert np.allclose(trajetoria.values, 1.0, atol=1e-10)
    assert sistema.bond_expectation(trajetoria.gamma) == pytest.approx(1.0, abs=1e-10)


# Testes do tempo imaginário


def test_tempo_imaginario_encontra_o_fundamental(A_3x3):
    fundamental = ground_state(A_3x3)
    excitado = excite_mode(excite_mode(fundamental, A_3x3, 0), A_3x3, 1)
    inicial = conjugate(excitado, propagator(random_skew(np.random.default_rng(2), 18), 0.05))
    gamma, energia, aceitos = imaginary_time_ground_state(ExtendedHamiltonian(matter=A_3x3), inicial)
    assert aceitos > 0
    assert energia == pytest.approx(energy(fundamental, A_3x3), abs=1e-6)
    assert overlap(gamma, fundamental) == pytest.approx(1.0, abs=1e-5)


# Testes do protocolo de leitura


def test_configuracao_da_leitura(setup):
    assert setup.site == setup.lattice.odd_site(1, 0)
    assert setup.couplings.bond_scale == {setup.link: -1.0}
    assert setup.mode in (0, 1)
    assert overlap(setup.gamma_empty, setup.gamma_occupied) == pytest.approx(0.0, abs=1e-10)


def test_tracos_comecam_em_um(setup):
    tempos, vazio, ocupado = readout_traces(setup, 0.5, 0.2, dt=0.02)
    assert tempos.shape == vazio.shape == ocupado.shape == (11,)
    assert vazio[0] == pytest.approx(1.0)
    assert ocupado[0] == pytest.approx(1.0)
    assert np.all(np.abs(ocupado) <= 1.0 + 1e-9)


def test_primeiro_minimo_refinado():
    t = np.linspace(0.0, 4.0, 401)
    tempo, valor = first_minimum(t, np.cos(2.0 * t))
    assert tempo == pytest.approx(np.pi / 2, abs=1e-4)
    assert valor == pytest.approx(-1.0, abs=1e-4)


def test_serie_monotona_nao_tem_minimo():
    with pytest.raises(NoMinimumError):
        first_minimum([0.0, 1.0, 2.0], [1.0, 0.5, 0.2])


def test_melhor_campo():
    resultados = [None, resultado_sintetico(0.2, 1.0, 0.2), resultado_sintetico(0.4, 1.0, -0.6)]
    assert best_field(resultados).h == 0.4
    assert resultados[2].fidelity == pytest.approx(0.8)
    assert best_field([None, None]) is None


def test_resumo_da_leitura(setup):
    resumo = readout_summary(setup, resultado_sintetico(0.3, 0.9, -0.5))
    assert resumo["fidelity"] == pytest.approx(0.7)
    assert resumo["site"] == setup.site
    assert resumo["composite"] is False


# Testes do modelo de dois níveis


def test_modelo_de_dois_niveis():
    modelo = TwoLevelModel(detuning=1.0, coupling=1.0)
    assert modelo.frequency == pytest.approx(np.sqrt(1.25))
    assert modelo.amplitude == pytest.approx(0.8)
    assert modelo.plaquette(0.0) == pytest.approx(1.0)
    meio_periodo = np.pi / (2 * modelo.frequency)
    assert modelo.plaquette(meio_periodo) == pytest.approx(1.0 - 2 * 0.8)
    assert TwoLevelModel(0.0, 0.0).amplitude == 0.0


def test_ajuste_do_modelo_de_dois_niveis():
    t = np.linspace(0.0, 5.0, 200)
    valores = tls_model(t, 0.4, 1.3)
    amplitude, frequencia = fit_tls(t, valores, TwoLevelModel(detuning=2.0, coupling=0.9))
    assert amplitude == pytest.approx(0.4, rel=1e-6)
    assert frequencia == pytest.approx(1.3, rel=1e-6)


def test_acoplamento_proporcional_ao_campo(setup):
    fraco, forte = spectral_tls(setup, 0.2), spectral_tls(setup, 0.4)
    assert forte.coupling == pytest.approx(2.0 * fraco.coupling)
    assert forte.detuning == pytest.approx(fraco.detuning)


def test_modelo_reconstruido_da_oscilacao():
    modelo = TwoLevelModel(detuning=-1.2, coupling=0.5)
    reconstruido = TwoLevelModel.from_oscillation(modelo.amplitude, modelo.frequency, sign=-1.0)
    assert reconstruido.detuning == pytest.approx(-1.2)
    assert reconstruido.coupling == pytest.approx(0.5)


def test_parametros_espectrais_e_ajustados_juntos(setup):
    espectral = spectral_tls(setup, 0.3)
    t = np.linspace(0.0, 4 * np.pi / espectral.frequency, 400)
    estimativa = tls_parameters(setup, 0.3, t, espectral.plaquette(t))
    assert isinstance(estimativa, TwoLevelEstimate)
    assert estimativa.spectral == espectral
    assert estimativa.fitted.detuning == pytest.approx(espectral.detuning, rel=1e-5)
    assert estimativa.fitted.coupling == pytest.approx(espectral.coupling, rel=1e-5)
    assert estimativa.detuning_deviation < 1e-5
    resumo = estimativa.summary()
    assert resumo["fitted_detuning"] == pytest.approx(resumo["detuning"], rel=1e-5)


def test_setor_sem_gap_e_rejeitado(setup):
    with pytest.raises(UngappedTwoLevelError):
        spectral_tls(setup, 0.3, zero_tol=1e3)


# Testes da calibração do pulso


CAMPOS = (0.2, 0.3, 0.4)


@pytest.fixture(scope="module")
def varredura(setup):
    simples = calibration_sweep(setup, CAMPOS, 15.0, dt=0.02)
    compostos = calibration_sweep(setup, CAMPOS, 15.0, dt=0.02, composite=True)
    return simples, compostos


def test_traco_composto_cobre_as_duas_etapas(varredura):
    leitura = best_field(varredura[1])
    assert leitura.times[-1] == pytest.approx(2 * leitura.t_readout)
    assert set(np.unique(leitura.stages)) == {1, 2}
    assert np.all(np.diff(leitura.times) > 0)
    assert leitura.trace_occupied[-1] == pytest.approx(leitura.w_occupied)
    assert leitura.trace_empty[-1] == pytest.approx(leitura.w_empty)
    linhas = list(leitura.rows())
    assert linhas[-1]["stage"] == 2
    assert len(linhas) == leitura.times.size


def test_leitura_simples_registra_so_a_primeira_etapa(varredura):
    leitura = best_field(varredura[0])
    assert leitura.times[-1] == pytest.approx(leitura.t_readout)
    assert set(np.unique(leitura.stages)) == {1}
    assert leitura.pulse_times[-1] == pytest.approx(15.0)


def test_pulso_composto_supera_o_simples_perto_do_campo_calibrado(varredura):
    for h, simples, composto in zip(CAMPOS, *varredura):
        assert simples is not None and composto is not None, h
        assert composto.fidelity > simples.fidelity, h


def test_contraste_calibrado(varredura):
    simples, compostos = (best_field(resultados) for resultados in varredura)
    assert simples.fidelity == pytest.approx(0.43, abs=0.1)
    assert compostos.fidelity == pytest.approx(0.89, abs=0.1)


def test_estado_vazio_responde_menos_que_o_ocupado(varredura):
    for leitura in varredura[0]:
        assert np.min(leitura.trace_empty) > np.min(leitura.trace_occupied)
