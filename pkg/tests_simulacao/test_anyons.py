"""Testes do controle de modos de Majorana.
Esta suíte valida:
- Rampas, caminhos entre plaquetas e a inversão adiabática de ligações.
- A base lógica instantânea e a detecção de bases desatualizadas.
- O desdobramento dos modos com a separação.
- As geometrias de fusão e trançamento e suas contagens de passos.
- O sinal de borda no cilindro.
"""

import numpy as np
import pytest

from core.exceptions import GaugeError, GeometryError, InsufficientDataError, LatticeError, MissingAnglesError, StaleFrameError
from fermions.gauge import restrict_gauge, uniform_gauge
from fermions.gaussian import ground_state, parity, purity_residue
from fermions.hamiltonian import Couplings, assemble_hamiltonian
from lattice.choices import LinkType
from lattice.honeycomb import build_lattice
from anyons.choices import Backend, Ramp
from anyons.edge import centroid_velocity, chiral_edge_experiment, ring_displacement
from anyons.protocols import (
    braiding_experiment,
    braiding_geometry,
    braiding_loop,
    braiding_steps,
    braiding_steps_resource_table,
    fusion_experiment,
    fusion_geometry,
    fusion_steps,
)
from anyons.transport import (
    BondPath,
    LogicalFrame,
    build_logical_frame,
    fit_splitting,
    flip_bond_adiabatic,
    logical_overlaps,
    path_links,
    ramp_value,
    splitting_links,
    splitting_series,
    transport,
    walk,
)

GAPPED = Couplings(J=1.0, K=0.2)


@pytest.fixture(scope="module")
def rede_6x6():
    return build_lattice(6, 6)


@pytest.fixture(scope="module")
def calibre_6x6(rede_6x6):
    return uniform_gauge(rede_6x6)


# Testes de rampas e caminhos


@pytest.mark.parametrize("rampa", [Ramp.LINEAR, Ramp.COSINE])
def test_rampa_vai_de_s_a_menos_s(rampa):
    assert ramp_value(1.0, 0.0, rampa) == pytest.approx(1.0)
    assert ramp_value(1.0, 0.5, rampa) == pytest.approx(0.0, abs=1e-15)
    assert ramp_value(1.0, 1.0, rampa) == pytest.approx(-1.0)
    assert ramp_value(-1.0, 1.0, rampa) == pytest.approx(1.0)


def test_rampa_desconhecida():
    with pytest.raises(ValueError):
        ramp_value(1.0, 0.5, "degrau")


def test_caminhada_entre_celulas():
    assert walk((0, 0), ["E", "N", "NW"]) == [(0, 0), (0, 1), (1, 1), (2, 0)]


@pytest.mark.parametrize("passo, tipo", [("E", LinkType.Z), ("N", LinkType.Y), ("NW", LinkType.X)])
def test_direcao_atravessa_o_tipo_de_ligacao(rede_6x6, passo, tipo):
    ligacao = path_links(rede_6x6, walk((2, 2), [passo]))[0]
    assert rede_6x6.links[ligacao].kind == tipo


def test_celulas_nao_vizinhas_levantam_erro(rede_6x6):
    with pytest.raises(GeometryError):
        path_links(rede_6x6, [(0, 0), (0, 2)])
    with pytest.raises(GeometryError):
        path_links(build_lattice(6, 6, "cylinder"), [(4, 0), (5, 0)])


def test_caminho_de_ligacoes(rede_6x6):
    caminho = BondPath.from_moves(rede_6x6, (1, 1), ["E", "E", "N"], substeps=3)
    assert len(caminho.links) == 3
    assert caminho.substeps == 3
    caminho.validate(rede_6x6)
    distantes = path_links(rede_6x6, walk((0, 0), ["E"])) + path_links(rede_6x6, walk((3, 3), ["E"]))
    with pytest.raises(GeometryError):
        BondPath(tuple(distantes)).validate(rede_6x6)
    with pytest.raises(ValueError):
        BondPath((0,), substeps=0)


# Testes da inversão adiabática


def test_inverter_j_equivale_a_inverter_u(rede_6x6, calibre_6x6):
    """O sinal de J numa ligação entra em A como o sinal de u."""
    ligacao = 7
    por_j = assemble_hamiltonian(rede_6x6, calibre_6x6, GAPPED.with_scale(ligacao, -1.0))
    por_u = assemble_hamiltonian(rede_6x6, calibre_6x6.flipped([ligacao]), GAPPED)
    assert np.allclose(por_j, por_u)


def test_inversao_preserva_a_pureza(rede_6x6, calibre_6x6):
    gamma = ground_state(assemble_hamiltonian(rede_6x6, calibre_6x6, GAPPED))
    final, acoplamentos = flip_bond_adiabatic(gamma, rede_6x6, calibre_6x6, GAPPED, 5, substeps=4)
    assert purity_residue(final) < 1e-9
    assert acoplamentos.bond_scale == {5: -1.0}
    assert acoplamentos.signature() == ((5, -1.0),)


def test_inversao_com_parametros_invalidos(rede_6x6, calibre_6x6):
    gamma = ground_state(assemble_hamiltonian(rede_6x6, calibre_6x6, GAPPED))
    with pytest.raises(LatticeError):
        flip_bond_adiabatic(gamma, rede_6x6, calibre_6x6, GAPPED, rede_6x6.n_links)
    with pytest.raises(MissingAnglesError):
        flip_bond_adiabatic(gamma, rede_6x6, calibre_6x6, GAPPED, 0, backend=Backend.FLOQUET_CIRCUIT)
    with pytest.raises(ValueError):
        flip_bond_adiabatic(gamma, rede_6x6, calibre_6x6, GAPPED, 0, backend="analogico")


def test_vazamento_cresce_com_menos_subpassos():
    rede = build_lattice(8, 8)
    calibre = uniform_gauge(rede)
    acoplamentos = GAPPED.with_scale(path_links(rede, walk((3, 2), ["E"]))[0], -1.0)
    inicial = build_logical_frame(rede, calibre, acoplamentos).gamma0
    vazamentos = []
    for n in (1, 5, 40):
        caminho = BondPath.from_moves(rede, (3, 3), ["E", "E"], substeps=n, ramp=Ramp.COSINE)
        _, _, traco = transport(inicial, rede, calibre, acoplamentos, caminho, frame_pairs=1, substep_time=0.25)
        vazamentos.append(traco[-1].leakage)
    assert vazamentos[0] > vazamentos[1] > vazamentos[2]
    assert vazamentos[2] < 1e-2


# Testes da base lógica


def test_base_logica_e_ortonormal(rede_6x6, calibre_6x6):
    acoplamentos = GAPPED.with_scale(3, -1.0)
    quadro = build_logical_frame(rede_6x6, calibre_6x6, acoplamentos)
    zero = logical_overlaps(quadro.gamma0, quadro, acoplamentos)
    um = logical_overlaps(quadro.gamma1, quadro, acoplamentos)
    assert zero.zero == pytest.approx(1.0)
    assert zero.one == pytest.approx(0.0, abs=1e-10)
    assert um.one == pytest.approx(1.0)
    assert zero.leakage == pytest.approx(0.0, abs=1e-10)


def test_base_desatualizada_e_detectada(rede_6x6, calibre_6x6):
    quadro = build_logical_frame(rede_6x6, calibre_6x6, GAPPED.with_scale(3, -1.0))
    with pytest.raises(StaleFrameError):
        logical_overlaps(quadro.gamma0, quadro, GAPPED.with_scale(4, -1.0))


def test_base_logica_aceita_um_ou_dois_pares(rede_6x6, calibre_6x6):
    with pytest.raises(ValueError):
        build_logical_frame(rede_6x6, calibre_6x6, GAPPED, n_pairs=3)


def test_confianca_depende_da_separacao():
    vazio = np.zeros((2, 2))
    assert LogicalFrame((), vazio, vazio, np.zeros(1), separation=3).trusted
    assert not LogicalFrame((), vazio, vazio, np.zeros(1), separation=2).trusted
    assert not LogicalFrame((), vazio, vazio, np.zeros(1)).trusted


def test_base_logica_acompanha_o_setor_de_paridade(rede_6x6, calibre_6x6):
    """Inverter as três ligações de um sítio troca o sinal de c nele e a paridade do vácuo."""
    vacuo = ground_state(assemble_hamiltonian(rede_6x6, calibre_6x6, GAPPED))
    acoplamentos = GAPPED
    for ligacao in rede_6x6.site_links(0):
        acoplamentos = acoplamentos.with_scale(ligacao, -1.0)
    livre = build_logical_frame(rede_6x6, calibre_6x6, acoplamentos, n_pairs=2)
    quadro = build_logical_frame(rede_6x6, calibre_6x6, acoplamentos, n_pairs=2, parity_sector=parity(vacuo))
    assert parity(livre.gamma0) == -parity(vacuo)
    assert quadro.shifted and not livre.shifted
    assert parity(quadro.gamma0) == parity(vacuo)
    assert parity(quadro.gamma1) == parity(vacuo)
    um_par = build_logical_frame(rede_6x6, calibre_6x6, acoplamentos, parity_sector=parity(vacuo))
    assert not um_par.shifted


# Testes do desdobramento dos modos


def test_desdobramento_decai_com_a_separacao():
    energias = splitting_series([1, 2, 3, 4], 12, GAPPED)
    assert np.all(energias >= 0)
    assert energias[-1] < energias[0]


def test_cadeia_de_separacao_invalida(rede_6x6):
    assert len(splitting_links(rede_6x6, 3)) == 3
    with pytest.raises(GeometryError):
        splitting_links(rede_6x6, 4)
    with pytest.raises(GeometryError):
        splitting_links(rede_6x6, 0)


def test_ajuste_exponencial_sintetico():
    d = np.arange(1, 6)
    inclinacao, intercepto, r2 = fit_splitting(d, np.exp(1.0 - 0.8 * d))
    assert inclinacao == pytest.approx(-0.8)
    assert intercepto == pytest.approx(1.0)
    assert r2 == pytest.approx(1.0)
    with pytest.raises(InsufficientDataError):
        fit_splitting([1], [0.1])
    with pytest.raises(InsufficientDataError):
        fit_splitting([1, 2], [0.1, 0.0])


def test_desdobramento_e_exponencial_na_separacao():
    separacoes = [1, 2, 3, 4, 5, 6]
    energias = splitting_series(separacoes, 20, GAPPED)
    inclinacao, _, r2 = fit_splitting(separacoes, energias)
    assert inclinacao < 0
    assert r2 > 0.9


# Testes das geometrias de fusão e trançamento


def test_contagem_de_passos():
    assert fusion_steps(20) == 14
    assert braiding_steps(12) == 13
    assert braiding_steps_resource_table(12) - braiding_steps(12) == 5


@pytest.mark.parametrize("L", [8, 12, 20])
def test_geometria_de_fusao(L):
    geometria = fusion_geometry(build_lattice(L, L))
    assert geometria.steps == fusion_steps(L)
    assert len(set(geometria.modes.values())) == 4
    assert len(set(geometria.pair_links)) == 2


@pytest.mark.parametrize("L1, L2", [(6, 6), (9, 9), (10, 8)])
def test_fusao_exige_toro_par_e_quadrado(L1, L2):
    with pytest.raises(GeometryError):
        fusion_geometry(build_lattice(L1, L2))


@pytest.mark.parametrize("L", [12, 15])
def test_geometria_de_trancamento(L):
    rede = build_lattice(L, L)
    geometria = braiding_geometry(rede)
    assert geometria.steps == braiding_steps(L)
    for _, ligacoes in geometria.paths:
        BondPath(tuple(ligacoes)).validate(rede)


def test_dois_lacos_somam_um_laco_extra():
    rede = build_lattice(12, 12)
    um, dois = braiding_geometry(rede), braiding_geometry(rede, n_loops=2)
    laco = len(dict(um.paths)["mode-2-loop-0"])
    assert dois.steps == um.steps + laco


def test_trancamento_exige_rede_grande():
    with pytest.raises(GeometryError):
        braiding_geometry(build_lattice(9, 9))
    with pytest.raises(ValueError):
        braiding_geometry(build_lattice(12, 12), n_loops=0)


def test_fusao_alterna_os_modos():
    geometria = fusion_geometry(build_lattice(20, 20))
    assert [rotulo for rotulo, _ in geometria.paths] == ["mode-2", "mode-3"] * 7
    invertidas = [l for _, ligacoes in geometria.paths for l in ligacoes] + list(geometria.pair_links)
    assert len(set(invertidas)) == 16


@pytest.mark.parametrize("raio, impar", [(1, True), (2, False), (4, False), (3, True)])
def test_laco_de_trancamento_fecha(raio, impar):
    passos = braiding_loop(raio, impar)
    assert len(passos) == 6 * raio + (3 if impar else 0)
    assert walk((0, 0), passos)[-1] == (0, 0)


def test_experimento_de_fusao_pequeno():
    resultado = fusion_experiment(8, substeps=3, substep_time=0.5)
    assert resultado.steps == 2
    assert len(resultado.trace) == resultado.steps + 1
    assert sum(resultado.probabilities) == pytest.approx(1.0)
    assert resultado.trace[0][0] == pytest.approx(1.0)
    assert -1e-9 <= resultado.leakage <= 1.0
    assert resultado.plaquettes_preserved
    assert len(list(resultado.trace_rows())) == 3


def test_fusao_da_vacuo_e_fermion_com_a_mesma_chance():
    resultado = fusion_experiment(20, substep_time=0.25, ramp=Ramp.COSINE, record_trace=False)
    assert resultado.steps == 14
    assert len(resultado.trace) == 2
    assert sum(resultado.probabilities) == pytest.approx(1.0, abs=1e-6)
    assert resultado.probabilities[0] == pytest.approx(0.5, abs=0.1)
    assert resultado.probabilities[1] == pytest.approx(0.5, abs=0.1)
    assert resultado.leakage < 0.1


def test_trancamento_inverte_o_estado_logico():
    resultado = braiding_experiment(21, substep_time=0.25, record_trace=False)
    assert resultado.steps == braiding_steps(21) == 40
    assert resultado.plaquettes_preserved
    assert resultado.probabilities[1] > 0.9


def test_trancamento_duplo_volta_ao_estado_inicial():
    resultado = braiding_experiment(21, substep_time=0.25, n_loops=2, record_trace=False)
    assert resultado.probabilities[0] > 0.9


def test_laco_com_numero_impar_de_ligacoes_e_rejeitado():
    with pytest.raises(GeometryError):
        braiding_experiment(12)


# Testes da borda quiral


def test_deslocamento_no_anel():
    assert ring_displacement(5, 0, 6) == -1
    assert ring_displacement(2, 0, 6) == 2
    assert ring_displacement(0, 4, 6) == 2


def test_calibre_restrito_ao_cilindro():
    toro, cilindro = build_lattice(6, 6), build_lattice(6, 6, "cylinder")
    costura = toro.link_between(toro.odd_site(0, 2), toro.even_site(5, 2))
    restrito = restrict_gauge(uniform_gauge(toro).flipped([costura, 0]), cilindro)
    assert restrito.lattice is cilindro
    assert restrito.u.size == toro.n_links - 6
    assert restrito.value(toro.odd_site(0, 0), toro.even_site(0, 0)) == -1.0
    assert int(np.sum(restrito.u < 0)) == 1
    with pytest.raises(GaugeError):
        restrict_gauge(uniform_gauge(cilindro), toro)


def test_velocidade_do_centroide_sintetica():
    sinal = np.zeros((4, 10))
    for t in range(4):
        sinal[t, t] = 1.0
    centroides, velocidade = centroid_velocity(sinal, 0)
    assert np.allclose(centroides, [0, 1, 2, 3])
    assert velocidade == pytest.approx(1.0)
    assert centroid_velocity(np.zeros((3, 10)), 0)[1] == 0.0


def test_sinal_de_borda_comeca_no_sitio_do_pulso():
    resultado = chiral_edge_experiment(6, 0.1, 3, x0=2)
    assert resultado.signal.shape == (4, 6)
    assert resultado.signal[0, 2] != 0.0
    assert np.allclose(np.delete(resultado.signal[0], 2), 0.0, atol=1e-12)
    assert len(list(resultado.rows())) == 24


def test_sem_pulso_nao_ha_sinal():
    resultado = chiral_edge_experiment(6, 0.1, 2, quench=False)
    assert np.array_equal(resultado.signal, np.zeros((3, 6)))
    assert resultado.velocity == 0.0


def test_borda_exige_cilindro():
    with pytest.raises(GeometryError):
        chiral_edge_experiment(6, 0.1, 2, boundary="torus")
