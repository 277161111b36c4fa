"""Execução de cada tipo de experimento a partir de uma configuração validada.

Cada runner recebe a configuração, o diretório de saída e os metadados,
grava as tabelas CSV e devolve o resumo escalar que o comando `simulate`
grava em `summary.json`.
"""
import logging
from pathlib import Path

import numpy as np

from anyons.choices import Backend as TransportBackend
from anyons.edge import chiral_edge_experiment
from anyons.protocols import braiding_experiment, braiding_steps, braiding_steps_resource_table, fusion_experiment
from anyons.transport import fit_splitting, splitting_series
from core.conf import escolher
from core.exceptions import InsufficientDataError, UngappedTwoLevelError
from core.io import write_csv
from experiments.choices import Backend, ExperimentKind
from experiments.resources import optimal_depth, resource_table
from fermions.gauge import measure_plaquette, uniform_gauge
from fermions.gaussian import ground_state, parity
from fermions.hamiltonian import Couplings, assemble_hamiltonian, layer_generators
from floquet.circuits import CircuitAngles, floquet_cycle
from floquet.heating import heating_curve, heating_exponent, plateau_drift
from floquet.magnus import first_order_generator
from lattice.honeycomb import build_lattice
from oracle.correspondence import compare_field_quench, oracle_check
from oracle.noisy import logical_readout, noise_scan, threshold_crossing
from readout.fgs import integrate
from readout.protocol import best_field, calibration_sweep, readout_protocol, readout_setup, readout_summary, tls_parameters
from rydberg.search import detect_discontinuities, scan_theta
from variational.bootstrap import recursive_bootstrap
from variational.costs import HeffProblem, VspProblem
from variational.optimizer import OptimizerConfig, optimize
from variational.scaling import VspScalingFit, depth_for_target, vsp_depth_scan

logger = logging.getLogger(__name__)

GAPPED_COUPLINGS = Couplings(J=1.0, K=0.2)

TARGETS = {
    ExperimentKind.HEATING.value: "heating-plateau",
    ExperimentKind.HEFF_OPTIMIZATION.value: "effective-hamiltonian-bootstrap",
    ExperimentKind.VSP_SCAN.value: "state-preparation-scaling",
    ExperimentKind.FUSION.value: "fusion-statistics",
    ExperimentKind.BRAIDING.value: "braiding-flip",
    ExperimentKind.READOUT.value: "readout-contrast",
    ExperimentKind.CHIRAL_EDGE.value: "chiral-edge-transport",
    ExperimentKind.NOISY_VSP.value: "noisy-state-preparation",
    ExperimentKind.RYDBERG_SCAN.value: "rydberg-g3-pulses",
    ExperimentKind.ORACLE_CHECK.value: "oracle-equivalence",
    ExperimentKind.RESOURCES.value: "gate-layer-estimate",
    ExperimentKind.OPTIMAL_DEPTH.value: "optimal-depth-surface",
    ExperimentKind.ZERO_MODE_SPLITTING.value: "zero-mode-splitting",
}


def _couplings(config: dict, default: Couplings | None = None) -> Couplings | None:
    """Acoplamentos da configuração ou `default` quando ausentes."""
    dados = config.get("couplings")
    return Couplings(**dados) if dados else default


def _optimizer(config: dict, parametros: dict) -> OptimizerConfig:
    return OptimizerConfig(max_iterations=parametros["max_iterations"], seed=config["seed"])


def run_heating(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    couplings = _couplings(config, Couplings())
    rede = build_lattice(p["L"], p["L"])
    geradores = layer_generators(rede, uniform_gauge(rede))
    linhas, offsets, derivas = [], {}, {}
    for tau in p["taus"]:
        A_efetivo = first_order_generator(geradores, couplings, tau, p["order"])
        inicial = ground_state(A_efetivo, occupations=[])
        ciclo = floquet_cycle(geradores, couplings, tau, p["order"])
        curva = heating_curve(inicial, A_efetivo, ciclo, tau, p.get("n_cycles"))
        linhas.extend((tau, *linha) for linha in curva.rows())
        offsets[tau] = curva.offset
        n = len(curva.cycles)
        derivas[tau] = plateau_drift(curva, (n // 2, 3 * n // 4), (3 * n // 4, None))
    write_csv(destino / "heating.csv", ["tau", "cycle", "time", "energy"], linhas, metadados)
    try:
        expoente, prefator, r2 = heating_exponent(list(offsets), list(offsets.values()))
    except InsufficientDataError as erro:
        logger.warning("Sem ajuste do expoente de aquecimento: %s", erro)
        expoente = prefator = r2 = None
    return {"offsets": offsets, "plateau_drift": derivas, "exponent": expoente, "prefactor": prefator, "r2": r2}


def run_heff_optimization(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    rede = build_lattice(p["L"], p["L"])
    calibre = uniform_gauge(rede)
    alvo = assemble_hamiltonian(rede, calibre, _couplings(config, GAPPED_COUPLINGS))
    resultado = recursive_bootstrap(
        layer_generators(rede, calibre),
        alvo,
        p["tau"],
        p["base_depth"],
        p["target_depth"],
        _optimizer(config, p),
        threshold=p.get("threshold"),
    )
    write_csv(
        destino / "stages.csv",
        ["stage", "tau", "depth", "cost", "iterations"],
        [(k, e.tau, e.depth, e.cost, e.iterations) for k, e in enumerate(resultado.stages)],
        metadados,
    )
    write_csv(
        destino / "angles.csv",
        ["block", "theta_x", "theta_y", "theta_z"],
        [(b, *angulos) for b, angulos in enumerate(resultado.angles.blocks)],
        metadados,
    )
    final = resultado.stages[-1]
    return {"final_tau": final.tau, "final_depth": final.depth, "final_cost": final.cost}


def run_vsp_scan(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    linhas, ajuste = vsp_depth_scan(p["sizes"], p["depths"], _couplings(config, GAPPED_COUPLINGS), _optimizer(config, p))
    write_csv(destino / "vsp_scan.csv", ["L", "depth", "infidelity"], linhas, metadados)
    resumo = {"depth_for_0.9": {L: depth_for_target(linhas, L, 0.9) for L in p["sizes"]}}
    if ajuste is not None:
        resumo.update({"A": ajuste.A, "alpha": ajuste.alpha, "D0": ajuste.D0})
    return resumo


def _transport_circuit(L: int, couplings: Couplings, p: dict, config: dict) -> CircuitAngles | None:
    """Ângulos base de um subpasso adiabático, otimizados para a rede uniforme."""
    if p["transport_backend"] != TransportBackend.FLOQUET_CIRCUIT:
        return None
    rede = build_lattice(L, L)
    calibre = uniform_gauge(rede)
    problema = HeffProblem(
        layer_generators(rede, calibre),
        assemble_hamiltonian(rede, calibre, couplings),
        escolher(p.get("substep_time"), "ADIABATIC_SUBSTEP_TIME"),
        CircuitAngles(np.zeros((1, 3))),
    )
    resultado = optimize(problema, p["circuit_depth"], OptimizerConfig(seed=config["seed"]))
    logger.info("Circuito base de profundidade %d com custo %.3e.", p["circuit_depth"], resultado.cost)
    return problema.angles(resultado.x)


def _anyon_summary(resultado, destino: Path, metadados: dict) -> dict:
    write_csv(
        destino / "trace.csv",
        ["step", "overlap_0", "overlap_1", "leakage"],
        [tuple(linha.values()) for linha in resultado.trace_rows()],
        metadados,
    )
    return {
        "probabilities": list(resultado.probabilities),
        "leakage": resultado.leakage,
        "steps": resultado.steps,
        "plaquettes_preserved": resultado.plaquettes_preserved,
        "frame_shifted": resultado.frame_shifted,
    }


def run_fusion(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    couplings = _couplings(config, GAPPED_COUPLINGS)
    resultado = fusion_experiment(
        p["L"],
        couplings,
        p.get("substeps"),
        p.get("substep_time"),
        p["transport_backend"],
        p["ramp"],
        _transport_circuit(p["L"], couplings, p, config),
    )
    resumo = _anyon_summary(resultado, destino, metadados)
    resumo.update({"p_vacuum": resultado.probabilities[0], "p_psi": resultado.probabilities[1]})
    return resumo


def run_braiding(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    couplings = _couplings(config, GAPPED_COUPLINGS)
    resultado = braiding_experiment(
        p["L"],
        couplings,
        p.get("substeps"),
        p.get("substep_time"),
        p["transport_backend"],
        p["ramp"],
        _transport_circuit(p["L"], couplings, p, config),
        p["n_loops"],
    )
    resumo = _anyon_summary(resultado, destino, metadados)
    resumo.update({
        "p_flip": resultado.probabilities[1],
        "steps_per_loop": {"geometry": braiding_steps(p["L"]), "resource-table": braiding_steps_resource_table(p["L"])},
    })
    return resumo


def _readout_fgs(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    setup = readout_setup(p["L1"], p["L2"], _couplings(config))
    simples = calibration_sweep(setup, p["field_strengths"], p["t_max"], p.get("dt"))
    compostos = calibration_sweep(setup, p["field_strengths"], p["t_max"], p.get("dt"), composite=True)
    write_csv(
        destino / "calibration.csv",
        ["h", "t_readout", "fidelity_single", "fidelity_composite"],
        [
            (h, s.t_readout if s else "", s.fidelity if s else "", c.fidelity if c else "")
            for h, s, c in zip(p["field_strengths"], simples, compostos)
        ],
        metadados,
    )
    melhor_simples, melhor_composto = best_field(simples), best_field(compostos)
    if melhor_simples is None:
        return {"single": None, "composite": None}
    registrado = melhor_composto if p["composite"] and melhor_composto else melhor_simples
    write_csv(
        destino / "trace.csv",
        ["time", "stage", "w_empty", "w_occupied"],
        [tuple(linha.values()) for linha in registrado.rows()],
        metadados,
    )
    try:
        dois_niveis = tls_parameters(setup, melhor_simples.h, melhor_simples.pulse_times, melhor_simples.pulse_occupied).summary()
    except UngappedTwoLevelError as erro:
        logger.warning("Modelo de dois níveis indisponível: %s", erro)
        dois_niveis = None
    return {
        "single": readout_summary(setup, melhor_simples),
        "composite": readout_summary(setup, melhor_composto) if melhor_composto else None,
        "two_level": dois_niveis,
    }


def _readout_oracle(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    rede = build_lattice(p["oracle_L1"], p["oracle_L2"])
    couplings = _couplings(config, GAPPED_COUPLINGS)
    sitio = rede.odd_site(0, 1)
    linhas, desvios = [], {}
    for h in p["field_strengths"]:
        comparacao = compare_field_quench(rede, couplings, h, sitio, p["oracle_times"], p.get("dt"))
        linhas.extend(zip([h] * len(comparacao["times"]), comparacao["times"], comparacao["spin"], comparacao["fermion"]))
        desvios[h] = comparacao["deviation"]
    write_csv(destino / "field_quench.csv", ["h", "time", "spin", "fermion"], linhas, metadados)
    return {"deviation": desvios, "max_deviation": max(desvios.values())}


def run_readout(config: dict, destino: Path, metadados: dict) -> dict:
    if config["backend"] == Backend.ORACLE:
        return _readout_oracle(config, destino, metadados)
    return _readout_fgs(config, destino, metadados)


def run_chiral_edge(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    velocidades = {}
    for ordem in p["orders"]:
        resultado = chiral_edge_experiment(p["L"], p["tau"], p["n_steps"], _couplings(config), ordem, p["x0"] % p["L"])
        write_csv(
            destino / f"edge_{ordem}.csv",
            ["cycle", "column", "signal"],
            [tuple(linha.values()) for linha in resultado.rows()],
            metadados,
        )
        velocidades[ordem] = resultado.velocity
    return {"velocity": velocidades}


def run_noisy_vsp(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    setup = readout_setup(p["L1"], p["L2"], _couplings(config))
    geradores = layer_generators(setup.lattice, setup.gauge)
    inicial = ground_state(geradores.generator("Z"))
    alvo = ground_state(setup.A, parity_sector=parity(inicial))
    problema = VspProblem(geradores, inicial, alvo, CircuitAngles(np.zeros((1, 3)), bond_scale=dict(setup.couplings.bond_scale)))
    preparacao = optimize(problema, p["depth"], _optimizer(config, p))
    angulos = problema.angles(preparacao.x)

    leitura = readout_protocol(setup, p["h"], p["t_max"], composite=True)
    sistema = setup.system(p["h"])

    def apos_leitura(gamma):
        estado = integrate(sistema, sistema.initial_state(gamma), leitura.t_readout).gamma
        estado = integrate(sistema.reversed(), estado, leitura.t_readout).gamma
        return sistema.plaquette_value(estado)

    observavel = logical_readout(setup.gauge, sistema.readout_plaquette, apos_leitura)
    resultados = noise_scan(
        angulos, geradores, inicial, observavel, p["deltas"], p["n_realizations"], np.random.default_rng(config["seed"]), p["per_link"]
    )
    write_csv(
        destino / "noisy_vsp.csv",
        ["delta_theta", "mean", "std", "standard_error"],
        [(r.delta_theta, r.mean, r.std, r.standard_error) for r in resultados],
        metadados,
    )
    return {
        "preparation_fidelity": problema.fidelity(preparacao.x),
        "plaquette_static": measure_plaquette(setup.gauge, sistema.readout_plaquette),
        "crossing_50": threshold_crossing(p["deltas"], [r.mean for r in resultados]),
    }


def run_rydberg_scan(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    solucoes = scan_theta(p["thetas"], p["n_seeds"], np.random.default_rng(config["seed"]), p["threshold"])
    colunas = ["theta", "delta1", "delta2", "tau1", "tau2", "phi", "infidelity", "leakage"]
    write_csv(destino / "rydberg.csv", colunas, [[s.row()[c] for c in colunas] for s in solucoes], metadados)
    saltos = detect_discontinuities(solucoes)
    return {
        "converged": sum(s.converged for s in solucoes),
        "total": len(solucoes),
        "max_infidelity": max(s.infidelity for s in solucoes),
        "discontinuities": [list(salto) for salto in saltos],
    }


def run_oracle_check(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    rede = build_lattice(p["L1"], p["L2"])
    relatorio = oracle_check(rede, _couplings(config, Couplings()), p["tau"], p["n_cycles"], tuple(p["times"]))
    write_csv(destino / "oracle.csv", ["check", "deviation"], sorted(relatorio.items()), metadados)
    return {"deviations": relatorio, "max_deviation": max(relatorio.values())}


def run_resources(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    linhas = resource_table(p["L"], p["depth"])
    write_csv(destino / "resources.csv", ["stage", "layers", "source"], [tuple(l.values()) for l in linhas], metadados)
    return {f"{l['stage']}[{l['source']}]": l["layers"] for l in linhas}


def run_optimal_depth(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    ajuste = VspScalingFit(A=p["A"], alpha=p["alpha"], D0=p["D0"])
    linhas = []
    for f in p["gate_fidelities"]:
        for L in p["sizes"]:
            otimo = optimal_depth(f, L, p["D_max"], ajuste)
            linhas.append((f, L, otimo.depth, otimo.fidelity))
    write_csv(destino / "optimal_depth.csv", ["gate_fidelity", "L", "depth", "fidelity"], linhas, metadados)
    return {"points": len(linhas), "best_fidelity": max(l[3] for l in linhas)}


def run_zero_mode_splitting(config: dict, destino: Path, metadados: dict) -> dict:
    p = config["parameters"]
    energias = splitting_series(p["separations"], p["L"], _couplings(config))
    write_csv(destino / "splitting.csv", ["separation", "energy"], list(zip(p["separations"], energias)), metadados)
    try:
        inclinacao, intercepto, r2 = fit_splitting(p["separations"], energias)
    except InsufficientDataError as erro:
        logger.warning("Sem ajuste exponencial: %s", erro)
        return {"energies": energias, "slope": None, "intercept": None, "r2": None}
    return {"energies": energias, "slope": inclinacao, "intercept": intercepto, "r2": r2}


RUNNERS = {
    ExperimentKind.HEATING.value: run_heating,
    ExperimentKind.HEFF_OPTIMIZATION.value: run_heff_optimization,
    ExperimentKind.VSP_SCAN.value: run_vsp_scan,
    ExperimentKind.FUSION.value: run_fusion,
    ExperimentKind.BRAIDING.value: run_braiding,
    ExperimentKind.READOUT.value: run_readout,
    ExperimentKind.CHIRAL_EDGE.value: run_chiral_edge,
    ExperimentKind.NOISY_VSP.value: run_noisy_vsp,
    ExperimentKind.RYDBERG_SCAN.value: run_rydberg_scan,
    ExperimentKind.ORACLE_CHECK.value: run_oracle_check,
    ExperimentKind.RESOURCES.value: run_resources,
    ExperimentKind.OPTIMAL_DEPTH.value: run_optimal_depth,
    ExperimentKind.ZERO_MODE_SPLITTING.value: run_zero_mode_splitting,
}
