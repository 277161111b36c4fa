"""Leitura da ocupação de um par de Majoranas adjacentes por um pulso de campo local.

O par é criado por uma única ligação Z com J invertido, a geometria do
último passo da fusão. Um campo −h σ^z no extremo ímpar dessa ligação
acopla o modo localizado ao setor com u* invertido. O valor ⟨W_p⟩(t) da
plaqueta vizinha oscila de forma diferente para o modo vazio e ocupado; a
leitura para no primeiro mínimo de ⟨W_p⟩ do estado ocupado e a fidelidade
é |W_vazio − W_ocupado|/2. Na versão composta uma segunda etapa de mesma
duração usa o Hamiltoniano com J e K invertidos e o mesmo campo.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from core.conf import escolher
from core.exceptions import NoMinimumError, UngappedTwoLevelError
from fermions.gauge import GaugeConfig, uniform_gauge
from fermions.gaussian import canonical_form, energy, excite_mode, ground_state, overlap, parity
from fermions.hamiltonian import Couplings, assemble_hamiltonian
from lattice.choices import LinkType
from lattice.honeycomb import LatticeGraph, build_lattice
from readout.fgs import ExtendedHamiltonian, extended_hamiltonian, integrate

logger = logging.getLogger(__name__)

DEFAULT_COUPLINGS = Couplings(J=1.0, K=0.2)


@dataclass(frozen=True, eq=False)
class ReadoutSetup:
    """Rede com uma ligação Z invertida e o campo no seu extremo ímpar.

    Attributes:
        A: Hamiltoniano de matéria com a ligação invertida.
        mode: Modo com maior peso em c_site entre os dois mais baixos.
        gamma_empty: Estado fundamental.
        gamma_occupied: O mesmo estado com `mode` ocupado.
    """

    lattice: LatticeGraph
    gauge: GaugeConfig
    couplings: Couplings
    site: int
    link: int
    A: np.ndarray
    mode: int
    gamma_empty: np.ndarray
    gamma_occupied: np.ndarray

    def system(self, h: float) -> ExtendedHamiltonian:
        return extended_hamiltonian(self.lattice, self.gauge, self.couplings, self.site, h)


def readout_setup(L1: int = 5, L2: int = 3, couplings: Couplings | None = None) -> ReadoutSetup:
    """Toro L1 × L2 uniforme com a ligação Z de a(1, 0) invertida e o campo em a(1, 0)."""
    couplings = couplings or DEFAULT_COUPLINGS
    rede = build_lattice(L1, L2)
    calibre = uniform_gauge(rede)
    sitio = rede.odd_site(1, 0)
    ligacao = rede.site_link(sitio, LinkType.Z)
    couplings = couplings.with_scale(ligacao, -1.0)
    A = assemble_hamiltonian(rede, calibre, couplings)
    Q, _ = canonical_form(A)
    pesos = [Q[sitio, 2 * k] ** 2 + Q[sitio, 2 * k + 1] ** 2 for k in range(2)]
    modo = int(np.argmax(pesos))
    vazio = ground_state(A, occupations=[])
    return ReadoutSetup(rede, calibre, couplings, sitio, ligacao, A, modo, vazio, excite_mode(vazio, A, modo))


def first_minimum(times, values) -> tuple:
    """Primeiro mínimo local amostrado, refinado por uma parábola em três pontos.

    Raises:
        NoMinimumError: A série não tem mínimo interior.
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    for k in range(1, v.size - 1):
        if v[k] < v[k - 1] and v[k] <= v[k + 1]:
            curvatura = v[k - 1] - 2.0 * v[k] + v[k + 1]
            if curvatura <= 0:
                return float(t[k]), float(v[k])
            h = t[k + 1] - t[k]
            deslocamento = 0.5 * h * (v[k - 1] - v[k + 1]) / curvatura
            valor = v[k] - 0.25 * (v[k - 1] - v[k + 1]) * deslocamento / h
            return float(t[k] + deslocamento), float(valor)
    raise NoMinimumError(f"⟨W_p⟩ sem mínimo local até t = {t[-1]:g}.")


@dataclass
class ReadoutResult:
    """Tempo de leitura, valores finais de ⟨W_p⟩ e fidelidade.

    Attributes:
        times: Instantes do protocolo executado; na versão composta a
            segunda etapa continua de t_readout até 2 t_readout.
        trace_empty: ⟨W_p⟩ do estado vazio nesses instantes.
        trace_occupied: ⟨W_p⟩ do estado ocupado nesses instantes.
        stages: Etapa (1 ou 2) de cada instante.
        pulse_times: Instantes do pulso simples até t_max, usado na busca do mínimo.
        pulse_occupied: ⟨W_p⟩ do estado ocupado ao longo desse pulso.
    """

    h: float
    t_readout: float
    w_empty: float
    w_occupied: float
    composite: bool
    times: np.ndarray
    trace_empty: np.ndarray
    trace_occupied: np.ndarray
    stages: np.ndarray | None = None
    pulse_times: np.ndarray | None = None
    pulse_occupied: np.ndarray | None = None

    @property
    def fidelity(self) -> float:
        return 0.5 * abs(self.w_empty - self.w_occupied)

    def rows(self):
        etapas = np.ones(len(self.times), dtype=int) if self.stages is None else self.stages
        for t, etapa, vazio, ocupado in zip(self.times, etapas, self.trace_empty, self.trace_occupied):
            yield {"time": float(t), "stage": int(etapa), "w_empty": float(vazio), "w_occupied": float(ocupado)}


def readout_traces(setup: ReadoutSetup, h: float, t_max: float, dt: float | None = None) -> tuple:
    """⟨W_p⟩(t) dos estados vazio e ocupado sob o campo.

    Returns:
        (tempos, traço vazio, traço ocupado).
    """
    sistema = setup.system(h)
    vazio = integrate(sistema, sistema.initial_state(setup.gamma_empty), t_max, dt, sistema.plaquette_value)
    ocupado = integrate(sistema, sistema.initial_state(setup.gamma_occupied), t_max, dt, sistema.plaquette_value)
    return ocupado.times, vazio.values, ocupado.values


def _staged_trace(sistema: ExtendedHamiltonian, gamma: np.ndarray, duracao: float, dt, composite: bool) -> tuple:
    etapas = (sistema, sistema.reversed()) if composite else (sistema,)
    estado = sistema.initial_state(gamma)
    tempos, valores, rotulos = [], [], []
    for k, etapa in enumerate(etapas):
        trajetoria = integrate(etapa, estado, duracao, dt, sistema.plaquette_value)
        inicio = 0 if k == 0 else 1
        tempos.append(k * duracao + trajetoria.times[inicio:])
        valores.append(trajetoria.values[inicio:])
        rotulos.append(np.full(trajetoria.times.size - inicio, k + 1))
        estado = trajetoria.gamma
    return np.concatenate(tempos), np.concatenate(valores), np.concatenate(rotulos)


def readout_protocol(setup: ReadoutSetup, h: float, t_max: float, dt: float | None = None, composite: bool = False) -> ReadoutResult:
    """Pulso de campo até o primeiro mínimo do estado ocupado.

    Com `composite` a segunda etapa, de mesma duração, também é registrada
    e o traço cobre as duas.

    Raises:
        NoMinimumError: Sem mínimo até `t_max`.
        IntegratorInstabilityError: Passo grande demais.
    """
    pulso, _, pulso_ocupado = readout_traces(setup, h, t_max, dt)
    t_leitura, _ = first_minimum(pulso, pulso_ocupado)
    sistema = setup.system(h)
    tempos, traco_vazio, etapas = _staged_trace(sistema, setup.gamma_empty, t_leitura, dt, composite)
    _, traco_ocupado, _ = _staged_trace(sistema, setup.gamma_occupied, t_leitura, dt, composite)
    resultado = ReadoutResult(
        h,
        t_leitura,
        float(traco_vazio[-1]),
        float(traco_ocupado[-1]),
        composite,
        tempos,
        traco_vazio,
        traco_ocupado,
        stages=etapas,
        pulse_times=pulso,
        pulse_occupied=pulso_ocupado,
    )
    logger.info(
        "Leitura h=%.3f (composta=%s): t=%.3f, fidelidade %.4f", h, composite, t_leitura, resultado.fidelity
    )
    return resultado


def calibration_sweep(setup: ReadoutSetup, fields, t_max: float, dt: float | None = None, composite: bool = False) -> list:
    """`readout_protocol` para cada h; campos sem mínimo ficam como None."""
    resultados = []
    for h in fields:
        try:
            resultados.append(readout_protocol(setup, h, t_max, dt, composite))
        except NoMinimumError as erro:
            logger.warning("Campo h=%.3f descartado: %s", h, erro)
            resultados.append(None)
    return resultados


def best_field(results) -> ReadoutResult | None:
    validos = [r for r in results if r is not None]
    return max(validos, key=lambda r: r.fidelity) if validos else None


@dataclass(frozen=True)
class TwoLevelModel:
    """Sistema de dois níveis |ocupado, u*⟩ ↔ |dois vórtices, −u*⟩.

    Attributes:
        detuning: E(dois vórtices) − E(ocupado).
        coupling: h |⟨dois vórtices| c_j |ocupado⟩|.
    """

    detuning: float
    coupling: float

    @property
    def frequency(self) -> float:
        return float(np.sqrt(self.coupling**2 + 0.25 * self.detuning**2))

    @property
    def amplitude(self) -> float:
        if self.frequency == 0:
            return 0.0
        return float(self.coupling**2 / self.frequency**2)

    def plaquette(self, t) -> np.ndarray:
        return tls_model(np.asarray(t, dtype=float), self.amplitude, self.frequency)

    @classmethod
    def from_oscillation(cls, amplitude: float, frequency: float, sign: float = 1.0) -> "TwoLevelModel":
        """Inverte A = g²/Ω² e Ω² = g² + δ²/4; o sinal de δ não aparece no traço."""
        fracao = min(max(amplitude, 0.0), 1.0)
        return cls(
            detuning=float(np.copysign(2.0 * frequency * np.sqrt(1.0 - fracao), sign)),
            coupling=float(frequency * np.sqrt(fracao)),
        )


@dataclass(frozen=True)
class TwoLevelEstimate:
    """Parâmetros espectrais e os extraídos do traço simulado.

    Attributes:
        spectral: Dessintonia e acoplamento dos espectros quadráticos.
        fitted: Os mesmos parâmetros vindos do ajuste; None se o ajuste falhou.
        amplitude: A ajustado.
        frequency: ω ajustado.
    """

    h: float
    spectral: TwoLevelModel
    fitted: TwoLevelModel | None = None
    amplitude: float | None = None
    frequency: float | None = None

    @property
    def detuning_deviation(self) -> float | None:
        """|δ_ajuste − δ_espectral| / |δ_espectral|."""
        if self.fitted is None or self.spectral.detuning == 0:
            return None
        return abs(self.fitted.detuning - self.spectral.detuning) / abs(self.spectral.detuning)

    def summary(self) -> dict:
        return {
            "h": self.h,
            "detuning": self.spectral.detuning,
            "coupling": self.spectral.coupling,
            "predicted_frequency": self.spectral.frequency,
            "predicted_amplitude": self.spectral.amplitude,
            "fitted_frequency": self.frequency,
            "fitted_amplitude": self.amplitude,
            "fitted_detuning": None if self.fitted is None else self.fitted.detuning,
            "fitted_coupling": None if self.fitted is None else self.fitted.coupling,
            "detuning_deviation": self.detuning_deviation,
        }


def tls_model(t, amplitude: float, frequency: float):
    """⟨W_p⟩(t) = 1 − 2A sin²(ωt)."""
    return 1.0 - 2.0 * amplitude * np.sin(frequency * t) ** 2


def two_vortex_hamiltonian(setup: ReadoutSetup) -> np.ndarray:
    """A no setor com u* invertido, mantendo a inversão de J."""
    return assemble_hamiltonian(setup.lattice, setup.gauge.flipped([setup.link]), setup.couplings)


def spectral_tls(setup: ReadoutSetup, h: float, zero_tol: float | None = None) -> TwoLevelModel:
    """Dessintonia e acoplamento a partir dos dois setores quadráticos.

    Raises:
        UngappedTwoLevelError: O setor de dois vórtices tem modo nulo.
    """
    A2 = two_vortex_hamiltonian(setup)
    _, eps2 = canonical_form(A2)
    if eps2[0] < escolher(zero_tol, "ZERO_MODE_TOL"):
        raise UngappedTwoLevelError(f"Menor energia de modo no setor de dois vórtices: {eps2[0]:.2e}.")
    ocupado = energy(setup.gamma_occupied, setup.A)
    apos_pulso = np.array(setup.gamma_occupied, dtype=float)
    apos_pulso[setup.site, :] *= -1.0
    apos_pulso[:, setup.site] *= -1.0
    dois_vortices = ground_state(A2, parity_sector=parity(apos_pulso))
    return TwoLevelModel(
        detuning=energy(dois_vortices, A2) - ocupado,
        coupling=abs(h) * float(np.sqrt(overlap(dois_vortices, apos_pulso))),
    )


def fit_tls(times, values, initial: TwoLevelModel | None = None) -> tuple:
    """Ajusta 1 − 2A sin²(ωt) ao traço.

    Returns:
        (A, ω).
    """
    chute = (0.5, 1.0) if initial is None else (max(initial.amplitude, 1e-3), max(initial.frequency, 1e-3))
    parametros, _ = optimize.curve_fit(tls_model, np.asarray(times), np.asarray(values), p0=chute, maxfev=20000)
    return float(parametros[0]), float(abs(parametros[1]))


def tls_parameters(
    setup: ReadoutSetup,
    h: float,
    times=None,
    values=None,
    t_max: float | None = None,
    dt: float | None = None,
) -> TwoLevelEstimate:
    """Modelo de dois níveis espectral e ajustado ao ⟨W_p⟩(t) do estado ocupado.

    Sem `times`/`values` o pulso é simulado por `t_max`, por padrão dois
    períodos previstos.

    Raises:
        UngappedTwoLevelError: O setor de dois vórtices tem modo nulo.
    """
    espectral = spectral_tls(setup, h)
    if times is None or values is None:
        duracao = t_max if t_max is not None else 2.0 * np.pi / espectral.frequency
        times, _, values = readout_traces(setup, h, duracao, dt)
    try:
        amplitude, frequencia = fit_tls(times, values, espectral)
    except RuntimeError as erro:
        logger.warning("Ajuste de dois níveis falhou em h=%.3f: %s", h, erro)
        return TwoLevelEstimate(h, espectral)
    ajustado = TwoLevelModel.from_oscillation(amplitude, frequencia, np.sign(espectral.detuning) or 1.0)
    logger.debug(
        "Dois níveis h=%.3f: δ=%.4f (ajuste %.4f), g=%.4f (ajuste %.4f)",
        h,
        espectral.detuning,
        ajustado.detuning,
        espectral.coupling,
        ajustado.coupling,
    )
    return TwoLevelEstimate(h, espectral, ajustado, amplitude, frequencia)


def readout_summary(setup: ReadoutSetup, result: ReadoutResult) -> dict:
    return {
        "h": result.h,
        "t_readout": result.t_readout,
        "w_empty": result.w_empty,
        "w_occupied": result.w_occupied,
        "fidelity": result.fidelity,
        "composite": result.composite,
        "mode": setup.mode,
        "site": setup.site,
        "link": setup.link,
    }
