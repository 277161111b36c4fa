"""Aquecimento sob o ciclo de Floquet.

O estado inicial é o fundamental de A_alvo; a energia de A_alvo é medida
a cada período. O platô é a média sobre a segunda metade da série.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import stats

from core.conf import escolher
from core.exceptions import InsufficientDataError
from fermions.gaussian import check_pure, conjugate, energy, reproject

logger = logging.getLogger(__name__)

REPROJECT_EVERY = 200


@dataclass(frozen=True, eq=False)
class HeatingCurve:
    """Série E(t) de um experimento de aquecimento.

    Attributes:
        tau: Período do ciclo.
        cycles: Índices dos ciclos (0 é o estado inicial).
        energies: Energia de A_alvo após cada ciclo.
    """

    tau: float
    cycles: np.ndarray
    energies: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return self.cycles * self.tau

    @property
    def initial(self) -> float:
        return float(self.energies[0])

    def window(self, start: int, stop: int | None = None) -> np.ndarray:
        """Energias nos ciclos [start, stop)."""
        fim = len(self.cycles) if stop is None else stop
        return self.energies[(self.cycles >= start) & (self.cycles < fim)]

    @property
    def plateau(self) -> np.ndarray:
        return self.energies[len(self.energies) // 2:]

    @property
    def plateau_mean(self) -> float:
        return float(np.mean(self.plateau))

    @property
    def plateau_std(self) -> float:
        return float(np.std(self.plateau))

    @property
    def offset(self) -> float:
        """Energia absorvida: média do platô menos a energia inicial."""
        return self.plateau_mean - self.initial

    def rows(self):
        """Linhas (ciclo, tempo, energia) para exportação em CSV."""
        return [(int(c), float(t), float(e)) for c, t, e in zip(self.cycles, self.times, self.energies)]


def heating_curve(
    gamma0: np.ndarray,
    A_target: np.ndarray,
    cycle: np.ndarray,
    tau: float,
    n_cycles: int | None = None,
) -> HeatingCurve:
    """Aplica `n_cycles` períodos de `cycle` e registra a energia.

    Args:
        gamma0: Estado inicial puro.
        A_target: Hamiltoniano cuja energia é medida.
        cycle: Matriz ortogonal de um período (ver `floquet_cycle`).
        tau: Duração do período.
        n_cycles: Número de períodos; padrão HEATING_CYCLES.
    """
    check_pure(gamma0)
    total = escolher(n_cycles, "HEATING_CYCLES")
    if total < 2:
        raise InsufficientDataError("São necessários ao menos dois ciclos.")
    energias = np.empty(total + 1)
    gamma = np.array(gamma0, dtype=float)
    energias[0] = energy(gamma, A_target)
    for n in range(1, total + 1):
        gamma = conjugate(gamma, cycle)
        if n % REPROJECT_EVERY == 0:
            gamma = reproject(gamma)
        energias[n] = energy(gamma, A_target)
    curva = HeatingCurve(tau=tau, cycles=np.arange(total + 1), energies=energias)
    logger.info(
        "Aquecimento τ=%g: E0=%.6f, platô=%.6f ± %.2e", tau, curva.initial, curva.plateau_mean, curva.plateau_std
    )
    return curva


def heating_exponent(taus, offsets) -> tuple:
    """Ajuste log-log offset ∝ τ^p.

    Returns:
        (p, prefator, r²).

    Raises:
        InsufficientDataError: Menos de dois pontos ou offsets não positivos.
    """
    taus, offsets = np.asarray(taus, dtype=float), np.asarray(offsets, dtype=float)
    if taus.size < 2 or np.any(offsets <= 0):
        raise InsufficientDataError("O ajuste exige ao menos dois offsets positivos.")
    ajuste = stats.linregress(np.log(taus), np.log(offsets))
    return float(ajuste.slope), float(np.exp(ajuste.intercept)), float(ajuste.rvalue**2)


def plateau_drift(curve: HeatingCurve, early: tuple, late: tuple) -> float:
    """Diferença entre as médias de duas janelas, relativa ao offset."""
    cedo, tarde = curve.window(*early), curve.window(*late)
    if cedo.size == 0 or tarde.size == 0:
        raise InsufficientDataError("Janela de ciclos vazia.")
    return float(abs(np.mean(tarde) - np.mean(cedo)) / abs(curve.offset))
