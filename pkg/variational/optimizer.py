"""Descida de gradiente com busca linear de Armijo.

Qualquer objeto com `cost(x)`, `gradient(x)` e `base_profile(D)` serve
como problema; `HeffProblem` e `VspProblem` são os dois usados aqui.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from core.conf import escolher
from core.exceptions import MissingAnglesError, NonFiniteCostError, SingularOverlapError
from variational.choices import InitMode

logger = logging.getLogger(__name__)

MAX_PERTURBATIONS = 5


@dataclass(frozen=True)
class OptimizerConfig:
    """Parâmetros da otimização.

    Attributes:
        max_iterations: Limite de passos aceitos.
        initial_step: Passo inicial da busca linear; dobra após cada sucesso.
        cost_tolerance: Parada quando a redução do custo fica abaixo disto.
        gradient_tolerance: Parada quando ‖∇Q‖ fica abaixo disto.
        seed: Semente do ruído de inicialização.
        init_mode: `randomized-symmetric`, `bootstrap` ou `explicit`.
        noise: Amplitude do ruído uniforme; padrão RANDOM_SYMMETRIC_NOISE.
        armijo: Constante de Armijo; padrão ARMIJO.
        backtrack: Fator de redução do passo; padrão BACKTRACK.
        max_backtracks: Reduções antes de declarar estagnação.
    """

    max_iterations: int = 300
    initial_step: float = 0.1
    cost_tolerance: float = 1e-12
    gradient_tolerance: float = 1e-8
    seed: int | None = None
    init_mode: str = InitMode.RANDOMIZED_SYMMETRIC
    noise: float | None = None
    armijo: float | None = None
    backtrack: float | None = None
    max_backtracks: int = 40

    def __post_init__(self):
        if self.max_iterations < 1 or self.max_backtracks < 1:
            raise ValueError("Os limites de iterações devem ser positivos.")
        if self.initial_step <= 0 or self.cost_tolerance <= 0 or self.gradient_tolerance <= 0:
            raise ValueError("Passo e tolerâncias devem ser positivos.")
        if self.init_mode not in InitMode.values:
            raise ValueError(f"Modo de inicialização desconhecido: {self.init_mode!r}.")
        fator = escolher(self.backtrack, "BACKTRACK")
        if not 0 < fator < 1:
            raise ValueError("O fator de redução deve estar em (0, 1).")


@dataclass
class OptimizationResult:
    """Melhor ponto visto e histórico da otimização."""

    x: np.ndarray
    cost: float
    trace: list = field(default_factory=list)
    gradient_norms: list = field(default_factory=list)
    converged: bool = False
    iterations: int = 0


def randomized_symmetric(base: np.ndarray, noise: float, rng: np.random.Generator) -> np.ndarray:
    """Perfil espelhado entre blocos (b ↔ D − 1 − b) mais ruído uniforme espelhado."""
    perfil = 0.5 * (base + base[::-1])
    ruido = rng.uniform(-noise, noise, size=base.shape)
    return perfil + 0.5 * (ruido + ruido[::-1])


def initial_angles(problem, depth: int, config: OptimizerConfig, initial=None) -> np.ndarray:
    """Ângulos iniciais achatados conforme `config.init_mode`."""
    if config.init_mode == InitMode.RANDOMIZED_SYMMETRIC:
        rng = np.random.default_rng(config.seed)
        return randomized_symmetric(problem.base_profile(depth), escolher(config.noise, "RANDOM_SYMMETRIC_NOISE"), rng).ravel()
    if initial is None:
        raise MissingAnglesError(f"O modo {config.init_mode} exige ângulos iniciais.")
    x = np.asarray(initial, dtype=float).ravel()
    if x.size != 3 * depth:
        raise MissingAnglesError(f"Esperados {3 * depth} ângulos; recebidos {x.size}.")
    return x


def _checked(valor, x) -> float:
    if not np.all(np.isfinite(valor)):
        raise NonFiniteCostError(f"Valor não finito em x = {np.array2string(x, precision=4)}.")
    return valor


def optimize(problem, depth: int, config: OptimizerConfig | None = None, initial=None) -> OptimizationResult:
    """Minimiza `problem.cost` por descida de gradiente com backtracking.

    Returns:
        O melhor ponto visto, com traço de custos aceitos (não crescente).

    Raises:
        NonFiniteCostError: Custo ou gradiente não finitos no ponto atual.
    """
    config = config or OptimizerConfig()
    c_armijo = escolher(config.armijo, "ARMIJO")
    fator = escolher(config.backtrack, "BACKTRACK")
    rng = np.random.default_rng(config.seed)
    x = initial_angles(problem, depth, config, initial)

    for tentativa in range(MAX_PERTURBATIONS + 1):
        try:
            custo = _checked(problem.cost(x), x)
            gradiente = _checked(problem.gradient(x), x)
            break
        except SingularOverlapError:
            if tentativa == MAX_PERTURBATIONS:
                raise
            logger.warning("Sobreposição nula no ponto inicial; perturbando os ângulos.")
            x = x + rng.uniform(-0.05, 0.05, size=x.shape)

    resultado = OptimizationResult(x=x.copy(), cost=custo, trace=[custo], gradient_norms=[float(np.linalg.norm(gradiente))])
    passo = config.initial_step
    for iteracao in range(1, config.max_iterations + 1):
        norma2 = float(gradiente @ gradiente)
        if np.sqrt(norma2) < config.gradient_tolerance:
            resultado.converged = True
            break
        aceito = False
        for _ in range(config.max_backtracks):
            candidato = x - passo * gradiente
            novo = problem.cost(candidato)
            if np.isfinite(novo) and novo <= custo - c_armijo * passo * norma2:
                aceito = True
                break
            passo *= fator
        if not aceito:
            logger.debug("Busca linear estagnada na iteração %d.", iteracao)
            resultado.converged = True
            break
        reducao = custo - novo
        x, custo = candidato, float(novo)
        try:
            gradiente = _checked(problem.gradient(x), x)
        except SingularOverlapError:
            logger.warning("Gradiente singular na iteração %d; interrompendo.", iteracao)
            break
        resultado.trace.append(custo)
        resultado.gradient_norms.append(float(np.linalg.norm(gradiente)))
        resultado.iterations = iteracao
        if custo < resultado.cost:
            resultado.x, resultado.cost = x.copy(), custo
        if reducao < config.cost_tolerance:
            resultado.converged = True
            break
        passo *= 2.0
    logger.info(
        "Otimização D=%d: custo %.6e em %d iterações (convergiu=%s).",
        depth,
        resultado.cost,
        resultado.iterations,
        resultado.converged,
    )
    return resultado
