"""Hierarquia de exceções das simulações.

Todas as falhas numéricas ou de geometria derivam de `SimulationError`,
o que permite ao harness de experimentos convertê-las em códigos de saída
não nulos sem capturar erros de programação.
"""


class SimulationError(Exception):
    """Erro base de qualquer operação da simulação."""


class LatticeError(SimulationError):
    """Parâmetros de rede inválidos ou índices fora do intervalo."""


class GaugeError(SimulationError):
    """Configuração de calibre incompleta ou com valores diferentes de ±1."""


class HamiltonianError(SimulationError):
    """Termos do Hamiltoniano que não correspondem à adjacência da rede."""


class PurityError(SimulationError):
    """Matriz de covariância que deveria ser pura (Γ² = −I) e não é."""


class DegenerateModesError(SimulationError):
    """Modos de energia quase nula encontrados no estado fundamental.

    Attributes:
        modos: Índices dos modos degenerados, em ordem crescente de energia.
    """

    def __init__(self, modos, energias=None):
        self.modos = list(modos)
        self.energias = None if energias is None else list(energias)
        super().__init__(
            f"Modos de energia quase nula {self.modos}: informe as ocupações explicitamente."
        )


class BranchAmbiguityError(SimulationError):
    """O logaritmo matricial não está no ramo principal."""


class SingularOverlapError(SimulationError):
    """Estados exatamente ortogonais: (Γ₁ + Γ₂) não é invertível."""


class ConvergenceError(SimulationError):
    """Uma etapa de otimização não atingiu o limiar exigido.

    Attributes:
        etapa: Índice da etapa (a partir de zero) que falhou.
        custo: Último custo obtido na etapa.
    """

    def __init__(self, etapa, custo, limiar):
        self.etapa = etapa
        self.custo = custo
        self.limiar = limiar
        super().__init__(
            f"Etapa {etapa} terminou com custo {custo:.3e}, acima do limiar {limiar:.3e}."
        )


class NonFiniteCostError(SimulationError):
    """Custo ou gradiente não finito durante a otimização."""


class InsufficientDataError(SimulationError):
    """Pontos insuficientes para um ajuste."""


class GeometryError(SimulationError):
    """Geometria de experimento que não cabe na rede escolhida."""


class StaleFrameError(SimulationError):
    """Base lógica construída para outra configuração de ligações invertidas."""


class MissingAnglesError(SimulationError):
    """Backend de circuito sem ângulos base otimizados."""


class IntegratorInstabilityError(SimulationError):
    """Resíduo de pureza acima do limite: reduza o passo de integração."""


class NoMinimumError(SimulationError):
    """Nenhum mínimo local encontrado dentro do orçamento de tempo."""


class UngappedTwoLevelError(SimulationError):
    """Setor de dois vórtices sem gap: o sistema de dois níveis não é identificável."""


class OracleCapacityError(SimulationError):
    """Número de qubits acima do limite do oráculo de vetor de estado."""


class SyndromeParityError(SimulationError):
    """Linha de plaquetas com número ímpar de vórtices."""


class ResourceStageError(SimulationError):
    """Etapa desconhecida na estimativa de recursos."""
