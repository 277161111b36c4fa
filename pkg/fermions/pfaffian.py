"""Pfaffiano de matrizes reais antissimétricas.

Tridiagonalização de Parlett–Reid com pivotamento parcial, O(N³).
"""
import numpy as np

from core.conf import parametro


def skew_residue(M: np.ndarray) -> float:
    """Maior entrada de |M + Mᵀ|."""
    if M.size == 0:
        return 0.0
    return float(np.max(np.abs(M + M.T)))


def antisymmetrize(M: np.ndarray) -> np.ndarray:
    """Projeta M na parte antissimétrica, ½(M − Mᵀ)."""
    return 0.5 * (M - M.T)


def pfaffian(M: np.ndarray, tol: float | None = None) -> float:
    """Calcula Pf(M) para M real antissimétrica de dimensão par.

    Args:
        M: Matriz quadrada real com Mᵀ = −M.
        tol: Tolerância relativa para a antissimetria; padrão SKEW_TOL
            escalado pela maior entrada de M.

    Returns:
        O Pfaffiano, com Pf(M)² = det(M).

    Raises:
        ValueError: Matriz não quadrada, de dimensão ímpar ou não antissimétrica.
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"Pfaffiano exige matriz quadrada; recebido {A.shape}.")
    n = A.shape[0]
    if n % 2:
        raise ValueError(f"Pfaffiano de dimensão ímpar ({n}) é identicamente nulo e não é aceito.")
    if n == 0:
        return 1.0
    escala = max(1.0, float(np.max(np.abs(A))))
    limite = (parametro("SKEW_TOL") if tol is None else tol) * escala * max(1, n)
    if skew_residue(A) > limite:
        raise ValueError(f"Matriz não antissimétrica (resíduo {skew_residue(A):.2e}).")
    A = antisymmetrize(A)

    valor = 1.0
    for k in range(0, n - 1, 2):
        pivo = k + 1 + int(np.argmax(np.abs(A[k + 1:, k])))
        if pivo != k + 1:
            A[[k + 1, pivo], :] = A[[pivo, k + 1], :]
            A[:, [k + 1, pivo]] = A[:, [pivo, k + 1]]
            valor = -valor
        if A[k + 1, k] == 0.0:
            return 0.0
        valor *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2:] / A[k, k + 1]
            coluna = A[k + 2:, k + 1].copy()
            A[k + 2:, k + 2:] += np.outer(tau, coluna) - np.outer(coluna, tau)
    return float(valor)
