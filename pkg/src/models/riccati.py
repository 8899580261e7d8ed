"""
有限时域离散 Riccati 反向递推

无噪声时：
    L_n = (R + Bᵀ S_{n+1} B)⁻¹ Bᵀ S_{n+1} A
    S_n = Q_n + Aᵀ S_{n+1} (A − B L_n),   S_N = Q_N

带信号相关控制噪声 σu 与给定卡尔曼增益时，代价函数对 (x, e = x − x̂) 为二次型 xᵀSx x + eᵀSe e：
    M   = R + Bᵀ Sx B + σu² Bᵀ (Sx + Se) B
    L_n = M⁻¹ Bᵀ Sx A
    Sx  ← Q_n + Aᵀ Sx (A − B L_n)
    Se  ← Aᵀ Sx B L_n + (A − K_n H_n)ᵀ Se (A − K_n H_n)
"""

import numpy as np

from src.dynamics import LinearSystem
from src.exceptions import ContractViolationError, SolverDivergenceError
from src.utils import symmetrize


def solve_riccati(
    system: LinearSystem,
    state_costs: np.ndarray,
    control_cost,
    sigma_u: float = 0.0,
    kalman_gains: np.ndarray | None = None,
    observation_matrices: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """返回反馈增益 (N, m, k) 与代价矩阵 Sx (N+1, k, k)

    Raises:
        SolverDivergenceError: R + Bᵀ S B 非正定或出现非有限值
    """
    A, B = system.A, system.B
    k, m = system.k, system.m
    Q = np.asarray(state_costs, dtype=float)
    if Q.ndim != 3 or Q.shape[1:] != (k, k) or Q.shape[0] < 2:
        raise ContractViolationError(f"state costs must be (N+1, {k}, {k}), got {Q.shape}")
    R = np.atleast_2d(np.asarray(control_cost, dtype=float))
    if R.shape != (m, m):
        raise ContractViolationError(f"control cost must be {m}x{m}, got {R.shape}")
    N = Q.shape[0] - 1
    with_estimator = kalman_gains is not None
    if with_estimator and (observation_matrices is None or len(kalman_gains) != N):
        raise ContractViolationError("kalman gains and observation matrices must cover every step")

    gains = np.empty((N, m, k))
    cost_to_go = np.empty((N + 1, k, k))
    Sx = symmetrize(Q[N])
    Se = np.zeros((k, k))
    cost_to_go[N] = Sx
    for n in range(N - 1, -1, -1):
        M = R + B.T @ Sx @ B
        if sigma_u > 0:
            M = M + sigma_u**2 * B.T @ (Sx + Se) @ B
        M = symmetrize(M)
        if not np.all(np.isfinite(M)):
            raise SolverDivergenceError(f"non-finite Riccati denominator at step {n}")
        try:
            np.linalg.cholesky(M)
        except np.linalg.LinAlgError:
            raise SolverDivergenceError(f"Riccati denominator not positive definite at step {n}") from None

        L = np.linalg.solve(M, B.T @ Sx @ A)
        closed = A - B @ L
        if with_estimator:
            estimator = A - kalman_gains[n] @ observation_matrices[n]
            Se = symmetrize(A.T @ Sx @ B @ L + estimator.T @ Se @ estimator)
        Sx = symmetrize(Q[n] + A.T @ Sx @ closed)
        gains[n] = L
        cost_to_go[n] = Sx

    if not np.all(np.isfinite(gains)):
        raise SolverDivergenceError("non-finite feedback gains")
    return gains, cost_to_go
