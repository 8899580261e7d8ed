"""
对称半正定矩阵的数值工具

协方差传播、Wasserstein 距离与卡尔曼增益都依赖这里的对称化、矩阵平方根与伪逆。
"""

import numpy as np

from src.exceptions import ContractViolationError


def as_vector(values, name: str = "vector") -> np.ndarray:
    """转换为一维 float 数组并检查有限性"""
    array = np.atleast_1d(np.asarray(values, dtype=float))
    if array.ndim != 1:
        raise ContractViolationError(f"{name} must be one-dimensional, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ContractViolationError(f"{name} contains non-finite entries")
    return array


def as_matrix(values, name: str = "matrix") -> np.ndarray:
    """转换为二维 float 数组并检查有限性；标量视为 1×1"""
    array = np.asarray(values, dtype=float)
    if array.ndim == 0:
        array = array.reshape(1, 1)
    if array.ndim != 2:
        raise ContractViolationError(f"{name} must be two-dimensional, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ContractViolationError(f"{name} contains non-finite entries")
    return array


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + np.swapaxes(matrix, -1, -2))


def clamp_psd(matrix: np.ndarray, tolerance: float = 1e-9, name: str = "covariance") -> np.ndarray:
    """对称化并把 [-tolerance, 0) 内的特征值截断为 0

    更负的特征值说明矩阵不是半正定的，抛出 ContractViolationError。容差按矩阵尺度放大。
    """
    sym = symmetrize(np.asarray(matrix, dtype=float))
    if sym.size == 0:
        return sym
    eigvals, eigvecs = np.linalg.eigh(sym)
    scale = max(1.0, float(np.max(np.abs(eigvals))))
    if eigvals[0] < -tolerance * scale:
        raise ContractViolationError(f"{name} is not positive semidefinite (min eigenvalue {eigvals[0]:.3e})")
    if eigvals[0] >= 0.0:
        return sym
    clipped = np.clip(eigvals, 0.0, None)
    return symmetrize((eigvecs * clipped) @ eigvecs.T)


def psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    """对称半正定矩阵的主平方根（特征分解，负特征值截断为 0）"""
    eigvals, eigvecs = np.linalg.eigh(symmetrize(np.asarray(matrix, dtype=float)))
    root = np.sqrt(np.clip(eigvals, 0.0, None))
    return symmetrize((eigvecs * root) @ eigvecs.T)


def psd_pinv(matrix: np.ndarray, rcond: float = 1e-12) -> np.ndarray:
    """对称半正定矩阵的伪逆

    相对最大特征值小于 rcond 的方向视为零空间。全零矩阵返回全零。
    """
    eigvals, eigvecs = np.linalg.eigh(symmetrize(np.asarray(matrix, dtype=float)))
    top = float(np.max(np.abs(eigvals))) if eigvals.size else 0.0
    if top == 0.0:
        return np.zeros_like(matrix, dtype=float)
    keep = eigvals > rcond * top
    inverse = np.zeros_like(eigvals)
    inverse[keep] = 1.0 / eigvals[keep]
    return symmetrize((eigvecs * inverse) @ eigvecs.T)
