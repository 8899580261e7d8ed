"""
高斯分布之间的距离

wasserstein2 对称；gaussian_kl(a, b) 约定 a 为模拟、b 为参考，一般不对称。
"""

import numpy as np

from src.config import config
from src.exceptions import InputError
from src.metrics.series import GaussianSeries
from src.utils import as_matrix, as_vector, clamp_psd, psd_sqrt


def _gaussian(mean, cov, name: str) -> tuple[np.ndarray, np.ndarray]:
    mu = np.atleast_1d(as_vector(mean, f"{name} mean"))
    sigma = np.atleast_2d(as_matrix(np.atleast_2d(cov), f"{name} covariance"))
    if sigma.shape != (len(mu), len(mu)):
        raise InputError(f"{name}: covariance shape {sigma.shape} does not match mean length {len(mu)}")
    return mu, clamp_psd(sigma, config.psd_tolerance, f"{name} covariance")


def wasserstein2(a: tuple, b: tuple) -> float:
    """W₂(a, b)，a、b 为 (均值, 协方差)"""
    mu1, s1 = _gaussian(*a, "a")
    mu2, s2 = _gaussian(*b, "b")
    if len(mu1) != len(mu2):
        raise InputError(f"dimension mismatch: {len(mu1)} vs {len(mu2)}")
    root1 = psd_sqrt(s1)
    cross = psd_sqrt(root1 @ s2 @ root1)
    diff = mu1 - mu2
    radicand = diff @ diff + np.trace(s1) + np.trace(s2) - 2.0 * np.trace(cross)
    return float(np.sqrt(max(radicand, 0.0)))


def _regularize(sigma: np.ndarray) -> np.ndarray:
    if np.linalg.matrix_rank(sigma) < len(sigma):
        return sigma + config.kl_regularization * np.eye(len(sigma))
    return sigma


def gaussian_kl(a: tuple, b: tuple) -> float:
    """D_KL(a ‖ b) 的闭式解；奇异协方差加 ε·I 正则"""
    mu1, s1 = _gaussian(*a, "a")
    mu2, s2 = _gaussian(*b, "b")
    if len(mu1) != len(mu2):
        raise InputError(f"dimension mismatch: {len(mu1)} vs {len(mu2)}")
    s1 = _regularize(s1)
    s2 = _regularize(s2)
    k = len(mu1)
    s2_inv = np.linalg.inv(s2)
    diff = mu2 - mu1
    _, logdet1 = np.linalg.slogdet(s1)
    _, logdet2 = np.linalg.slogdet(s2)
    value = 0.5 * (np.trace(s2_inv @ s1) + diff @ s2_inv @ diff - k + logdet2 - logdet1)
    return float(max(value, 0.0))


def _check_lengths(sim: GaussianSeries, ref: GaussianSeries):
    if len(sim) != len(ref):
        raise InputError(f"series length mismatch: {len(sim)} vs {len(ref)}")
    if len(sim) == 0:
        raise InputError("cannot compare empty series")


def mwd(sim: GaussianSeries, ref: GaussianSeries) -> float:
    """逐步 W₂ 的时间平均"""
    _check_lengths(sim, ref)
    return float(np.mean([wasserstein2(a, b) for a, b in zip(sim.steps(), ref.steps(), strict=True)]))


def mkl(sim: GaussianSeries, ref: GaussianSeries) -> float:
    _check_lengths(sim, ref)
    return float(np.mean([gaussian_kl(a, b) for a, b in zip(sim.steps(), ref.steps(), strict=True)]))
