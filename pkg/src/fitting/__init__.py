from src.fitting.evolution import FitConfig, FitResult, differential_evolution
from src.fitting.fit import fit
from src.fitting.losses import loss_deterministic, loss_stochastic
from src.fitting.space import ParameterBound, ParameterSpace

__all__ = [
    "FitConfig",
    "FitResult",
    "ParameterBound",
    "ParameterSpace",
    "differential_evolution",
    "fit",
    "loss_deterministic",
    "loss_stochastic",
]
