from src.dynamics.distribution import (
    DistributionTrajectory,
    StateDistribution,
    error_second_moment,
    propagate_joint,
    propagate_moments,
)
from src.dynamics.layout import (
    ACCELERATION,
    EXCITATION,
    EXTENDED_MUSCLE,
    FORCE,
    INITIAL_POSITION,
    MINJERK,
    MUSCLE,
    POSITION,
    TARGET,
    TWO_OL,
    VELOCITY,
    StateLayout,
)
from src.dynamics.system import LinearSystem, StateVector, Trajectory, rollout, step

__all__ = [
    "ACCELERATION",
    "EXCITATION",
    "EXTENDED_MUSCLE",
    "FORCE",
    "INITIAL_POSITION",
    "MINJERK",
    "MUSCLE",
    "POSITION",
    "TARGET",
    "TWO_OL",
    "VELOCITY",
    "DistributionTrajectory",
    "LinearSystem",
    "StateDistribution",
    "StateLayout",
    "StateVector",
    "Trajectory",
    "error_second_moment",
    "propagate_joint",
    "propagate_moments",
    "rollout",
    "step",
]
