from src.models.base import ControlLaw, PointingModel
from src.models.elqg import ELQGModel, SaccadeObservation, solve_elqg
from src.models.estimation import ConstantObservation, InitialBelief, SolverOptions, solve_coordinate_descent
from src.models.factory import ModelFactory
from src.models.lqg import LQGModel, StochasticModel, lqg_observation, solve_lqg
from src.models.lqr import LQRModel, closed_loop_rollout, lqr_cost, solve_lqr
from src.models.minjerk import MinJerkBoundary, MinJerkModel, minjerk_polynomial, minjerk_trajectory
from src.models.muscle import build_muscle_system, control_cost, state_cost_matrix, state_cost_schedule
from src.models.params import ELQGParams, LQCostWeights, LQGNoiseParams, MinJerkParams, TwoOLParams
from src.models.riccati import solve_riccati
from src.models.second_order_lag import SecondOrderLagModel, build_2ol_system, simulate_2ol_eq
from src.models.simulation import SimulationRun, predict_distribution, run_model, sample_ensemble, sample_trajectory
from src.models.task import MuscleConfig, TaskSpec

__all__ = [
    "ConstantObservation",
    "ControlLaw",
    "ELQGModel",
    "ELQGParams",
    "InitialBelief",
    "LQCostWeights",
    "LQGModel",
    "LQGNoiseParams",
    "LQRModel",
    "MinJerkBoundary",
    "MinJerkModel",
    "MinJerkParams",
    "ModelFactory",
    "MuscleConfig",
    "PointingModel",
    "SaccadeObservation",
    "SecondOrderLagModel",
    "SimulationRun",
    "SolverOptions",
    "StochasticModel",
    "TaskSpec",
    "TwoOLParams",
    "build_2ol_system",
    "build_muscle_system",
    "closed_loop_rollout",
    "control_cost",
    "lqg_observation",
    "lqr_cost",
    "minjerk_polynomial",
    "minjerk_trajectory",
    "predict_distribution",
    "run_model",
    "sample_ensemble",
    "sample_trajectory",
    "simulate_2ol_eq",
    "solve_coordinate_descent",
    "solve_elqg",
    "solve_lqg",
    "solve_lqr",
    "solve_riccati",
    "state_cost_matrix",
    "state_cost_schedule",
]
