from .cem import cem_optimize
from .config import CEMConfig, ConfigError, SACConfig, SolverConfig, default_hidden_units
from .env import PowerEnv, encode_observation, env_step
from .grid import BudgetExceeded, grid_search_oracle, power_levels
from .sac import Policy, TrainingDiverged, policy_act, sac_train, write_training_curve

__all__ = [
    "BudgetExceeded", "CEMConfig", "ConfigError", "Policy", "PowerEnv", "SACConfig",
    "SolverConfig", "TrainingDiverged", "cem_optimize", "default_hidden_units",
    "encode_observation", "env_step", "grid_search_oracle", "policy_act", "power_levels",
    "sac_train", "write_training_curve",
]
