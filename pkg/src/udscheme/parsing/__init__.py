from .transitions import (
    Action,
    Configuration,
    Derivation,
    SHIFT,
    REDUCE,
    LEFT_ARC,
    RIGHT_ARC,
    initial_config,
    valid_actions,
    apply_action,
    action_cost,
    static_oracle_derivation,
)
from .features import extract_features, FEATURE_TEMPLATE_COUNT
from .perceptron import Model, train, parse, save_model, load_model

__all__ = [
    "Action",
    "Configuration",
    "Derivation",
    "SHIFT",
    "REDUCE",
    "LEFT_ARC",
    "RIGHT_ARC",
    "initial_config",
    "valid_actions",
    "apply_action",
    "action_cost",
    "static_oracle_derivation",
    "extract_features",
    "FEATURE_TEMPLATE_COUNT",
    "Model",
    "train",
    "parse",
    "save_model",
    "load_model",
]
