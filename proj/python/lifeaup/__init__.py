"""Game-of-Life gridworlds with attainable-utility side-effect penalties."""

from ._lifeaup import (
    ACTIONS,
    ConfigError,
    ContractError,
    Env,
    GenerationError,
    ParseError,
    bench,
    score_episode,
    side_effect_score,
    step_life,
    train,
    verify_prop1,
)

__all__ = [
    "ACTIONS",
    "ConfigError",
    "ContractError",
    "Env",
    "GenerationError",
    "ParseError",
    "bench",
    "score_episode",
    "side_effect_score",
    "step_life",
    "train",
    "verify_prop1",
]
