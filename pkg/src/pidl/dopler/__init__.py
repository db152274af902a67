from .anomalies import (
    InconsistencyWitness,
    ModelAnalysis,
    describe_state,
    detect_anomalies,
)
from .generate import SplitMix64, generate_random_model, model_seed
from .model import (
    Asset,
    Decision,
    DoplerModel,
    ModelError,
    Rule,
    model_from_json,
    model_to_json,
    parse_model,
    validate_model,
)
from .translate import (
    Origin,
    Translation,
    build_translation,
    enumeration_constraints,
    translate,
    translate_expression,
)

__all__ = [
    "Asset",
    "Decision",
    "DoplerModel",
    "InconsistencyWitness",
    "ModelAnalysis",
    "ModelError",
    "Origin",
    "Rule",
    "SplitMix64",
    "Translation",
    "build_translation",
    "describe_state",
    "detect_anomalies",
    "enumeration_constraints",
    "generate_random_model",
    "model_from_json",
    "model_seed",
    "model_to_json",
    "parse_model",
    "translate",
    "translate_expression",
    "validate_model",
]
