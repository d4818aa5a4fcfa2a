from .result import Skip
from .result import TransformResult
from .feature import FeatureSet
from .feature import find_features
from .member_init import transform_member_init
from .auto import transform_auto
from .lambdas import transform_lambda
from .modifiers import strip_attributes
from .modifiers import strip_final_override
from .range_for import lower_range_for
from .delegation import inline_delegation
from .alias import rewrite_type_alias
from .phases import PhaseContext
from .phases import PhaseRun
from .phases import PhaseRecord
from .phases import PassRecord
from .phases import run_phases


__all__ = [
    "Skip",
    "TransformResult",
    "FeatureSet",
    "find_features",
    "transform_member_init",
    "transform_auto",
    "transform_lambda",
    "strip_attributes",
    "strip_final_override",
    "lower_range_for",
    "inline_delegation",
    "rewrite_type_alias",
    "PhaseContext",
    "PhaseRun",
    "PhaseRecord",
    "PassRecord",
    "run_phases",
]
