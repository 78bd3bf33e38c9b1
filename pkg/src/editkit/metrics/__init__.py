"""Reference-based edit metrics and corpus-level reporting."""

from .bleu import bleu
from .exact import exact_match
from .gleu import gleu
from .report import EvalInstance, EvalReport, evaluate_instances, score_instance
from .sari import sari

__all__ = [
    "bleu", "exact_match", "gleu", "sari",
    "EvalInstance", "EvalReport", "evaluate_instances", "score_instance",
]
