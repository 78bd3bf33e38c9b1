"""Corpus-level evaluation: per-instance scoring and aggregate reports."""

import json
from dataclasses import dataclass, field

from ..errors import EmptyReferenceSet
from .exact import exact_match
from .gleu import gleu
from .sari import sari

__all__ = ["EvalInstance", "EvalReport", "score_instance", "evaluate_instances"]

KNOWN_METRICS = ("sari", "gleu", "em")


@dataclass
class EvalInstance:
    source: str
    prediction: str
    references: list[str]

    def __post_init__(self):
        if not self.references:
            raise EmptyReferenceSet("evaluation instance has no references")


@dataclass
class EvalReport:
    """Per-dataset metric means (missing metrics omitted, never zero-filled)."""

    datasets: dict[str, dict] = field(default_factory=dict)

    def add_dataset(self, name: str, per_instance: list[dict]) -> None:
        entry: dict = {"count": len(per_instance)}
        if per_instance:
            for metric in KNOWN_METRICS:
                if metric in per_instance[0]:
                    entry[metric] = sum(row[metric] for row in per_instance) / len(per_instance)
        self.datasets[name] = entry

    def to_json(self) -> str:
        return json.dumps({"datasets": self.datasets}, indent=2, sort_keys=True)


def score_instance(instance: EvalInstance, metrics=KNOWN_METRICS) -> dict:
    row: dict = {}
    if "sari" in metrics:
        row["sari"] = sari(instance.source, instance.prediction, instance.references)
    if "gleu" in metrics:
        row["gleu"] = gleu(instance.source, instance.prediction, instance.references)
    if "em" in metrics:
        row["em"] = exact_match(instance.prediction, instance.references)
    return row


def evaluate_instances(
    name: str,
    instances: list[EvalInstance],
    metrics=KNOWN_METRICS,
    report: EvalReport | None = None,
) -> tuple[EvalReport, list[dict]]:
    """Score every instance and fold the means into a report."""
    report = report or EvalReport()
    rows = [score_instance(inst, metrics) for inst in instances]
    report.add_dataset(name, rows)
    return report, rows
