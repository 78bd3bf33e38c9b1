"""Exact match with whitespace normalization."""

__all__ = ["exact_match"]


def _normalize(text: str) -> str:
    return " ".join(text.split())


def exact_match(prediction: str, references: list[str]) -> float:
    """100 iff the whitespace-collapsed prediction equals any reference."""
    pred = _normalize(prediction)
    return 100.0 if any(pred == _normalize(ref) for ref in references) else 0.0
