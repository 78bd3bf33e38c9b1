"""Synthetic editing tasks for desk-scale training and benchmarks.

Four intents with deterministic corruption rules over a small carrier
vocabulary: shouted-case fixing, plural agreement fixing, filler-marker
deletion, and closed-vocabulary spelling substitution (the only one that
exercises the generation head).
"""

import random

__all__ = [
    "SYNTH_INTENTS", "generate_pair", "generate_pairs", "generate_intent_corpora",
]

_CARRIER = [
    "the", "a", "one", "this", "small", "big", "old", "new", "red", "blue",
    "quiet", "bright", "dog", "cat", "bird", "house", "tree", "car", "road",
    "garden", "river", "town", "runs", "sees", "finds", "likes", "paints",
    "near", "over", "under", "with", "and", "then", "today", "slowly",
]

_NOUNS = ["dog", "cat", "bird", "house", "tree", "car", "road", "garden", "river", "town"]

_MARKERS = ["umm", "uh", "err"]

_SUBSTITUTIONS = {
    "colour": "color",
    "centre": "center",
    "grey": "gray",
    "theatre": "theater",
    "honour": "honor",
    "labour": "labor",
    "flavour": "flavor",
    "metre": "meter",
    "litre": "liter",
    "armour": "armor",
    "favour": "favor",
    "harbour": "harbor",
}

SYNTH_INTENTS = ("lowercase_fix", "plural_fix", "marker_deletion", "substitution")


def _carrier_sentence(rng: random.Random) -> list[str]:
    return [rng.choice(_CARRIER) for _ in range(rng.randint(5, 9))]


def _edit_positions(rng: random.Random, length: int) -> list[int]:
    count = 1 if length < 6 or rng.random() < 0.6 else 2
    return sorted(rng.sample(range(length), count))


def generate_pair(intent: str, rng: random.Random) -> tuple[str, str]:
    """One (corrupted source, clean target) pair for the given intent."""
    target = _carrier_sentence(rng)
    source = list(target)
    if intent == "lowercase_fix":
        for pos in _edit_positions(rng, len(source)):
            source[pos] = source[pos].upper()
    elif intent == "plural_fix":
        target = list(source)
        positions = _edit_positions(rng, len(source))
        for pos in positions:
            noun = rng.choice(_NOUNS)
            source[pos] = noun
            target[pos] = noun + "s"
    elif intent == "marker_deletion":
        for offset, pos in enumerate(_edit_positions(rng, len(source) + 1)):
            source.insert(pos + offset, rng.choice(_MARKERS))
    elif intent == "substitution":
        british = sorted(_SUBSTITUTIONS)
        for pos in _edit_positions(rng, len(source)):
            word = rng.choice(british)
            source[pos] = word
            target[pos] = _SUBSTITUTIONS[word]
    else:
        raise ValueError(f"unknown synthetic intent {intent!r}")
    return " ".join(source), " ".join(target)


def generate_pairs(intent: str, n: int, seed: int) -> list[dict]:
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        source, target = generate_pair(intent, rng)
        out.append({"source": source, "target": target, "intent": intent})
    return out


def generate_intent_corpora(n_per_intent: int, seed: int) -> dict[str, list[dict]]:
    return {
        intent: generate_pairs(intent, n_per_intent, seed + i)
        for i, intent in enumerate(SYNTH_INTENTS)
    }
