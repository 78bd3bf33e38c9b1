"""Independent oracles and corpus generators shared by the test suite.

Everything here is implemented separately from the library code paths it
checks: the alignment oracle enumerates paths recursively instead of filling a
table, and the fuzz generator produces pairs without consulting the aligner.
"""

import random

from editkit.tags import TagSet
from editkit.transforms import detect_merge, detect_split, detect_transform

INF = float("inf")


def oracle_min_cost(src: list[str], tgt: list[str], tag_set: TagSet) -> float:
    """Minimum alignment cost by plain recursive enumeration of all paths."""
    m, n = len(src), len(tgt)

    def rec(i: int, j: int) -> float:
        if i == m and j == n:
            return 0.0
        best = INF
        if i < m and j < n:
            if src[i] == tgt[j]:
                best = min(best, rec(i + 1, j + 1))
            elif detect_transform(src[i], tgt[j], tag_set):
                best = min(best, 0.5 + rec(i + 1, j + 1))
            best = min(best, 1.0 + rec(i + 1, j + 1))
        if i + 1 < m and j < n and detect_merge(src[i], src[i + 1], tgt[j], tag_set):
            best = min(best, 0.5 + rec(i + 2, j + 1))
        if i < m and j + 1 < n and detect_split(src[i], tgt[j], tgt[j + 1], tag_set):
            best = min(best, 0.5 + rec(i + 1, j + 2))
        if i < m:
            best = min(best, 1.0 + rec(i + 1, j))
        if j < n:
            best = min(best, 1.0 + rec(i, j + 1))
        return best

    return rec(0, 0)


_FUZZ_POOL = [
    "the", "a", "dog", "dogs", "cat", "cats", "well", "known", "well-known",
    "run", "ran", "running", "walk", "walked", "walks", "NASA", "nasa",
    "iphone", "iPhone", "big", "red", "house", "houses", "child", "children",
    "man", "men", "brown-fox", "time", "x", "y", "z", ".", ",", "It", "it",
]


def random_pair(rng: random.Random, max_len: int = 10) -> tuple[list[str], list[str]]:
    """One fuzzed (source, target) pair: random tokens plus random edits."""
    m = rng.randint(0, max_len)
    src = [rng.choice(_FUZZ_POOL) for _ in range(m)]
    if m == 0:
        return [], []
    if rng.random() < 0.05:
        # occasionally a completely unrelated target
        tgt = [rng.choice(_FUZZ_POOL) for _ in range(rng.randint(1, max_len))]
        return src, tgt
    tgt: list[str] = []
    for tok in src:
        r = rng.random()
        if r < 0.55:
            tgt.append(tok)
        elif r < 0.65:
            pass  # delete
        elif r < 0.73:
            tgt.append(rng.choice(_FUZZ_POOL))
        elif r < 0.85:
            choice = rng.randrange(6)
            if choice == 0:
                tgt.append(tok.upper())
            elif choice == 1:
                tgt.append(tok.lower())
            elif choice == 2:
                tgt.append(tok.capitalize())
            elif choice == 3:
                tgt.append(tok + "s")
            elif choice == 4 and "-" in tok and not tok.startswith("-") and not tok.endswith("-"):
                head, tail = tok.split("-", 1)
                tgt.extend([head, tail])
            else:
                tgt.append(rng.choice(_FUZZ_POOL))
        else:
            tgt.append(tok)
            tgt.extend(rng.choice(_FUZZ_POOL) for _ in range(rng.randint(1, 3)))
    if rng.random() < 0.15 and len(tgt) >= 2:
        # merge two adjacent tokens with a hyphen
        at = rng.randrange(len(tgt) - 1)
        tgt[at:at + 2] = [tgt[at] + "-" + tgt[at + 1]]
    if not tgt:
        tgt = [rng.choice(_FUZZ_POOL)]
    return src, tgt


_SMALL_POOL = ["a", "b", "c", "A", "B", "as", "bs", "cs", "a-b", "b-c", "ab"]


def small_alphabet_pair(rng: random.Random, max_len: int = 6) -> tuple[list[str], list[str]]:
    """Pairs over a 3-symbol alphabet plus transform-triggering variants."""
    m = rng.randint(1, max_len)
    n = rng.randint(1, max_len)
    return (
        [rng.choice(_SMALL_POOL) for _ in range(m)],
        [rng.choice(_SMALL_POOL) for _ in range(n)],
    )
