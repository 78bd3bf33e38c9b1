"""Sentence BLEU used as an ingestion filtering signal, scored in [0, 1].

Standard 4-gram BLEU with add-one smoothing on the higher-order precisions
(n >= 2) and the usual brevity penalty; the unigram precision is unsmoothed so
token-disjoint pairs score zero.
"""

import math

from .ngram import MAX_ORDER, as_tokens, ngram_counts

__all__ = ["bleu"]


def bleu(candidate, reference) -> float:
    cand = as_tokens(candidate)
    ref = as_tokens(reference)
    if not cand or not ref:
        return 1.0 if cand == ref else 0.0
    log_sum = 0.0
    for n in range(1, MAX_ORDER + 1):
        matches = sum((ngram_counts(cand, n) & ngram_counts(ref, n)).values())
        total = max(len(cand) + 1 - n, 0)
        if n == 1:
            if matches == 0:
                return 0.0
            precision = matches / total
        else:
            precision = (matches + 1) / (total + 1)
        log_sum += math.log(precision)
    brevity = 1.0 if len(cand) >= len(ref) else math.exp(1.0 - len(ref) / len(cand))
    return brevity * math.exp(log_sum / MAX_ORDER)
