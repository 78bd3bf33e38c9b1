"""GLEU for single-sentence correction, single-pass formulation.

Per reference: modified n-gram precision for n = 1..4 where matches with the
reference are rewarded and n-grams present in the source but absent from the
reference are penalized (the subtraction floors at zero), combined by an
unsmoothed geometric mean with the BLEU brevity penalty. The instance score is
the mean over references, scaled to [0, 100].
"""

import math

from ..errors import EmptyReferenceSet
from .ngram import MAX_ORDER, as_tokens, ngram_counts

__all__ = ["gleu"]


def _single_reference(src_tokens, cand_tokens, ref_tokens) -> float:
    if not cand_tokens:
        return 0.0
    log_sum = 0.0
    for n in range(1, MAX_ORDER + 1):
        cand = ngram_counts(cand_tokens, n)
        ref = ngram_counts(ref_tokens, n)
        src = ngram_counts(src_tokens, n)
        reward = sum((cand & ref).values())
        penalty = sum(
            min(count, src[gram]) for gram, count in cand.items() if ref[gram] == 0 and src[gram] > 0
        )
        numerator = max(reward - penalty, 0)
        denominator = max(len(cand_tokens) + 1 - n, 0)
        if numerator == 0 or denominator == 0:
            return 0.0
        log_sum += math.log(numerator / denominator)
    if len(cand_tokens) >= len(ref_tokens):
        brevity = 1.0
    else:
        brevity = math.exp(1.0 - len(ref_tokens) / len(cand_tokens))
    return brevity * math.exp(log_sum / MAX_ORDER)


def gleu(source, prediction, references) -> float:
    if not references:
        raise EmptyReferenceSet("GLEU needs at least one reference")
    src = as_tokens(source)
    cand = as_tokens(prediction)
    scores = [_single_reference(src, cand, as_tokens(ref)) for ref in references]
    return sum(scores) / len(scores) * 100.0
