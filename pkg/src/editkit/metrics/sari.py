"""SARI: mean n-gram F1 for additions and retentions plus deletion precision.

Components are computed for n = 1..4 against the source and the reference set,
averaged per component over n, and the final score is the mean of F1(add),
F1(keep), and P(del), scaled to [0, 100]. A 0/0 precision or recall counts as
1.0 when both the candidate-side and reference-side multisets are empty and 0
otherwise; the identity edit therefore scores 100 against itself.
"""

from collections import Counter

from ..errors import EmptyReferenceSet
from .ngram import MAX_ORDER, as_tokens, ngram_counts

__all__ = ["sari"]


def _ratio(numerator: float, denominator: float, own_empty: bool, other_empty: bool) -> float:
    if denominator > 0:
        return numerator / denominator
    return 1.0 if (own_empty and other_empty) else 0.0


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def sari(source, prediction, references) -> float:
    """Score a single instance; all inputs are strings or token lists."""
    if not references:
        raise EmptyReferenceSet("SARI needs at least one reference")
    src = as_tokens(source)
    cand = as_tokens(prediction)
    refs = [as_tokens(r) for r in references]
    numref = len(refs)

    keep_scores, del_scores, add_scores = [], [], []
    for n in range(1, MAX_ORDER + 1):
        s_rep = Counter({g: c * numref for g, c in ngram_counts(src, n).items()})
        c_rep = Counter({g: c * numref for g, c in ngram_counts(cand, n).items()})
        r_all = Counter()
        for ref in refs:
            r_all.update(ngram_counts(ref, n))

        # keep: n-grams retained by the candidate vs. retained by references
        kept_cand = s_rep & c_rep
        kept_good = kept_cand & r_all
        kept_ref = s_rep & r_all
        kp = sum(kept_good[g] / kept_cand[g] for g in kept_good)
        kr = sum(kept_good[g] / kept_ref[g] for g in kept_good)
        precision = _ratio(kp, len(kept_cand), not kept_cand, not kept_ref)
        recall = _ratio(kr, len(kept_ref), not kept_ref, not kept_cand)
        keep_scores.append(_f1(precision, recall))

        # delete: scored by precision only; a deletion is good when the
        # references deleted that n-gram too (multiset intersection, so
        # repeated tokens are credited copy by copy)
        del_cand = s_rep - c_rep
        del_ref = s_rep - r_all
        del_good = del_cand & del_ref
        dp = sum(del_good[g] / del_cand[g] for g in del_good)
        del_scores.append(_ratio(dp, len(del_cand), not del_cand, not del_ref))

        # add: new n-grams, set-valued as in the metric's reference formulation
        add_cand = set(c_rep) - set(s_rep)
        add_good = add_cand & set(r_all)
        add_ref = set(r_all) - set(s_rep)
        precision = _ratio(len(add_good), len(add_cand), not add_cand, not add_ref)
        recall = _ratio(len(add_good), len(add_ref), not add_ref, not add_cand)
        add_scores.append(_f1(precision, recall))

    keep = sum(keep_scores) / MAX_ORDER
    dele = sum(del_scores) / MAX_ORDER
    add = sum(add_scores) / MAX_ORDER
    return (keep + dele + add) / 3 * 100.0
