"""Independent, list-walking metric oracles used to freeze fixture values.

These deliberately avoid Counter arithmetic and shared helpers: multisets are
plain lists and every intersection/difference is an explicit scan, so a bug in
the library's counting idiom cannot hide here.
"""

import math


def grams(tokens, n):
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


def times(items, k):
    out = []
    for item in items:
        out.extend([item] * k)
    return out


def inter(a, b):
    """Multiset intersection by removal."""
    pool = list(b)
    out = []
    for item in a:
        if item in pool:
            pool.remove(item)
            out.append(item)
    return out


def minus(a, b):
    pool = list(b)
    out = []
    for item in a:
        if item in pool:
            pool.remove(item)
        else:
            out.append(item)
    return out


def _dist(items):
    seen = []
    for item in items:
        if item not in seen:
            seen.append(item)
    return seen


def _frac_sum(good, pool):
    total = 0.0
    for gram in _dist(good):
        total += good.count(gram) / pool.count(gram)
    return total


def _ratio(num, den, own_empty, other_empty):
    if den > 0:
        return num / den
    return 1.0 if own_empty and other_empty else 0.0


def _f1(p, r):
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def oracle_sari(src, cand, refs):
    keeps, dels, adds = [], [], []
    for n in range(1, 5):
        s = times(grams(src, n), len(refs))
        c = times(grams(cand, n), len(refs))
        r = []
        for ref in refs:
            r.extend(grams(ref, n))

        kc, kr_pool = inter(s, c), inter(s, r)
        kg = inter(kc, r)
        kp = _ratio(_frac_sum(kg, kc), len(_dist(kc)), not kc, not kr_pool)
        krec = _ratio(_frac_sum(kg, kr_pool), len(_dist(kr_pool)), not kr_pool, not kc)
        keeps.append(_f1(kp, krec))

        dc, dr = minus(s, c), minus(s, r)
        dg = inter(dc, dr)
        dels.append(_ratio(_frac_sum(dg, dc), len(_dist(dc)), not dc, not dr))

        ac = [g for g in _dist(c) if g not in s]
        ar = [g for g in _dist(r) if g not in s]
        ag = [g for g in ac if g in r]
        ap = _ratio(len(ag), len(ac), not ac, not ar)
        arec = _ratio(len(ag), len(ar), not ar, not ac)
        adds.append(_f1(ap, arec))
    return (sum(keeps) / 4 + sum(dels) / 4 + sum(adds) / 4) / 3 * 100.0


def oracle_gleu(src, cand, refs):
    scores = []
    for ref in refs:
        if not cand:
            scores.append(0.0)
            continue
        logs = []
        dead = False
        for n in range(1, 5):
            c, r, s = grams(cand, n), grams(ref, n), grams(src, n)
            reward = len(inter(c, r))
            penalty = 0
            for gram in _dist(c):
                if gram not in r and gram in s:
                    penalty += min(c.count(gram), s.count(gram))
            num = max(reward - penalty, 0)
            den = len(c)
            if num == 0 or den == 0:
                dead = True
                break
            logs.append(math.log(num / den))
        if dead:
            scores.append(0.0)
            continue
        bp = 1.0 if len(cand) >= len(ref) else math.exp(1 - len(ref) / len(cand))
        scores.append(bp * math.exp(sum(logs) / 4))
    return sum(scores) / len(scores) * 100.0


def oracle_bleu(cand, ref):
    if not cand or not ref:
        return 1.0 if cand == ref else 0.0
    logs = []
    for n in range(1, 5):
        c, r = grams(cand, n), grams(ref, n)
        matches = len(inter(c, r))
        if n == 1:
            if matches == 0:
                return 0.0
            logs.append(math.log(matches / len(c)))
        else:
            logs.append(math.log((matches + 1) / (len(c) + 1)))
    bp = 1.0 if len(cand) >= len(ref) else math.exp(1 - len(ref) / len(cand))
    return bp * math.exp(sum(logs) / 4)
