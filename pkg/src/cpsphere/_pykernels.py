"""Pure-Python kernels over world bitmasks.

A sphere chain is a sequence of int bitmasks, strictly increasing under
inclusion.  These functions are the fallback for :mod:`cpsphere._ckernels`
and must return identical results.
"""

MODE_FORCING = 0
MODE_DISAGREE = 1
MODE_AGREE = 2


def popcount(mask):
    return bin(mask).count("1")


def shell_counts(chain, mask):
    """Per-shell count of worlds in ``mask``: innermost sphere, then each ring."""
    out = []
    prev = 0
    for sphere in chain:
        out.append(popcount(mask & sphere & ~prev))
        prev = sphere
    return tuple(out)


def _weight_key(counts):
    # higher weight = fewer satisfiers at the first differing shell
    return tuple(-c for c in counts)


def rank_chain(chain, member_masks, x, mode):
    """Re-rank the worlds of ``chain`` around world index ``x``.

    Each world is keyed by the weight of its forcing / disagreement /
    agreement set over the members, ties broken by original sphere rank.
    Returns the cumulative (strictly increasing) chain of down-sets.
    """
    union = chain[-1]
    wkeys = [_weight_key(shell_counts(chain, m)) for m in member_masks]
    xin = [(m >> x) & 1 for m in member_masks]
    rows = []
    y = 0
    rest = union
    while rest:
        if rest & 1:
            if mode == MODE_FORCING:
                chosen = [k for k, m in zip(wkeys, member_masks) if (m >> y) & 1]
            else:
                disagree = [(m >> y) & 1 != xi for m, xi in zip(member_masks, xin)]
                want = mode == MODE_DISAGREE
                chosen = [k for k, d in zip(wkeys, disagree) if d == want]
            setweight = tuple(sorted(chosen, reverse=True))
            orig = next(i for i, s in enumerate(chain) if (s >> y) & 1)
            rows.append((setweight, orig, y))
        rest >>= 1
        y += 1
    levels = sorted({r[0] for r in rows}, reverse=(mode == MODE_AGREE))
    level_of = {w: i for i, w in enumerate(levels)}
    keyed = sorted((level_of[w], orig, y) for w, orig, y in rows)
    out = []
    acc = 0
    for i, (lvl, orig, y) in enumerate(keyed):
        acc |= 1 << y
        last = i + 1 == len(keyed) or keyed[i + 1][:2] != (lvl, orig)
        if last:
            out.append(acc)
    return tuple(out)


def lewis_cf(chain, a, b):
    """Lewis counterfactual on a nested chain: the innermost A-sphere must satisfy A -> B."""
    for sphere in chain:
        if sphere & a:
            return not (sphere & a & ~b)
    return True


def lewis_pl(chain, a, b):
    """Comparative plausibility: every sphere meeting B also meets A."""
    for sphere in chain:
        if sphere & b and not sphere & a:
            return False
    return True
