# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over world bitmasks (at most 64 worlds).

Same contract as :mod:`cpsphere._pykernels`.  Set weights are compared as
histograms over the dense ranks of member weights, which orders them
exactly like the sorted-list lexicographic comparison.
"""
from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

cdef enum:
    MAXW = 64
    MAXM = 64

MODE_FORCING = 0
MODE_DISAGREE = 1
MODE_AGREE = 2


cdef inline int _pop(uint64_t v) nogil:
    return __builtin_popcountll(v)

cdef int _load_chain(object chain, uint64_t* out) except -1:
    cdef int n = len(chain)
    if n > MAXW:
        raise ValueError("chain longer than 64 spheres")
    cdef int i
    for i in range(n):
        out[i] = <uint64_t>chain[i]
    return n


def shell_counts(chain, mask):
    cdef uint64_t c[MAXW]
    cdef int n = _load_chain(chain, c)
    cdef uint64_t m = <uint64_t>mask
    cdef uint64_t prev = 0
    cdef int i
    out = []
    for i in range(n):
        out.append(_pop(m & c[i] & ~prev))
        prev = c[i]
    return tuple(out)


cdef int _cmp_weight(int* wa, int* wb, int n) nogil:
    # +1 when wa is heavier, i.e. fewer satisfiers at the first difference
    cdef int i
    for i in range(n):
        if wa[i] != wb[i]:
            return 1 if wa[i] < wb[i] else -1
    return 0


def rank_chain(chain, member_masks, int x, int mode):
    cdef uint64_t c[MAXW]
    cdef int nsh = _load_chain(chain, c)
    cdef int nm = len(member_masks)
    if nm > MAXM:
        raise ValueError("more than 64 cp-set members")
    cdef uint64_t mm[MAXM]
    cdef int counts[MAXM][MAXW]
    cdef int rank[MAXM]
    cdef int order[MAXM]
    cdef int i, j, k, s, t, y, r, nr, nw
    cdef uint64_t prev, union_, bit
    for j in range(nm):
        mm[j] = <uint64_t>member_masks[j]
        prev = 0
        for s in range(nsh):
            counts[j][s] = _pop(mm[j] & c[s] & ~prev)
            prev = c[s]
    # dense rank of member weights, 0 = heaviest
    for j in range(nm):
        order[j] = j
    for i in range(1, nm):
        t = order[i]
        k = i - 1
        while k >= 0 and _cmp_weight(counts[order[k]], counts[t], nsh) < 0:
            order[k + 1] = order[k]
            k -= 1
        order[k + 1] = t
    nr = 0
    for i in range(nm):
        if i > 0 and _cmp_weight(counts[order[i - 1]], counts[order[i]], nsh) != 0:
            nr += 1
        rank[order[i]] = nr
    if nm > 0:
        nr += 1

    union_ = c[nsh - 1]
    cdef int worlds[MAXW]
    cdef int orig[MAXW]
    cdef int hist[MAXW][MAXM]
    nw = 0
    cdef int xin, yin, take
    for y in range(64):
        bit = (<uint64_t>1) << y
        if not (union_ & bit):
            continue
        worlds[nw] = y
        for s in range(nsh):
            if c[s] & bit:
                orig[nw] = s
                break
        for r in range(nr):
            hist[nw][r] = 0
        for j in range(nm):
            yin = 1 if (mm[j] & bit) else 0
            xin = 1 if (mm[j] & ((<uint64_t>1) << x)) else 0
            if mode == 0:
                take = yin
            elif mode == 1:
                take = 1 if yin != xin else 0
            else:
                take = 1 if yin == xin else 0
            if take:
                hist[nw][rank[j]] += 1
        nw += 1

    # order worlds: set weight (ascending for i/d, descending for a), then original rank
    cdef int perm[MAXW]
    for i in range(nw):
        perm[i] = i
    for i in range(1, nw):
        t = perm[i]
        k = i - 1
        while k >= 0 and _cmp_world(hist[perm[k]], hist[t], nr, orig[perm[k]], orig[t], mode) > 0:
            perm[k + 1] = perm[k]
            k -= 1
        perm[k + 1] = t
    out = []
    cdef uint64_t acc = 0
    for i in range(nw):
        acc |= (<uint64_t>1) << worlds[perm[i]]
        if i + 1 == nw or _cmp_world(hist[perm[i]], hist[perm[i + 1]], nr,
                                     orig[perm[i]], orig[perm[i + 1]], mode) != 0:
            out.append(acc)
    return tuple(out)


cdef int _cmp_world(int* ha, int* hb, int nr, int oa, int ob, int mode) nogil:
    # histogram with more copies of the heaviest differing rank is the heavier set
    cdef int r, heavier = 0
    for r in range(nr):
        if ha[r] != hb[r]:
            heavier = 1 if ha[r] > hb[r] else -1
            break
    if heavier != 0:
        return -heavier if mode == 2 else heavier
    if oa != ob:
        return 1 if oa > ob else -1
    return 0


def lewis_cf(chain, a, b):
    cdef uint64_t c[MAXW]
    cdef int n = _load_chain(chain, c)
    cdef uint64_t am = <uint64_t>a, bm = <uint64_t>b
    cdef int i
    for i in range(n):
        if c[i] & am:
            return not (c[i] & am & ~bm)
    return True


def lewis_pl(chain, a, b):
    cdef uint64_t c[MAXW]
    cdef int n = _load_chain(chain, c)
    cdef uint64_t am = <uint64_t>a, bm = <uint64_t>b
    cdef int i
    for i in range(n):
        if (c[i] & bm) and not (c[i] & am):
            return False
    return True


def popcount(mask):
    return _pop(<uint64_t>mask)
