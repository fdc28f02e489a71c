"""Compiled deciders for bulk verification.

Motifs are encoded as arrays: ``nb[v]`` is the neighbour bitmask of v,
``alpha[v]`` its colour and ``lst[v]`` a bitmask with bit c set when colour c
is in the list.  These kernels are cross-checked against the reference
implementation in :mod:`recolor10.motif`.
"""
from __future__ import annotations

import numpy as np
from numba import njit

MAXV = 12


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def search_order(m, nb):
    order = np.empty(m, dtype=np.int64)
    used = 0
    for i in range(m):
        best = -1
        bestdeg = -1
        for v in range(m):
            if used >> v & 1:
                continue
            d = _popcount(nb[v])
            if d > bestdeg:
                best = v
                bestdeg = d
        order[i] = best
        used |= 1 << best
    return order


@njit(cache=True)
def oo_fast(m, nb, alpha, lst, order, gamma_out):
    """Once-only recolourability; fills ``gamma_out`` on success."""
    if m == 0:
        return True
    gamma = np.zeros(m, dtype=np.int64)
    assigned = 0
    cand = np.zeros(m + 1, dtype=np.int64)
    reach = np.zeros((m + 1, m), dtype=np.int64)
    i = 0
    v = order[0]
    cand[0] = lst[v]
    while True:
        if i < 0:
            return False
        v = order[i]
        if cand[i] == 0:
            i -= 1
            if i >= 0:
                assigned &= ~(1 << order[i])
            continue
        c = 0
        while not (cand[i] >> c & 1):
            c += 1
        cand[i] &= ~(1 << c)
        moved = c != alpha[v]
        # properness against assigned neighbours and forward check
        ok = True
        into = 0
        out = 0
        nv = nb[v]
        for u in range(m):
            if not (nv >> u & 1):
                continue
            if assigned >> u & 1:
                if gamma[u] == c:
                    ok = False
                    break
                if moved and gamma[u] != alpha[u]:
                    if c == alpha[u]:
                        into |= 1 << u
                    if gamma[u] == alpha[v]:
                        out |= 1 << u
            else:
                avail = lst[u] & ~(1 << c)
                nu = nb[u]
                for w in range(m):
                    if (nu >> w & 1) and (assigned >> w & 1):
                        avail &= ~(1 << gamma[w])
                if avail == 0:
                    ok = False
                    break
        if not ok:
            continue
        reach_out = out
        for w in range(m):
            if out >> w & 1:
                reach_out |= reach[i, w]
        if into & reach_out:
            continue
        for x in range(m):
            r = reach[i, x]
            if (into >> x & 1) or (r & into):
                r |= (1 << v) | reach_out
            reach[i + 1, x] = r
        reach[i + 1, v] = reach_out
        gamma[v] = c
        assigned |= 1 << v
        i += 1
        if i == m:
            for x in range(m):
                gamma_out[x] = gamma[x]
            return True
        cand[i] = lst[order[i]]


@njit(cache=True)
def _simulate(m, nb, alpha, gamma, perm, k):
    cur = alpha.copy()
    for j in range(k):
        v = perm[j]
        c = gamma[v]
        nv = nb[v]
        for u in range(m):
            if (nv >> u & 1) and cur[u] == c:
                return False
        cur[v] = c
    return True


@njit(cache=True)
def brute_fast(m, nb, alpha, lst):
    """Every list colouring times every order of the recoloured vertices."""
    if m == 0:
        return True
    opts = np.zeros((m, 10), dtype=np.int64)
    cnt = np.zeros(m, dtype=np.int64)
    for v in range(m):
        for c in range(1, 10):
            if lst[v] >> c & 1:
                opts[v, cnt[v]] = c
                cnt[v] += 1
        if cnt[v] == 0:
            return False
    idx = np.zeros(m, dtype=np.int64)
    gamma = np.zeros(m, dtype=np.int64)
    perm = np.zeros(m, dtype=np.int64)
    while True:
        for v in range(m):
            gamma[v] = opts[v, idx[v]]
        k = 0
        for v in range(m):
            if gamma[v] != alpha[v]:
                perm[k] = v
                k += 1
        # lexicographic permutations of perm[:k]
        while True:
            if _simulate(m, nb, alpha, gamma, perm, k):
                final_ok = True
                for u in range(m):
                    for w in range(u + 1, m):
                        if (nb[u] >> w & 1) and gamma[u] == gamma[w]:
                            final_ok = False
                if final_ok:
                    return True
            j = k - 2
            while j >= 0 and perm[j] >= perm[j + 1]:
                j -= 1
            if j < 0:
                break
            t = k - 1
            while perm[t] <= perm[j]:
                t -= 1
            perm[j], perm[t] = perm[t], perm[j]
            a, b = j + 1, k - 1
            while a < b:
                perm[a], perm[b] = perm[b], perm[a]
                a += 1
                b -= 1
        v = m - 1
        while v >= 0:
            idx[v] += 1
            if idx[v] < cnt[v]:
                break
            idx[v] = 0
            v -= 1
        if v < 0:
            return False


@njit(cache=True)
def compare_all_lists(m, nb, alpha, palette_mask):
    """Run both deciders on every list tuple over the palette.

    Returns (number of list tuples, number of yes verdicts, first disagreement
    index or -1).
    """
    colors = np.zeros(10, dtype=np.int64)
    nc = 0
    for c in range(1, 10):
        if palette_mask >> c & 1:
            colors[nc] = c
            nc += 1
    per = 1 << nc
    total = 1
    for _ in range(m):
        total *= per
    order = search_order(m, nb)
    lst = np.zeros(m, dtype=np.int64)
    gout = np.zeros(m, dtype=np.int64)
    yes = 0
    for code in range(total):
        x = code
        for v in range(m):
            sub = x % per
            x //= per
            mask = 0
            for j in range(nc):
                if sub >> j & 1:
                    mask |= 1 << colors[j]
            lst[v] = mask
        a = oo_fast(m, nb, alpha, lst, order, gout)
        b = brute_fast(m, nb, alpha, lst)
        if a != b:
            return total, yes, code
        if a:
            yes += 1
    return total, yes, -1


@njit(cache=True)
def compare_list_classes(m, nb, alpha, used, unused):
    """Both deciders on list tuples up to permutations of the ``unused`` colours.

    Lists are described colour by colour: each colour picks the set of
    vertices whose list contains it.  Colours in ``used`` pick freely; the
    interchangeable colours in ``unused`` pick a non-decreasing sequence.
    Returns (classes, yes verdicts, 1 if a disagreement was found else 0).
    """
    nu = used.shape[0]
    nf = unused.shape[0]
    per = 1 << m
    order = search_order(m, nb)
    lst = np.zeros(m, dtype=np.int64)
    gout = np.zeros(m, dtype=np.int64)
    umask = np.zeros(nu, dtype=np.int64)
    fmask = np.zeros(nf, dtype=np.int64)
    classes = 0
    yes = 0
    while True:
        for v in range(m):
            x = 0
            for j in range(nu):
                if umask[j] >> v & 1:
                    x |= 1 << used[j]
            for j in range(nf):
                if fmask[j] >> v & 1:
                    x |= 1 << unused[j]
            lst[v] = x
        a = oo_fast(m, nb, alpha, lst, order, gout)
        b = brute_fast(m, nb, alpha, lst)
        classes += 1
        if a != b:
            return classes, yes, 1
        if a:
            yes += 1
        # advance: unused part first (non-decreasing), then used part
        j = nf - 1
        while j >= 0 and fmask[j] == per - 1:
            j -= 1
        if j >= 0:
            fmask[j] += 1
            for t in range(j + 1, nf):
                fmask[t] = fmask[j]
            continue
        for t in range(nf):
            fmask[t] = 0
        j = nu - 1
        while j >= 0:
            umask[j] += 1
            if umask[j] < per:
                break
            umask[j] = 0
            j -= 1
        if j < 0:
            return classes, yes, 0


EXC_NONE, EXC_EDGE, EXC_TRIANGLE = 0, 1, 2


@njit(cache=True)
def _is_exception(kind, alpha, lst):
    if kind == EXC_NONE:
        return False
    for v in range(alpha.shape[0]):
        if alpha[v] == 10:
            return False
    a1 = 1 << alpha[0]
    a2 = 1 << alpha[1]
    if kind == EXC_EDGE:
        return lst[0] == (a1 | a2) and lst[1] == a1
    a3 = 1 << alpha[2]
    full = a1 | a2 | a3
    return lst[0] == full and lst[1] == full and (lst[2] & ~(a1 | a2)) == 0


@njit(cache=True)
def scan_lists(m, nb, alpha, used, unused, minsize, kind):
    """Every list class with sizes at least ``minsize``: verdict against exception.

    Enumerates classes as :func:`compare_list_classes` does and checks that a
    motif is oo-recolourable exactly when it is not in the exceptional family
    ``kind``.  Returns (classes, yes, exceptions, mismatch flag, lists).
    """
    nu = used.shape[0]
    nf = unused.shape[0]
    per = 1 << m
    order = search_order(m, nb)
    lst = np.zeros(m, dtype=np.int64)
    gout = np.zeros(m, dtype=np.int64)
    umask = np.zeros(nu, dtype=np.int64)
    fmask = np.zeros(nf, dtype=np.int64)
    classes = 0
    yes = 0
    exc = 0
    while True:
        for v in range(m):
            x = 0
            for j in range(nu):
                if umask[j] >> v & 1:
                    x |= 1 << used[j]
            for j in range(nf):
                if fmask[j] >> v & 1:
                    x |= 1 << unused[j]
            lst[v] = x
        big = True
        for v in range(m):
            if _popcount(lst[v]) < minsize[v]:
                big = False
        if big:
            classes += 1
            a = oo_fast(m, nb, alpha, lst, order, gout)
            e = _is_exception(kind, alpha, lst)
            if a:
                yes += 1
            if e:
                exc += 1
            if a == e:
                return classes, yes, exc, 1, lst.copy()
        j = nf - 1
        while j >= 0 and fmask[j] == per - 1:
            j -= 1
        if j >= 0:
            fmask[j] += 1
            for t in range(j + 1, nf):
                fmask[t] = fmask[j]
            continue
        for t in range(nf):
            fmask[t] = 0
        j = nu - 1
        while j >= 0:
            umask[j] += 1
            if umask[j] < per:
                break
            umask[j] = 0
            j -= 1
        if j < 0:
            return classes, yes, exc, 0, lst


@njit(cache=True)
def _random_subset(size):
    pool = np.arange(1, 10)
    mask = 0
    for j in range(size):
        r = j + np.random.randint(0, 9 - j)
        pool[j], pool[r] = pool[r], pool[j]
        mask |= 1 << pool[j]
    return mask


@njit(cache=True)
def sample_family(m, nb, alphas, sizes, samples, seed):
    """Uniform (alpha class, exact-size lists) samples; first failure or -1.

    Returns (failure sample index, class index, list masks of the failure).
    """
    np.random.seed(seed)
    order = search_order(m, nb)
    lst = np.zeros(m, dtype=np.int64)
    gout = np.zeros(m, dtype=np.int64)
    k = alphas.shape[0]
    for s in range(samples):
        j = np.random.randint(0, k)
        for v in range(m):
            lst[v] = _random_subset(sizes[j, v])
        if not oo_fast(m, nb, alphas[j], lst, order, gout):
            return s, j, lst.copy()
    return -1, -1, lst


def encode(M) -> tuple[int, np.ndarray, np.ndarray, np.ndarray]:
    nb = np.zeros(M.m, dtype=np.int64)
    for u, v in M.edges:
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    alpha = np.array(M.alpha, dtype=np.int64)
    lst = np.array([sum(1 << c for c in L) for L in M.lists], dtype=np.int64)
    return M.m, nb, alpha, lst


def decide(M) -> tuple[bool, tuple[int, ...] | None]:
    m, nb, alpha, lst = encode(M)
    gout = np.zeros(max(m, 1), dtype=np.int64)
    ok = oo_fast(m, nb, alpha, lst, search_order(m, nb), gout)
    return bool(ok), (tuple(int(x) for x in gout[:m]) if ok else None)


def brute(M) -> bool:
    m, nb, alpha, lst = encode(M)
    return bool(brute_fast(m, nb, alpha, lst))
