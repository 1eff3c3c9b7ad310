"""Compiled inner loops: HNF subgroup enumeration and the transfer product.

``transfer_value`` is the only implementation of the Verlagerung product in
the package; ``FiniteGroup.transfer`` and the exhaustive abelian sweep both
call it.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _tail_size(rows, level, k):
    t = 1
    for c in range(level + 1, k):
        t *= rows[c, c]
    return t


@njit(cache=True)
def hnf_fill(p, exps, moduli, rows, idx, tot, state, out):
    """Continue a depth-first enumeration of valid HNFs, writing into ``out``.

    ``state[0]`` is the current level (``k`` once exhausted).  Returns the
    number of matrices written; call again with the same state to resume.
    """
    k = exps.shape[0]
    cap = out.shape[0]
    count = 0
    level = state[0]
    v = np.zeros(k, dtype=np.int64)
    while level < k:
        if idx[level] >= tot[level]:
            level += 1
            continue
        cand = idx[level]
        idx[level] += 1
        T = _tail_size(rows, level, k)
        e = exps[level]
        for c in range(k):
            rows[level, c] = 0
        if cand == e * T:
            rows[level, level] = moduli[level]
        else:
            d = cand // T
            t = cand % T
            rows[level, level] = p**d
            for c in range(k - 1, level, -1):
                h = rows[c, c]
                rows[level, c] = t % h
                t //= h
            # p^{e_i} e_i must reduce to zero through rows level..k-1
            q = moduli[level] // rows[level, level]
            for c in range(k):
                v[c] = -q * rows[level, c] if c > level else 0
            ok = True
            for c in range(level + 1, k):
                h = rows[c, c]
                if v[c] % h != 0:
                    ok = False
                    break
                s = v[c] // h
                if s != 0:
                    for cc in range(c, k):
                        v[cc] -= s * rows[c, cc]
            if not ok:
                continue
        if level == 0:
            for i in range(k):
                for j in range(k):
                    out[count, i, j] = rows[i, j]
            count += 1
            if count == cap:
                state[0] = level
                return count
        else:
            level -= 1
            idx[level] = 0
            tot[level] = exps[level] * _tail_size(rows, level, k) + 1
    state[0] = level
    return count


@njit(cache=True)
def subgroup_elements(hnf, moduli, strides, buf):
    """Element indices of the subgroup with the given HNF; returns the count."""
    k = moduli.shape[0]
    gens = np.empty(k, dtype=np.int64)
    counts = np.empty(k, dtype=np.int64)
    ng = 0
    for j in range(k):
        if hnf[j, j] != moduli[j]:
            gens[ng] = j
            counts[ng] = moduli[j] // hnf[j, j]
            ng += 1
    digits = np.zeros(k, dtype=np.int64)
    vec = np.zeros(k, dtype=np.int64)
    n = 0
    while True:
        for c in range(k):
            vec[c] = 0
        for r in range(ng):
            if digits[r]:
                row = gens[r]
                for c in range(k):
                    vec[c] += digits[r] * hnf[row, c]
        ix = 0
        for c in range(k):
            ix += (vec[c] % moduli[c]) * strides[c]
        buf[n] = ix
        n += 1
        r = ng - 1
        while r >= 0:
            digits[r] += 1
            if digits[r] < counts[r]:
                break
            digits[r] = 0
            r -= 1
        if r < 0:
            break
    return n


@njit(cache=True)
def right_cosets(table, delta, ndelta, label, rep_min, rep_max):
    """Label the right cosets Delta*x; representatives are min and max indices."""
    n = table.shape[0]
    for x in range(n):
        label[x] = -1
    return _right_cosets_stamped(table, delta, ndelta, label, rep_min, rep_max, -1)


@njit(cache=True)
def _right_cosets_stamped(table, delta, ndelta, label, rep_min, rep_max, base):
    """As ``right_cosets`` but labels are offset by ``base + 1``; entries <= base count as unlabelled."""
    n = table.shape[0]
    ncos = 0
    for x in range(n):
        lx = label[x]
        if lx <= base:
            lab = base + 1 + ncos
            for i in range(ndelta):
                label[table[delta[i], x]] = lab
            rep_min[ncos] = x
            rep_max[ncos] = x
            ncos += 1
        elif x > rep_max[lx - base - 1]:
            rep_max[lx - base - 1] = x
    return ncos


@njit(cache=True)
def transfer_value(table, inv, label, reps, ncos, g):
    """prod_i t_i g t_{j(i)}^{-1} over the ordered transversal ``reps``; an element of Delta."""
    return _transfer_stamped(table, inv, label, reps, ncos, g, -1)


@njit(cache=True)
def _transfer_stamped(table, inv, label, reps, ncos, g, base):
    acc = 0
    for i in range(ncos):
        y = table[reps[i], g]
        f = table[y, inv[reps[label[y] - base - 1]]]
        acc = table[acc, f]
    return acc


@njit(cache=True)
def _table_power(table, g, e):
    """g^e by square-and-multiply in the table."""
    r = 0
    while e:
        if e & 1:
            r = table[r, g]
        g = table[g, g]
        e >>= 1
    return r


@njit(cache=True)
def _span_size(table, gens, ngens, seen, buf, stamp):
    """Order of the subgroup generated by ``gens`` in an abelian table, by incremental cosets."""
    buf[0] = 0
    seen[0] = stamp
    m = 1
    for t in range(ngens):
        g = gens[t]
        if seen[g] == stamp:
            continue
        prev = m
        v = g
        while seen[v] != stamp:
            for j in range(prev):
                y = table[buf[j], v]
                buf[m] = y
                m += 1
            for j in range(m - prev, m):
                seen[buf[j]] = stamp
            v = table[v, g]
    return m


@njit(cache=True)
def _table_span(table, hnf, moduli, strides, buf):
    """Elements of the subgroup with the given HNF, built with table products only."""
    k = moduli.shape[0]
    buf[0] = 0
    m = 1
    for r in range(k - 1, -1, -1):
        if hnf[r, r] == moduli[r]:
            continue
        # non-trivial rows are already reduced
        g = 0
        for c in range(r, k):
            g += hnf[r, c] * strides[c]
        cnt = moduli[r] // hnf[r, r]
        prev = m
        for j in range(1, cnt):
            base = (j - 1) * prev
            for t in range(prev):
                buf[m] = table[buf[base + t], g]
                m += 1
    return m


@njit(cache=True)
def abelian_transfer_sweep(table, inv, coords, moduli, strides, basis, hnfs, nblock, full, stats, first):
    """Check transfer against the index-power map for every subgroup in the block.

    stats[0..2] accumulate failures of: power-map agreement, transversal
    independence, and [Gamma:Delta] | |ker Ver|; stats[3] counts subgroups
    and stats[4] transfer evaluations.  ``first[c]`` records the block
    position of the first failure of check c (-1 if none).  With ``full``
    every element is transferred under both transversals; otherwise only the
    basis under the min transversal, and the kernel size is read off the span
    of the basis images.
    """
    n = table.shape[0]
    k = moduli.shape[0]
    delta = np.empty(n, dtype=np.int64)
    label = np.full(n, -1, dtype=np.int64)
    rep_min = np.empty(n, dtype=np.int64)
    rep_max = np.empty(n, dtype=np.int64)
    images = np.zeros(k, dtype=np.int64)
    seen = np.zeros(n, dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    base = -1
    for b in range(nblock):
        nd = _table_span(table, hnfs[b], moduli, strides, delta)
        ncos = _right_cosets_stamped(table, delta, nd, label, rep_min, rep_max, base)
        bad_pow = False
        bad_tr = False
        kernel = 0
        ntest = n if full else k
        for t in range(ntest):
            g = t if full else basis[t]
            v1 = _transfer_stamped(table, inv, label, rep_min, ncos, g, base)
            stats[4] += 1
            v2 = v1
            if full:
                v2 = _transfer_stamped(table, inv, label, rep_max, ncos, g, base)
                stats[4] += 1
            pw = _table_power(table, g, ncos)
            if v1 != pw:
                bad_pow = True
            if v1 != v2:
                bad_tr = True
            if full:
                if v1 == 0:
                    kernel += 1
            else:
                images[t] = v1
        base += ncos
        if not full:
            # |ker| = |Gamma| / |image|, the image being spanned by the basis images
            kernel = n // _span_size(table, images, k, seen, buf, b + 1)
        if bad_pow:
            stats[0] += 1
            if first[0] < 0:
                first[0] = b
        if bad_tr:
            stats[1] += 1
            if first[1] < 0:
                first[1] = b
        if kernel % ncos != 0:
            stats[2] += 1
            if first[2] < 0:
                first[2] = b
        stats[3] += 1


@njit(cache=True)
def row_codes(hnfs, n, p, moduli):
    """Encode each HNF row as (pivot exponent, tail entries) in mixed radix."""
    k = moduli.shape[0]
    out = np.empty((n, k), dtype=np.int64)
    for b in range(n):
        for i in range(k):
            h = hnfs[b, i, i]
            d = 0
            while h > 1:
                h //= p
                d += 1
            code = d
            for c in range(i + 1, k):
                code = code * moduli[c] + hnfs[b, i, c]
            out[b, i] = code
    return out


@njit(cache=True)
def subgroup_fingerprints(hnfs, n, moduli, strides, addt, keys, sizes, prints, closed):
    """Distinct-element count, closure flag and an order-free 64-bit fingerprint per subgroup.

    Closure is checked by adding every generator row to every element, using
    the group's addition table rather than the HNF arithmetic.
    """
    N = keys.shape[0]
    k = moduli.shape[0]
    buf = np.empty(N, dtype=np.int64)
    mark = np.zeros(N, dtype=np.int64)
    stamp = 0
    for b in range(n):
        stamp += 1
        m = subgroup_elements(hnfs[b], moduli, strides, buf)
        s = np.uint64(0)
        distinct = 0
        for t in range(m):
            x = buf[t]
            if mark[x] != stamp:
                mark[x] = stamp
                distinct += 1
                s += keys[x]
        ok = True
        for r in range(k):
            if hnfs[b, r, r] == moduli[r]:
                continue
            step = 0
            for c in range(k):
                step += (hnfs[b, r, c] % moduli[c]) * strides[c]
            for t in range(m):
                if mark[addt[buf[t], step]] != stamp:
                    ok = False
                    break
            if not ok:
                break
        sizes[b] = distinct
        prints[b] = s
        closed[b] = ok


@njit(cache=True)
def associativity_failure(table):
    """First (a, b, c) with (ab)c != a(bc), or (-1, -1, -1)."""
    n = table.shape[0]
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return a, b, c
    return -1, -1, -1
