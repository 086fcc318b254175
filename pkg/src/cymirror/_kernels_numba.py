"""Compiled kernels for packed-array polynomial arithmetic over F_p.

All arrays are int64, sorted by key in decreasing order, coefficients in
[1, p).  Coefficient products stay below 2**62 because pipeline primes are
below 2**31.
"""

import numpy as np
from numba import njit

_POS_SHIFT = 36
_DEG_SHIFT = 30
_MASK = 63


@njit(cache=True)
def merge_axpy(ka, ca, kb, cb, coef, delta, p):
    """Return A + coef * shift(B, delta) with zero coefficients dropped."""
    na = ka.shape[0]
    nb = kb.shape[0]
    ok = np.empty(na + nb, np.int64)
    oc = np.empty(na + nb, np.int64)
    i = 0
    j = 0
    r = 0
    while i < na and j < nb:
        kA = ka[i]
        kB = kb[j] + delta
        if kA > kB:
            ok[r] = kA
            oc[r] = ca[i]
            i += 1
            r += 1
        elif kA < kB:
            c = coef * cb[j] % p
            if c != 0:
                ok[r] = kB
                oc[r] = c
                r += 1
            j += 1
        else:
            c = (ca[i] + coef * cb[j]) % p
            if c != 0:
                ok[r] = kA
                oc[r] = c
                r += 1
            i += 1
            j += 1
    while i < na:
        ok[r] = ka[i]
        oc[r] = ca[i]
        i += 1
        r += 1
    while j < nb:
        c = coef * cb[j] % p
        if c != 0:
            ok[r] = kb[j] + delta
            oc[r] = c
            r += 1
        j += 1
    return ok[:r].copy(), oc[:r].copy()


@njit(cache=True)
def poly_mul(ka, ca, kb, cb, p):
    """Product of a packed element (module or ring) with a ring element."""
    na = ka.shape[0]
    nb = kb.shape[0]
    n = na * nb
    keys = np.empty(n, np.int64)
    cos = np.empty(n, np.int64)
    key_one = (15 << _POS_SHIFT) | (_MASK << 24) | (_MASK << 18) | (_MASK << 12) | (_MASK << 6) | _MASK
    idx = 0
    for j in range(nb):
        delta = kb[j] - key_one
        c = cb[j]
        for i in range(na):
            keys[idx] = ka[i] + delta
            cos[idx] = ca[i] * c % p
            idx += 1
    order = np.argsort(keys)
    ok = np.empty(n, np.int64)
    oc = np.empty(n, np.int64)
    r = 0
    t = n - 1
    while t >= 0:
        k = keys[order[t]]
        acc = 0
        while t >= 0 and keys[order[t]] == k:
            acc += cos[order[t]]
            t -= 1
        acc %= p
        if acc != 0:
            ok[r] = k
            oc[r] = acc
            r += 1
    return ok[:r].copy(), oc[:r].copy()


@njit(cache=True)
def reduce_full(vk, vc, bkeys, bcos, boffs, lead_keys, lead_pe, p):
    """Fully reduce v by a monic basis; returns remainder and the step log.

    lead_pe holds one row per basis element: (posfield, e1..e6) of its lead.
    Steps are (basis index, key delta, coefficient) triples; the reduction
    performed is v -> v - c * shift(basis[j], delta) at every step.
    """
    nb = lead_keys.shape[0]
    ak = vk.copy()
    ac = vc.copy()
    s = 0
    rem_cap = 64
    rk = np.empty(rem_cap, np.int64)
    rc = np.empty(rem_cap, np.int64)
    nr = 0
    st_cap = 64
    sj = np.empty(st_cap, np.int64)
    sd = np.empty(st_cap, np.int64)
    sc = np.empty(st_cap, np.int64)
    ns = 0
    while s < ak.shape[0]:
        k0 = ak[s]
        c0 = ac[s]
        posf = (k0 >> _POS_SHIFT) & 15
        deg = (k0 >> _DEG_SHIFT) & _MASK
        e6 = 63 - ((k0 >> 24) & _MASK)
        e5 = 63 - ((k0 >> 18) & _MASK)
        e4 = 63 - ((k0 >> 12) & _MASK)
        e3 = 63 - ((k0 >> 6) & _MASK)
        e2 = 63 - (k0 & _MASK)
        e1 = deg - (e2 + e3 + e4 + e5 + e6)
        found = -1
        for j in range(nb):
            if lead_pe[j, 0] != posf:
                continue
            if (
                lead_pe[j, 1] <= e1
                and lead_pe[j, 2] <= e2
                and lead_pe[j, 3] <= e3
                and lead_pe[j, 4] <= e4
                and lead_pe[j, 5] <= e5
                and lead_pe[j, 6] <= e6
            ):
                found = j
                break
        if found < 0:
            if nr == rem_cap:
                rem_cap *= 2
                nrk = np.empty(rem_cap, np.int64)
                nrc = np.empty(rem_cap, np.int64)
                nrk[:nr] = rk[:nr]
                nrc[:nr] = rc[:nr]
                rk = nrk
                rc = nrc
            rk[nr] = k0
            rc[nr] = c0
            nr += 1
            s += 1
            continue
        delta = k0 - lead_keys[found]
        lo = boffs[found] + 1  # skip the (monic) lead, it cancels exactly
        hi = boffs[found + 1]
        ak, ac = merge_axpy(ak[s + 1:], ac[s + 1:], bkeys[lo:hi], bcos[lo:hi], p - c0, delta, p)
        s = 0
        if ns == st_cap:
            st_cap *= 2
            nsj = np.empty(st_cap, np.int64)
            nsd = np.empty(st_cap, np.int64)
            nsc = np.empty(st_cap, np.int64)
            nsj[:ns] = sj[:ns]
            nsd[:ns] = sd[:ns]
            nsc[:ns] = sc[:ns]
            sj = nsj
            sd = nsd
            sc = nsc
        sj[ns] = found
        sd[ns] = delta
        sc[ns] = c0
        ns += 1
    return rk[:nr].copy(), rc[:nr].copy(), sj[:ns].copy(), sd[:ns].copy(), sc[:ns].copy()
