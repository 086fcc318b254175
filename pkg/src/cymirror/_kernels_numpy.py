"""Pure-numpy fallback for the compiled kernels (same contracts, no numba).

Selected by setting CYMIRROR_NO_NUMBA=1 in the environment; also used when
numba is not importable.  Slower constants, identical results.
"""

import numpy as np

_POS_SHIFT = 36
_DEG_SHIFT = 30
_MASK = 63
_EMPTY = np.empty(0, np.int64)


def _collapse(keys, cos, p):
    """Sort desc by key, merge equal keys mod p, drop zeros."""
    if keys.shape[0] == 0:
        return _EMPTY.copy(), _EMPTY.copy()
    order = np.argsort(-keys, kind="stable")
    k = keys[order]
    c = cos[order]
    starts = np.empty(k.shape[0], np.bool_)
    starts[0] = True
    starts[1:] = k[1:] != k[:-1]
    idx = np.cumsum(starts) - 1
    out = np.zeros(int(idx[-1]) + 1, np.int64)
    np.add.at(out, idx, c % p)
    out %= p
    keep = out != 0
    return k[starts][keep].copy(), out[keep].copy()


def merge_axpy(ka, ca, kb, cb, coef, delta, p):
    """Return A + coef * shift(B, delta) with zero coefficients dropped."""
    keys = np.concatenate((ka, kb + delta))
    cos = np.concatenate((ca, coef * cb % p))
    return _collapse(keys, cos, p)


def poly_mul(ka, ca, kb, cb, p):
    """Product of a packed element (module or ring) with a ring element."""
    key_one = (15 << _POS_SHIFT) | (_MASK << 24) | (_MASK << 18) | (_MASK << 12) | (_MASK << 6) | _MASK
    keys = (ka[:, None] + (kb[None, :] - key_one)).ravel()
    cos = (ca[:, None] * cb[None, :] % p).ravel()
    return _collapse(keys, cos, p)


def _term_exps(k0):
    deg = (k0 >> _DEG_SHIFT) & _MASK
    e6 = 63 - ((k0 >> 24) & _MASK)
    e5 = 63 - ((k0 >> 18) & _MASK)
    e4 = 63 - ((k0 >> 12) & _MASK)
    e3 = 63 - ((k0 >> 6) & _MASK)
    e2 = 63 - (k0 & _MASK)
    e1 = deg - (e2 + e3 + e4 + e5 + e6)
    return np.array([e1, e2, e3, e4, e5, e6], np.int64)


def reduce_full(vk, vc, bkeys, bcos, boffs, lead_keys, lead_pe, p):
    """Fully reduce v by a monic basis; returns remainder and the step log."""
    ak = vk.copy()
    ac = vc.copy()
    s = 0
    rem_k = []
    rem_c = []
    sj = []
    sd = []
    sc = []
    lead_posf = lead_pe[:, 0]
    lead_exps = lead_pe[:, 1:]
    while s < ak.shape[0]:
        k0 = int(ak[s])
        c0 = int(ac[s])
        posf = (k0 >> _POS_SHIFT) & 15
        exps = _term_exps(k0)
        mask = (lead_posf == posf) & np.all(lead_exps <= exps[None, :], axis=1)
        hits = np.nonzero(mask)[0]
        if hits.shape[0] == 0:
            rem_k.append(k0)
            rem_c.append(c0)
            s += 1
            continue
        j = int(hits[0])
        delta = k0 - int(lead_keys[j])
        lo = int(boffs[j]) + 1
        hi = int(boffs[j + 1])
        ak, ac = merge_axpy(ak[s + 1:], ac[s + 1:], bkeys[lo:hi], bcos[lo:hi], p - c0, delta, p)
        s = 0
        sj.append(j)
        sd.append(delta)
        sc.append(c0)
    return (
        np.array(rem_k, np.int64),
        np.array(rem_c, np.int64),
        np.array(sj, np.int64),
        np.array(sd, np.int64),
        np.array(sc, np.int64),
    )
