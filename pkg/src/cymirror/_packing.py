"""Packed int64 encoding of module monomials.

A term ``x^e * basis_vector[pos]`` is packed so that plain integer comparison
realises position-over-term order with graded reverse lexicographic terms
(x1 > ... > x6, lower position index wins).  Layout, most significant first:

    [15-pos : 4 bits][deg : 6 bits][63-e6][63-e5][63-e4][63-e3][63-e2]

with 6 bits per exponent field; e1 is implicit (deg minus the rest).  The
complemented fields make reverse-lex ties come out of a single comparison.
Multiplying by a ring monomial g is key addition with the precomputed delta

    delta(g) = (deg(g) << 30) - sum_i g_i << shift_i,

valid because no field ever exceeds 63 during our bounded-degree runs.
Ring elements (scalars of the module) are stored at pos = 0.
"""

from __future__ import annotations

POS_SHIFT = 36
DEG_SHIFT = 30
FIELD_SHIFTS = (24, 18, 12, 6, 0)  # e6, e5, e4, e3, e2
FIELD_MASK = 63
MAX_DEGREE = 63
MAX_POS = 14

# key of the ring monomial 1 (pos = 0, all exponents 0)
KEY_ONE = (15 << POS_SHIFT) | sum(63 << s for s in FIELD_SHIFTS)


def key_of(pos: int, exps) -> int:
    """Pack (position, exponent 6-tuple) into an order-compatible int64."""
    e1, e2, e3, e4, e5, e6 = exps
    deg = e1 + e2 + e3 + e4 + e5 + e6
    if deg > MAX_DEGREE:
        raise OverflowError(f"degree {deg} exceeds packing bound {MAX_DEGREE}")
    if not 0 <= pos <= MAX_POS:
        raise OverflowError(f"position {pos} out of range")
    return (
        ((15 - pos) << POS_SHIFT)
        | (deg << DEG_SHIFT)
        | ((63 - e6) << 24)
        | ((63 - e5) << 18)
        | ((63 - e4) << 12)
        | ((63 - e3) << 6)
        | (63 - e2)
    )


def unpack(key: int) -> tuple[int, tuple[int, int, int, int, int, int]]:
    """Inverse of key_of: returns (position, exponents)."""
    key = int(key)
    pos = 15 - ((key >> POS_SHIFT) & 15)
    deg = (key >> DEG_SHIFT) & FIELD_MASK
    e6 = 63 - ((key >> 24) & FIELD_MASK)
    e5 = 63 - ((key >> 18) & FIELD_MASK)
    e4 = 63 - ((key >> 12) & FIELD_MASK)
    e3 = 63 - ((key >> 6) & FIELD_MASK)
    e2 = 63 - (key & FIELD_MASK)
    e1 = deg - (e2 + e3 + e4 + e5 + e6)
    return pos, (e1, e2, e3, e4, e5, e6)


def mono_delta(exps) -> int:
    """Key offset that multiplies a packed term by the ring monomial x^exps."""
    e1, e2, e3, e4, e5, e6 = exps
    deg = e1 + e2 + e3 + e4 + e5 + e6
    return (deg << DEG_SHIFT) - ((e6 << 24) | (e5 << 18) | (e4 << 12) | (e3 << 6) | e2)


def delta_of_key(ring_key: int) -> int:
    """Delta of the ring monomial stored in ring_key (pos must be 0)."""
    return int(ring_key) - KEY_ONE
