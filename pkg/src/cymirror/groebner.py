"""Groebner bases for submodules of S^m over a prime field, with certificates.

The module order is position-over-term (lower position index wins) with
graded reverse lexicographic terms, x1 > ... > x6.  Buchberger's algorithm
with the chain criterion builds a reduced basis; every basis element carries
its expression as an explicit S-linear combination of the original presenting
columns, so that division produces the exact certificate

    v = remainder + sum_c columns[c] * quotients[c].

Degree-capped runs process only S-pairs of degree <= cap; for homogeneous
input this yields normal forms that are correct in all degrees <= cap, which
is what the pole-order reduction needs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from . import _packing
from ._kernels import merge_axpy, poly_mul, reduce_full
from .exactnum import PrimeField
from .polyalg import NVARS, Polynomial, PolyVector, monomials_of_degree

_EMPTY = np.empty(0, np.int64)
_KEY_ONE = _packing.KEY_ONE


class GroebnerError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# conversions between dict polynomials and packed arrays
# ---------------------------------------------------------------------------

def poly_to_arrays(poly: Polynomial, pos: int = 0) -> tuple[np.ndarray, np.ndarray]:
    if poly.is_zero():
        return _EMPTY.copy(), _EMPTY.copy()
    items = [(_packing.key_of(pos, m), int(c)) for m, c in poly.terms.items()]
    items.sort(reverse=True)
    keys = np.array([k for k, _ in items], np.int64)
    cos = np.array([c for _, c in items], np.int64)
    return keys, cos


def vector_to_arrays(vec: PolyVector) -> tuple[np.ndarray, np.ndarray]:
    items = []
    for i, comp in enumerate(vec.components):
        for m, c in comp.terms.items():
            items.append((_packing.key_of(i + 1, m), int(c)))
    items.sort(reverse=True)
    keys = np.array([k for k, _ in items], np.int64)
    cos = np.array([c for _, c in items], np.int64)
    return keys, cos


def arrays_to_vector(field: PrimeField, rank: int, keys, cos) -> PolyVector:
    comps = [dict() for _ in range(rank)]
    for k, c in zip(keys.tolist(), cos.tolist()):
        pos, exps = _packing.unpack(k)
        comps[pos - 1][exps] = c
    return PolyVector([Polynomial(field, t) for t in comps])


def arrays_to_poly(field: PrimeField, keys, cos) -> Polynomial:
    terms = {}
    for k, c in zip(keys.tolist(), cos.tolist()):
        _, exps = _packing.unpack(k)
        terms[exps] = c
    return Polynomial(field, terms)


def _lead_pe_row(key: int) -> tuple[int, ...]:
    pos, exps = _packing.unpack(key)
    return (15 - pos,) + exps  # store the posfield, as the kernels see it


def _shift_scale(keys, cos, delta: int, coef: int, p: int):
    if keys.shape[0] == 0:
        return keys, cos
    return keys + delta, (cos * coef) % p


def _collapse_terms(pairs: list[tuple[int, int]], p: int):
    """Sorted-desc packed arrays from (key, coeff) pairs with duplicates."""
    pairs.sort(reverse=True)
    keys: list[int] = []
    cos: list[int] = []
    for k, c in pairs:
        if keys and keys[-1] == k:
            cos[-1] = (cos[-1] + c) % p
        else:
            keys.append(k)
            cos.append(c % p)
    out_k = []
    out_c = []
    for k, c in zip(keys, cos):
        if c:
            out_k.append(k)
            out_c.append(c)
    return np.array(out_k, np.int64), np.array(out_c, np.int64)


# ---------------------------------------------------------------------------
# expression bookkeeping (basis element = S-combination of original columns)
# ---------------------------------------------------------------------------

def _expr_shift_scale(expr: dict, delta: int, coef: int, p: int) -> dict:
    return {c: _shift_scale(k, co, delta, coef, p) for c, (k, co) in expr.items()}


def _expr_add(acc: dict, other: dict, coef: int, p: int) -> None:
    """acc += coef * other, in place."""
    for col, (k, co) in other.items():
        cur = acc.get(col)
        if cur is None:
            nk, nc = _shift_scale(k, co, 0, coef, p)
            if nk.shape[0]:
                acc[col] = (nk.copy(), nc % p)
        else:
            nk, nc = merge_axpy(cur[0], cur[1], k, co, coef, 0, p)
            if nk.shape[0]:
                acc[col] = (nk, nc)
            else:
                acc.pop(col)


def _expr_addmul(acc: dict, qk, qc, expr: dict, p: int, negate: bool) -> None:
    """acc += (-1 if negate else 1) * q * expr, q a ring polynomial."""
    for col, (k, co) in expr.items():
        pk, pc = poly_mul(k, co, qk, qc, p)
        if negate:
            pc = (p - pc) % p
        cur = acc.get(col)
        if cur is None:
            if pk.shape[0]:
                acc[col] = (pk, pc)
        else:
            nk, nc = merge_axpy(cur[0], cur[1], pk, pc, 1, 0, p)
            if nk.shape[0]:
                acc[col] = (nk, nc)
            else:
                acc.pop(col)


# ---------------------------------------------------------------------------
# the basis object
# ---------------------------------------------------------------------------

@dataclass
class DivisionRecord:
    """Certificate for one division: input = remainder + columns . quotients."""

    quotients: dict[int, Polynomial]
    remainder: PolyVector


class GroebnerBasis:
    """A reduced Groebner basis with expression tracking.

    Attributes of interest: ``field``, ``rank`` (m of S^m), ``degree_cap``
    (None for a full basis), ``columns`` (the presenting matrix) and
    ``generators`` (the reduced basis as PolyVectors).
    """

    def __init__(self, field: PrimeField, rank: int, columns: list[PolyVector], degree_cap):
        self.field = field
        self.rank = rank
        self.columns = columns
        self.degree_cap = degree_cap
        self._keys: list[np.ndarray] = []
        self._cos: list[np.ndarray] = []
        self._exprs: list[dict] = []
        self._flat_k = _EMPTY
        self._flat_c = _EMPTY
        self._offs = np.zeros(1, np.int64)
        self._lead_keys = _EMPTY
        self._lead_pe = np.empty((0, 7), np.int64)
        self._dirty = False

    # -- internal maintenance -------------------------------------------
    def _append(self, keys, cos, expr) -> None:
        self._keys.append(keys)
        self._cos.append(cos)
        self._exprs.append(expr)
        self._dirty = True

    def _refresh(self) -> None:
        if not self._dirty:
            return
        if self._keys:
            self._flat_k = np.concatenate(self._keys)
            self._flat_c = np.concatenate(self._cos)
            self._offs = np.zeros(len(self._keys) + 1, np.int64)
            np.cumsum([k.shape[0] for k in self._keys], out=self._offs[1:])
            self._lead_keys = np.array([int(k[0]) for k in self._keys], np.int64)
            self._lead_pe = np.array([_lead_pe_row(int(k[0])) for k in self._keys], np.int64)
        else:
            self._flat_k = _EMPTY
            self._flat_c = _EMPTY
            self._offs = np.zeros(1, np.int64)
            self._lead_keys = _EMPTY
            self._lead_pe = np.empty((0, 7), np.int64)
        self._dirty = False

    def _reduce_arrays(self, keys, cos):
        self._refresh()
        if keys.shape[0] == 0:
            return keys, cos, _EMPTY, _EMPTY, _EMPTY
        return reduce_full(
            keys, cos, self._flat_k, self._flat_c, self._offs,
            self._lead_keys, self._lead_pe, self.field.p,
        )

    def _quotients_from_steps(self, sj, sd, sc) -> dict[int, tuple]:
        """Per-original-column quotient arrays from a reduction step log."""
        p = self.field.p
        by_elt: dict[int, list[tuple[int, int]]] = {}
        for j, d, c in zip(sj.tolist(), sd.tolist(), sc.tolist()):
            by_elt.setdefault(j, []).append((_KEY_ONE + d, c))
        acc: dict[int, tuple] = {}
        for j, pairs in sorted(by_elt.items()):
            qk, qc = _collapse_terms(pairs, p)
            _expr_addmul(acc, qk, qc, self._exprs[j], p, negate=False)
        return acc

    # -- public surface ---------------------------------------------------
    @property
    def size(self) -> int:
        return len(self._keys)

    @property
    def generators(self) -> list[PolyVector]:
        return [arrays_to_vector(self.field, self.rank, k, c) for k, c in zip(self._keys, self._cos)]

    @property
    def expressions(self) -> list[dict[int, Polynomial]]:
        return [
            {col: arrays_to_poly(self.field, k, c) for col, (k, c) in sorted(e.items())}
            for e in self._exprs
        ]

    def lead_terms(self) -> list[tuple[int, tuple[int, ...]]]:
        """(position, exponent tuple) of each basis lead."""
        return [_packing.unpack(int(k[0])) for k in self._keys]

    def normal_form(self, vec: PolyVector) -> tuple[PolyVector, DivisionRecord]:
        """Canonical form of vec plus the division certificate.

        vec must be homogeneous; for a degree-capped basis its degree must
        not exceed the cap (normal forms above the cap would be wrong).
        """
        if len(vec) != self.rank:
            raise GroebnerError(f"vector length {len(vec)} != module rank {self.rank}")
        if vec.dom != self.field:
            raise GroebnerError("vector and basis live over different fields")
        deg = vec.homogeneous_degree()
        if deg is None and not vec.is_zero():
            raise GroebnerError("normal_form requires a homogeneous vector")
        if self.degree_cap is not None and deg is not None and deg > self.degree_cap:
            raise GroebnerError(f"degree {deg} exceeds basis cap {self.degree_cap}")
        keys, cos = vector_to_arrays(vec)
        rk, rc, sj, sd, sc = self._reduce_arrays(keys, cos)
        remainder = arrays_to_vector(self.field, self.rank, rk, rc)
        quots = {
            col: arrays_to_poly(self.field, k, c)
            for col, (k, c) in sorted(self._quotients_from_steps(sj, sd, sc).items())
        }
        return remainder, DivisionRecord(quotients=quots, remainder=remainder)

    def graded_piece_dim(self, degree: int) -> int:
        """Dimension of the degree slice of the presented cokernel.

        Counts monomial-times-unit-vector terms of the degree that are not
        divisible by any basis lead (the standard monomials).
        """
        if degree < 0:
            raise ValueError("degree must be >= 0")
        if self.degree_cap is not None and degree > self.degree_cap:
            raise GroebnerError(f"degree {degree} exceeds basis cap {self.degree_cap}")
        self._refresh()
        exps = _exponent_matrix(degree)
        n = exps.shape[0]
        total = 0
        for pos in range(1, self.rank + 1):
            posf = 15 - pos
            sel = self._lead_pe[self._lead_pe[:, 0] == posf, 1:]
            if sel.shape[0] == 0:
                total += n
                continue
            reducible = np.zeros(n, np.bool_)
            for row in sel:
                reducible |= np.all(exps >= row[None, :], axis=1)
            total += n - int(reducible.sum())
        return total


_EXP_CACHE: dict[int, np.ndarray] = {}


def _exponent_matrix(degree: int) -> np.ndarray:
    mat = _EXP_CACHE.get(degree)
    if mat is None:
        mat = np.array(list(monomials_of_degree(degree)), np.int64).reshape(-1, NVARS)
        _EXP_CACHE[degree] = mat
    return mat


# ---------------------------------------------------------------------------
# Buchberger with the chain criterion
# ---------------------------------------------------------------------------

def _lcm_key(lead_i: int, lead_j: int) -> tuple[int, int] | None:
    """(degree, key) of the lcm of two leads, None if positions differ."""
    pos_i, e_i = _packing.unpack(lead_i)
    pos_j, e_j = _packing.unpack(lead_j)
    if pos_i != pos_j:
        return None
    lcm = tuple(max(a, b) for a, b in zip(e_i, e_j))
    return sum(lcm), _packing.key_of(pos_i, lcm)


def _divides_key(small: int, big: int) -> bool:
    ps, es = _packing.unpack(small)
    pb, eb = _packing.unpack(big)
    return ps == pb and all(a <= b for a, b in zip(es, eb))


def buchberger(columns: list[PolyVector], degree_cap: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by the columns.

    All columns must be homogeneous vectors of one length over one prime
    field.  With degree_cap set, S-pairs above the cap are discarded; the
    result is then a basis valid through that degree only.
    """
    if not columns:
        raise GroebnerError("no columns given")
    rank = len(columns[0])
    field = columns[0].dom
    if not isinstance(field, PrimeField):
        raise GroebnerError("Groebner engine works over prime fields only")
    for col in columns:
        if col.dom != field:
            raise GroebnerError("mixed moduli in presenting columns")
        if len(col) != rank:
            raise GroebnerError("presenting columns of unequal length")
        if col.homogeneous_degree() is None and not col.is_zero():
            raise GroebnerError("presenting columns must be homogeneous")
    p = field.p
    gb = GroebnerBasis(field, rank, list(columns), degree_cap)

    pairs: set[tuple[int, int]] = set()
    pair_meta: dict[tuple[int, int], tuple[int, int]] = {}
    heap: list[tuple[int, int, int, int]] = []

    def add_element(keys, cos, expr) -> None:
        """Monicize, append, and update the pair set (Gebauer-Moller style)."""
        lc = int(cos[0])
        if lc != 1:
            inv = field.inv(lc)
            cos = (cos * inv) % p
            expr = _expr_shift_scale(expr, 0, inv, p)
        t = gb.size
        gb._append(keys, cos, expr)
        lead_t = int(keys[0])
        # candidate new pairs
        cands = []
        for i in range(t):
            lk = _lcm_key(int(gb._keys[i][0]), lead_t)
            if lk is None:
                continue
            deg, key = lk
            if degree_cap is not None and deg > degree_cap:
                continue
            cands.append((key, deg, i))
        # keep only minimal lcms; one representative per equal-lcm class
        cands.sort()
        kept: list[tuple[int, int, int]] = []
        for key, deg, i in cands:
            drop = False
            for kkey, _, _ in kept:
                if kkey == key or _divides_key(kkey, key):
                    drop = True
                    break
            if drop:
                continue
            if rank == 1:
                # coprime-lead criterion; valid for ideals, not for modules
                _, ei = _packing.unpack(int(gb._keys[i][0]))
                _, et = _packing.unpack(lead_t)
                if all(a == 0 or b == 0 for a, b in zip(ei, et)):
                    continue
            kept.append((key, deg, i))
        # chain criterion on the old pairs
        for (i, j) in list(pairs):
            _, key_ij = pair_meta[(i, j)]
            if _divides_key(lead_t, key_ij):
                ki = _lcm_key(int(gb._keys[i][0]), lead_t)
                kj = _lcm_key(int(gb._keys[j][0]), lead_t)
                if ki is not None and kj is not None and ki[1] != key_ij and kj[1] != key_ij:
                    pairs.discard((i, j))
                    del pair_meta[(i, j)]
        for key, deg, i in kept:
            pairs.add((i, t))
            pair_meta[(i, t)] = (deg, key)
            heapq.heappush(heap, (deg, key, i, t))

    # seed with the nonzero columns
    for idx, col in enumerate(columns):
        keys, cos = vector_to_arrays(col)
        if keys.shape[0] == 0:
            continue
        add_element(keys, cos, {idx: (np.array([_KEY_ONE], np.int64), np.array([1], np.int64))})

    while heap:
        deg, lcm, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue  # pruned by the chain criterion
        pairs.discard((i, j))
        pair_meta.pop((i, j))
        delta_i = lcm - int(gb._keys[i][0])
        delta_j = lcm - int(gb._keys[j][0])
        sk, sc_ = _shift_scale(gb._keys[i], gb._cos[i], delta_i, 1, p)
        sk, sc_ = merge_axpy(sk, sc_, gb._keys[j], gb._cos[j], p - 1, delta_j, p)
        if sk.shape[0] == 0:
            continue
        rk, rc, stj, std, stc = gb._reduce_arrays(sk, sc_)
        if rk.shape[0] == 0:
            continue
        expr = _expr_shift_scale(gb._exprs[i], delta_i, 1, p)
        _expr_add(expr, _expr_shift_scale(gb._exprs[j], delta_j, 1, p), p - 1, p)
        _apply_steps_to_expr(gb, expr, stj, std, stc)
        add_element(rk, rc, expr)

    _interreduce(gb)
    gb._refresh()
    return gb


def _apply_steps_to_expr(gb: GroebnerBasis, expr: dict, sj, sd, sc) -> None:
    """expr -= sum over steps of coeff * monomial * expr(used basis element)."""
    p = gb.field.p
    by_elt: dict[int, list[tuple[int, int]]] = {}
    for j, d, c in zip(sj.tolist(), sd.tolist(), sc.tolist()):
        by_elt.setdefault(j, []).append((_KEY_ONE + d, c))
    for j, pr in sorted(by_elt.items()):
        qk, qc = _collapse_terms(pr, p)
        _expr_addmul(expr, qk, qc, gb._exprs[j], p, negate=True)


def _interreduce(gb: GroebnerBasis) -> None:
    """Drop redundant leads, then reduce every tail: the reduced basis.

    Tails are reduced against a frozen snapshot of the minimalized basis;
    the normal form of a tail is canonical for the module, so the result is
    the reduced basis regardless of the reducers' own tail state.
    """
    order = sorted(range(gb.size), key=lambda t: int(gb._keys[t][0]))
    kept: list[int] = []
    for t in order:
        lead = int(gb._keys[t][0])
        if any(_divides_key(int(gb._keys[u][0]), lead) for u in kept):
            continue
        kept.append(t)
    gb._keys = [gb._keys[t] for t in kept]
    gb._cos = [gb._cos[t] for t in kept]
    gb._exprs = [gb._exprs[t] for t in kept]
    gb._dirty = True
    gb._refresh()
    frozen = (gb._flat_k, gb._flat_c, gb._offs, gb._lead_keys, gb._lead_pe)
    frozen_exprs = [dict(e) for e in gb._exprs]  # entries are immutable array pairs
    p = gb.field.p
    for t in range(len(gb._keys)):
        keys, cos = gb._keys[t], gb._cos[t]
        if keys.shape[0] <= 1:
            continue
        rk, rc, sj, sd, sc = reduce_full(keys[1:], cos[1:], *frozen, p)
        if sj.shape[0] == 0:
            continue
        gb._keys[t] = np.concatenate((keys[:1], rk))
        gb._cos[t] = np.concatenate((cos[:1], rc))
        expr = gb._exprs[t]
        by_elt: dict[int, list[tuple[int, int]]] = {}
        for j, d, c in zip(sj.tolist(), sd.tolist(), sc.tolist()):
            by_elt.setdefault(j, []).append((_KEY_ONE + d, c))
        for j, pr in sorted(by_elt.items()):
            qk, qc = _collapse_terms(pr, p)
            _expr_addmul(expr, qk, qc, frozen_exprs[j], p, negate=True)
        gb._dirty = True
    gb._refresh()


# ---------------------------------------------------------------------------
# module-level operation names
# ---------------------------------------------------------------------------

def normal_form(vec: PolyVector, gb: GroebnerBasis) -> tuple[PolyVector, DivisionRecord]:
    return gb.normal_form(vec)


def graded_piece_dim(gb: GroebnerBasis, degree: int) -> int:
    return gb.graded_piece_dim(degree)


def division_identity_holds(vec: PolyVector, record: DivisionRecord, columns: list[PolyVector]) -> bool:
    """Exact check of vec == remainder + columns . quotients."""
    acc = record.remainder
    for col_idx, q in record.quotients.items():
        contrib = PolyVector([comp * q for comp in columns[col_idx].components])
        acc = acc + contrib
    return acc == vec
