"""Sparse homogeneous polynomials in six variables over F_p or Q.

Monomials are exponent 6-tuples; polynomials are monomial -> coefficient maps
with no stored zeros.  The scalar domain is either a PrimeField (residues as
ints) or QQ (Fractions).  The degree-3 family

    Q1 = x1^3 + x2^3 + x3^3 - 3*lam*x4*x5*x6
    Q2 = x4^3 + x5^3 + x6^3 - 3*lam*x1*x2*x3

is specialized at a constant lam at construction time; no rational-function
coefficients are ever needed.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator

from .exactnum import PrimeField

NVARS = 6

Monomial = tuple[int, int, int, int, int, int]

MONO_ONE: Monomial = (0, 0, 0, 0, 0, 0)


class DomainMismatch(TypeError):
    """Operands live over different scalar domains."""


class _RationalDomain:
    """Scalar domain marker for exact rationals."""

    __slots__ = ()

    def of(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return 1 / Fraction(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, _RationalDomain)

    def __hash__(self):
        return hash("QQ")


QQ = _RationalDomain()


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomials_of_degree(d: int) -> Iterator[Monomial]:
    """All degree-d monomials in 6 variables (deterministic order)."""
    for bars in itertools.combinations(range(d + NVARS - 1), NVARS - 1):
        exps = []
        prev = -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + NVARS - 2 - prev)
        yield tuple(exps)


class Polynomial:
    """A sparse polynomial over a fixed scalar domain."""

    __slots__ = ("dom", "terms")

    def __init__(self, dom, terms: dict | None = None):
        self.dom = dom
        self.terms = terms if terms is not None else {}

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, dom) -> "Polynomial":
        return cls(dom)

    @classmethod
    def constant(cls, dom, c) -> "Polynomial":
        c = dom.of(c)
        return cls(dom, {MONO_ONE: c} if c != dom.of(0) else {})

    @classmethod
    def variable(cls, dom, i: int, power: int = 1) -> "Polynomial":
        mono = tuple(power if k == i else 0 for k in range(NVARS))
        return cls(dom, {mono: dom.of(1)})

    @classmethod
    def monomial(cls, dom, mono: Monomial, c=1) -> "Polynomial":
        c = dom.of(c)
        return cls(dom, {tuple(mono): c} if c != dom.of(0) else {})

    # -- inspection ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), self.dom.of(0))

    @property
    def homogeneous_degree(self):
        """Common degree of all monomials, or None for inhomogeneous/zero."""
        degs = {mono_degree(m) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self) -> bool:
        return self.is_zero() or self.homogeneous_degree is not None

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.dom != other.dom:
            raise DomainMismatch(f"domains differ: {self.dom} vs {other.dom}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        dom = self.dom
        zero = dom.of(0)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = dom.add(out.get(m, zero), c)
            if v == zero:
                out.pop(m, None)
            else:
                out[m] = v
        return Polynomial(dom, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        dom = self.dom
        return Polynomial(dom, {m: dom.neg(c) for m, c in self.terms.items()})

    def scale(self, c) -> "Polynomial":
        dom = self.dom
        c = dom.of(c)
        zero = dom.of(0)
        if c == zero:
            return Polynomial.zero(dom)
        return Polynomial(dom, {m: dom.mul(v, c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        dom = self.dom
        zero = dom.of(0)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = dom.add(out.get(m, zero), dom.mul(c1, c2))
                if v == zero:
                    out.pop(m, None)
                else:
                    out[m] = v
        return Polynomial(dom, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dom == other.dom and self.terms == other.terms

    def __hash__(self):
        return hash((self.dom, frozenset(self.terms.items())))

    def partial(self, i: int) -> "Polynomial":
        """Partial derivative with respect to x_{i+1} (0-based index)."""
        dom = self.dom
        zero = dom.of(0)
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            dm = tuple(v - 1 if k == i else v for k, v in enumerate(m))
            v = dom.add(out.get(dm, zero), dom.mul(c, dom.of(e)))
            if v == zero:
                out.pop(dm, None)
            else:
                out[dm] = v
        return Polynomial(dom, out)

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        bits = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "*".join(f"x{i+1}^{e}" if e > 1 else f"x{i+1}" for i, e in enumerate(m) if e)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "Polynomial(" + " + ".join(bits) + ")"


class PolyVector:
    """A fixed-length vector of polynomials over one domain."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Polynomial]):
        comps = list(components)
        if not comps:
            raise ValueError("empty vector")
        dom = comps[0].dom
        for c in comps[1:]:
            if c.dom != dom:
                raise DomainMismatch("vector components over different domains")
        self.components = comps

    @classmethod
    def zero(cls, dom, length: int) -> "PolyVector":
        return cls([Polynomial.zero(dom) for _ in range(length)])

    @property
    def dom(self):
        return self.components[0].dom

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "PolyVector") -> "PolyVector":
        if len(other) != len(self):
            raise ValueError("length mismatch")
        return PolyVector([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        if len(other) != len(self):
            raise ValueError("length mismatch")
        return PolyVector([a - b for a, b in zip(self.components, other.components)])

    def scale(self, c) -> "PolyVector":
        return PolyVector([p.scale(c) for p in self.components])

    def __eq__(self, other):
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.components == other.components

    def homogeneous_degree(self):
        """Common degree of the nonzero components, or None."""
        degs = {c.homogeneous_degree for c in self.components if not c.is_zero()}
        if len(degs) == 1 and None not in degs:
            return degs.pop()
        return None

    def __repr__(self):
        return f"PolyVector({self.components!r})"


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    """Product with merged like terms; raises DomainMismatch on mixed scalars."""
    return f * g


def divergence(vec: PolyVector) -> Polynomial:
    """Sum of the k-th partial of the k-th component; requires length 6."""
    if len(vec) != NVARS:
        raise ValueError(f"divergence needs a 6-vector, got length {len(vec)}")
    out = Polynomial.zero(vec.dom)
    for k, comp in enumerate(vec.components):
        out = out + comp.partial(k)
    return out


def build_family(lam0, dom=None) -> tuple[Polynomial, Polynomial, PolyVector, PolyVector]:
    """The two specialized cubics and the rows of their Jacobian matrix.

    Returns (Q1, Q2, J1, J2) over dom, with lam coerced through dom.of.
    dom defaults to QQ for Fraction/int input, and must be given explicitly
    for prime fields.
    """
    if dom is None:
        dom = QQ
    lam = dom.of(lam0)
    one = dom.of(1)
    m3lam = dom.neg(dom.mul(dom.of(3), lam))

    def cube(i):
        return tuple(3 if k == i else 0 for k in range(NVARS))

    q1 = Polynomial(dom, {cube(0): one, cube(1): one, cube(2): one})
    q2 = Polynomial(dom, {cube(3): one, cube(4): one, cube(5): one})
    if m3lam != dom.of(0):
        q1.terms[(0, 0, 0, 1, 1, 1)] = m3lam
        q2.terms[(1, 1, 1, 0, 0, 0)] = m3lam
    j1 = PolyVector([q1.partial(k) for k in range(NVARS)])
    j2 = PolyVector([q2.partial(k) for k in range(NVARS)])
    return q1, q2, j1, j2
