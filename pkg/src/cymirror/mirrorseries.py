"""Frobenius solutions, mirror map, Yukawa coupling, and curve counts.

All series are exact rational truncations.  For a family cut out by
hypersurfaces of degrees d_i the hypergeometric parameters are the multiset
{j/d_i : 1 <= j < d_i}, the coupling's leading coefficient is D = prod d_i,
and the mirror-map scale is C = prod d_i^{d_i} (from the asymptotic
normalization s ~ log z - sum d_i log d_i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

DEFAULT_ORDER_PAD = 5


class IntegralityError(ArithmeticError):
    """A predicted curve count came out non-integral."""

    def __init__(self, degree: int, value: Fraction):
        super().__init__(f"n_{degree} = {value} is not an integer")
        self.degree = degree
        self.value = value


@dataclass(frozen=True)
class HGParams:
    """Hypergeometric data of a complete-intersection Calabi-Yau family."""

    degrees: tuple[int, ...]
    ambient_dim: int
    a: tuple[Fraction, ...]

    def __post_init__(self):
        if sum(self.degrees) != self.ambient_dim + 1:
            raise ValueError("degrees must sum to ambient dimension + 1")
        if len(self.a) != 4 or any(not 0 < x < 1 for x in self.a):
            raise ValueError("need four parameters strictly between 0 and 1")

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "HGParams":
        degrees = tuple(sorted(int(d) for d in degrees))
        if any(d < 2 for d in degrees):
            raise ValueError("hypersurface degrees must be >= 2")
        a = tuple(sorted(Fraction(j, d) for d in degrees for j in range(1, d)))
        return cls(degrees=degrees, ambient_dim=len(degrees) + 3, a=a)

    @property
    def D(self) -> int:
        return math.prod(self.degrees)

    @property
    def C(self) -> int:
        return math.prod(d**d for d in self.degrees)

    @property
    def label(self) -> str:
        return ",".join(str(d) for d in self.degrees)


PRESETS: dict[str, HGParams] = {
    "2,2,2,2": HGParams.from_degrees((2, 2, 2, 2)),
    "2,2,3": HGParams.from_degrees((2, 2, 3)),
    "3,3": HGParams.from_degrees((3, 3)),
    "2,4": HGParams.from_degrees((2, 4)),
    "5": HGParams.from_degrees((5,)),
}


class RationalSeries:
    """A truncated power series with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = [Fraction(c) for c in coeffs]
        if not self.coeffs:
            raise ValueError("series needs at least the constant term")

    @classmethod
    def zero(cls, order: int) -> "RationalSeries":
        return cls([Fraction(0)] * (order + 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def truncate(self, order: int) -> "RationalSeries":
        out = self.coeffs[: order + 1]
        out += [Fraction(0)] * (order + 1 - len(out))
        return RationalSeries(out)

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(self.order, other.order)
        return RationalSeries([self[i] + other[i] for i in range(n + 1)])

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(self.order, other.order)
        return RationalSeries([self[i] - other[i] for i in range(n + 1)])

    def __neg__(self) -> "RationalSeries":
        return RationalSeries([-c for c in self.coeffs])

    def scale(self, c) -> "RationalSeries":
        c = Fraction(c)
        return RationalSeries([x * c for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, RationalSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            ci = self.coeffs[i] if i < len(self.coeffs) else Fraction(0)
            if ci == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += ci * other[j]
        return RationalSeries(out)

    __rmul__ = __mul__

    def theta(self) -> "RationalSeries":
        """z d/dz."""
        return RationalSeries([n * c for n, c in enumerate(self.coeffs)])

    def reciprocal(self) -> "RationalSeries":
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series has zero constant term")
        inv0 = 1 / self.coeffs[0]
        out = [inv0]
        for m in range(1, self.order + 1):
            acc = Fraction(0)
            for k in range(1, m + 1):
                acc += self[k] * out[m - k]
            out.append(-acc * inv0)
        return RationalSeries(out)

    def exp(self) -> "RationalSeries":
        """exp of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term")
        out = [Fraction(1)]
        for m in range(1, self.order + 1):
            acc = Fraction(0)
            for k in range(1, m + 1):
                acc += k * self[k] * out[m - k]
            out.append(acc / m)
        return RationalSeries(out)

    def compose(self, inner: "RationalSeries") -> "RationalSeries":
        """self(inner(z)) for inner with zero constant term."""
        if inner.coeffs[0] != 0:
            raise ValueError("composition needs inner constant term zero")
        n = min(self.order, inner.order)
        out = [Fraction(0)] * (n + 1)
        out[0] = self[0]
        power = RationalSeries([Fraction(1)] + [Fraction(0)] * n)  # inner^k
        for k in range(1, n + 1):
            power = (power * inner).truncate(n)
            ck = self[k]
            if ck == 0:
                continue
            for m in range(k, n + 1):
                out[m] += ck * power[m]
        return RationalSeries(out)

    def revert(self) -> "RationalSeries":
        """Compositional inverse of a series with f(0) = 0, f'(0) != 0."""
        if self.coeffs[0] != 0:
            raise ValueError("reversion needs zero constant term")
        if self[1] == 0:
            raise ValueError("reversion needs a nonzero linear term")
        n = self.order
        out = [Fraction(0), 1 / self[1]]
        # powers[j] = self^j truncated; [z^m] self^j vanishes for j > m
        powers = [None, self.truncate(n)]
        for m in range(2, n + 1):
            powers.append((powers[m - 1] * self).truncate(n))
            acc = Fraction(0)
            for j in range(1, m):
                acc += out[j] * powers[j][m]
            out.append(-acc / self[1] ** m)
        return RationalSeries(out)

    def __repr__(self):
        bits = [f"{c}*z^{n}" for n, c in enumerate(self.coeffs[:8]) if c]
        return "RationalSeries(" + (" + ".join(bits) or "0") + f" + O(z^{self.order + 1}))"


def _indicial_product(a_params) -> list[Fraction]:
    """Coefficients of prod (x + a_i), ascending."""
    poly = [Fraction(1)]
    for a in a_params:
        out = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            out[k] += Fraction(a) * c
            out[k + 1] += c
        poly = out
    return poly


def _poly_at(poly: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def f0_series(params: HGParams, order: int) -> RationalSeries:
    """The holomorphic solution: c_0 = 1, c_{n+1} = c_n prod(n + a_i)/(n+1)^4."""
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = [Fraction(1)]
    for n in range(order):
        num = Fraction(1)
        for a in params.a:
            num *= n + a
        coeffs.append(coeffs[-1] * num / Fraction(n + 1) ** 4)
    return RationalSeries(coeffs)


def f1_series(params: HGParams, order: int) -> RationalSeries:
    """The series G with F_1 = F_0 log z + G, G(0) = 0.

    Determined by the log-free part of the operator identity:
    Theta^4 G - z P(Theta) G = z P'(Theta) F_0 - 4 Theta^3 F_0,
    where P(x) = prod (x + a_i).
    """
    f0 = f0_series(params, order)
    P = _indicial_product(params.a)
    dP = [k * P[k] for k in range(1, len(P))]
    g = [Fraction(0)]
    for n in range(1, order + 1):
        rhs = _poly_at(P, Fraction(n - 1)) * g[n - 1]
        rhs += _poly_at(dP, Fraction(n - 1)) * f0[n - 1]
        rhs -= 4 * Fraction(n) ** 3 * f0[n]
        g.append(rhs / Fraction(n) ** 4)
    return RationalSeries(g)


def mirror_map(f0: RationalSeries, g: RationalSeries, params: HGParams,
               order: int) -> tuple[RationalSeries, RationalSeries]:
    """The canonical coordinate q(z) = (z/C) exp(G/F0) and its inverse z(q).

    Returns (q_of_z, z_of_q) as exact series with zero constant terms;
    z(q(z)) = z holds to the truncation order.
    """
    C = params.C
    u = (g * f0.reciprocal()).truncate(order)
    E = u.exp()
    q_of_z = RationalSeries([Fraction(0)] + [E[m] / C for m in range(order)])
    y = RationalSeries([Fraction(0)] + [E[m] for m in range(order)])  # z * E = C q
    z_of_y = y.revert()
    z_of_q = RationalSeries([z_of_y[m] * Fraction(C) ** m for m in range(order + 1)])
    return q_of_z, z_of_q


def yukawa_q(f0: RationalSeries, g: RationalSeries, params: HGParams,
             order: int) -> RationalSeries:
    """The coupling D / (F0^2 (Theta s)^3 (1 - z)) written in the coordinate q.

    Theta s = 1 + Theta(G/F0); the leading coefficient is exactly D.
    """
    u = (g * f0.reciprocal()).truncate(order)
    theta_s = RationalSeries([Fraction(1)] + [0] * order) + u.theta()
    one_minus_z = RationalSeries([Fraction(1), Fraction(-1)] + [Fraction(0)] * (order - 1))
    denom = (f0 * f0 * theta_s * theta_s * theta_s * one_minus_z).truncate(order)
    y_of_z = denom.reciprocal().scale(params.D)
    _, z_of_q = mirror_map(f0, g, params, order)
    return y_of_z.compose(z_of_q)


@dataclass(frozen=True)
class InstantonTable:
    """Predicted rational-curve counts n_d and the leading coefficient D."""

    leading: int
    counts: dict[int, int]


def extract_instantons(kappa: RationalSeries, leading: int, d_max: int) -> InstantonTable:
    """Invert kappa = D + sum n_d d^3 q^d / (1 - q^d) for the n_d.

    Every n_d must come out an integer; a non-integral value raises
    IntegralityError carrying the offending rational.
    """
    if kappa.order < d_max:
        raise ValueError("coupling series is truncated below d_max")
    if kappa[0] != leading:
        raise ValueError(f"kappa(0) = {kappa[0]}, expected the leading coefficient {leading}")
    counts: dict[int, int] = {}
    for d in range(1, d_max + 1):
        acc = kappa[d]
        for e in range(1, d):
            if d % e == 0:
                acc -= counts[e] * Fraction(e) ** 3
        value = acc / Fraction(d) ** 3
        if value.denominator != 1:
            raise IntegralityError(d, value)
        counts[d] = int(value)
    return InstantonTable(leading=leading, counts=counts)


def instanton_table(params: HGParams, d_max: int,
                    order_pad: int = DEFAULT_ORDER_PAD) -> tuple[RationalSeries, InstantonTable]:
    """Full chain: series, mirror map, coupling, integer counts."""
    order = d_max + order_pad
    f0 = f0_series(params, order)
    g = f1_series(params, order)
    kappa = yukawa_q(f0, g, params, order)
    return kappa, extract_instantons(kappa, params.D, d_max)
