"""Independent enumerative checks: Schubert line counts and Euler characteristics.

Line counts come from intersection theory on the Grassmannian of lines: the
lines on a degree-d hypersurface form the top Chern class of the d-th
symmetric power of the dual tautological bundle, expanded in the Schubert
basis by Pieri's rule.  Euler characteristics of complete intersections come
from the Chern-class identity c(V) (1 + d1 h)...(1 + dk h) = (1 + h)^(n+1).

The quotient check enumerates the order-81 diagonal symmetry group of the
two-cubic family, classifies every element's fixed locus on a generic fiber,
and assembles the orbifold Euler characteristic from the census.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

# ---------------------------------------------------------------------------
# Schubert calculus on Gr(2, m) (lines in P^{m-1}), two-row partitions
# ---------------------------------------------------------------------------


class SchubertError(ValueError):
    pass


@dataclass(frozen=True)
class SchubertClass:
    """An integer combination of basis classes sigma_{a,b} on Gr(2, m)."""

    m: int
    coeffs: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def make(cls, m: int, data: dict[tuple[int, int], int]) -> "SchubertClass":
        clean = {}
        for (a, b), c in data.items():
            if c == 0 or a > m - 2:
                continue
            if not (a >= b >= 0):
                raise SchubertError(f"bad partition ({a}, {b})")
            clean[(a, b)] = c
        return cls(m, tuple(sorted(clean.items())))

    @classmethod
    def sigma(cls, m: int, a: int, b: int = 0, coeff: int = 1) -> "SchubertClass":
        return cls.make(m, {(a, b): coeff})

    @classmethod
    def one(cls, m: int) -> "SchubertClass":
        return cls.sigma(m, 0, 0)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, a: int, b: int) -> int:
        return dict(self.coeffs).get((a, b), 0)

    def __add__(self, other: "SchubertClass") -> "SchubertClass":
        if other.m != self.m:
            raise SchubertError("ambient Grassmannians differ")
        data = self.as_dict()
        for key, c in other.coeffs:
            data[key] = data.get(key, 0) + c
        return SchubertClass.make(self.m, data)

    def scale(self, c: int) -> "SchubertClass":
        return SchubertClass.make(self.m, {k: v * c for k, v in self.coeffs})


def _pieri(cls: SchubertClass, k: int) -> SchubertClass:
    """Multiply by the special class sigma_k."""
    m = cls.m
    out: dict[tuple[int, int], int] = {}
    for (a, b), c in cls.coeffs:
        # sigma_k * sigma_{a,b} = sum over c+d = a+b+k with c >= a >= d >= b
        for cc in range(a, min(a + k, m - 2) + 1):
            dd = a + b + k - cc
            if b <= dd <= a and cc >= dd:
                out[(cc, dd)] = out.get((cc, dd), 0) + c
    return SchubertClass.make(m, out)


def class_mul(c1: SchubertClass, c2: SchubertClass) -> SchubertClass:
    """Product in the cohomology ring of Gr(2, m).

    Basis products use the rank-2 Giambelli identity
    sigma_{a,b} = sigma_a sigma_b - sigma_{a+1} sigma_{b-1}, reducing
    everything to iterated Pieri multiplications.
    """
    if c1.m != c2.m:
        raise SchubertError("ambient Grassmannians differ")
    result = SchubertClass.make(c1.m, {})
    for (a, b), c in c2.coeffs:
        if b == 0:
            term = _pieri(c1, a)
        else:
            term = _pieri(_pieri(c1, b), a)
            if b >= 1:
                minus = _pieri(_pieri(c1, b - 1), a + 1)
                term = term + minus.scale(-1)
        result = result + term.scale(c)
    return result


def omega_to_sigma(p: int, q: int, n: int) -> tuple[int, int]:
    """Incidence cycle (lines meeting a P^p inside a P^q in P^n) as a partition."""
    return (n - 1 - p, n - q)


def sigma_to_omega(a: int, b: int, n: int) -> tuple[int, int]:
    return (n - 1 - a, n - b)


def _symmetric_to_elementary(sym: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    """Rewrite a symmetric polynomial in two variables in e1, e2.

    Input maps (i, j) with i >= j to the coefficient of x^i y^j (+ x^j y^i
    when i > j); output maps (r, s) to the coefficient of e1^r e2^s.
    """
    work = dict(sym)
    out: dict[tuple[int, int], int] = {}
    while work:
        (i, j) = max(work)
        c = work.pop((i, j))
        if c == 0:
            continue
        out[(i - j, j)] = out.get((i - j, j), 0) + c
        # subtract c * e1^(i-j) e2^j, expanded
        expansion = _expand_e(i - j, j)
        for key, v in expansion.items():
            if key == (i, j):
                continue
            work[key] = work.get(key, 0) - c * v
        work = {k: v for k, v in work.items() if v != 0}
    return {k: v for k, v in out.items() if v != 0}


def _expand_e(r: int, s: int) -> dict[tuple[int, int], int]:
    """(x + y)^r (x y)^s as a symmetric-monomial dict keyed by (i, j), i >= j."""
    out: dict[tuple[int, int], int] = {}
    for t in range(r + 1):
        i, j = r - t + s, t + s
        if i < j:
            continue
        c = math.comb(r, t)
        if i == j:
            out[(i, j)] = out.get((i, j), 0) + c
        else:
            # x^i y^j and x^j y^i both occur; symmetric dict stores once
            out[(i, j)] = out.get((i, j), 0) + c
    return out


def lines_incidence_class(d: int, m: int) -> SchubertClass:
    """Class of lines on a generic degree-d hypersurface in P^{m-1}.

    The top Chern class of Sym^d of the dual tautological bundle is
    prod_{i=0..d} (i alpha + (d-i) beta); expanding in e1 = sigma_1 and
    e2 = sigma_{1,1} and pushing through Pieri gives the Schubert expansion.
    """
    if d < 2 or m < 4:
        raise SchubertError("need degree >= 2 and lines in at least P^3")
    # expand prod (i*x + (d-i)*y) as a symmetric dict
    poly: dict[tuple[int, int], int] = {(0, 0): 1}
    for i in range(d + 1):
        nxt: dict[tuple[int, int], int] = {}
        for (ix, iy), c in poly.items():
            for (dx, dy, cc) in ((1, 0, i), (0, 1, d - i)):
                if cc == 0:
                    continue
                key = (ix + dx, iy + dy)
                nxt[key] = nxt.get(key, 0) + c * cc
        poly = nxt
    # fold x^i y^j with its mirror into a symmetric dict keyed by i >= j
    sym: dict[tuple[int, int], int] = {}
    for (i, j), c in poly.items():
        if i < j:
            continue
        if i == j:
            sym[(i, j)] = sym.get((i, j), 0) + c
        else:
            sym[(i, j)] = sym.get((i, j), 0) + c  # mirror term has equal coefficient
    elem = _symmetric_to_elementary(sym)
    result = SchubertClass.make(m, {})
    for (r, s), c in elem.items():
        term = SchubertClass.one(m)
        for _ in range(s):
            term = class_mul(term, SchubertClass.sigma(m, 1, 1))
        for _ in range(r):
            term = _pieri(term, 1)
        result = result + term.scale(c)
    if result.is_zero():
        raise SchubertError(f"incidence class of degree {d} vanishes on Gr(2, {m})")
    return result


def line_count(degrees: Iterable[int], n: int) -> int:
    """Number of lines on a generic complete intersection of the degrees in P^n.

    The expected dimension must be zero: sum (d_i + 1) = 2(n - 1).
    """
    degrees = list(degrees)
    if sum(d + 1 for d in degrees) != 2 * (n - 1):
        raise SchubertError(
            f"expected dimension is not zero for degrees {degrees} in P^{n}"
        )
    m = n + 1
    acc = SchubertClass.one(m)
    for d in degrees:
        acc = class_mul(acc, lines_incidence_class(d, m))
    return acc.coefficient(n - 1, n - 1)


# ---------------------------------------------------------------------------
# Euler characteristics of complete intersections
# ---------------------------------------------------------------------------

def ci_euler(degrees: Iterable[int], n: int) -> int:
    """Topological Euler characteristic of a smooth complete intersection.

    chi = (prod d_j) * [h^{n-k}] (1 + h)^{n+1} / prod (1 + d_j h), computed
    by exact integer power-series division.
    """
    degrees = list(degrees)
    k = len(degrees)
    if n - k < 0:
        raise ValueError("codimension exceeds ambient dimension")
    top = n - k
    # (1 + h)^{n+1} truncated
    series = [math.comb(n + 1, i) for i in range(top + 1)]
    for d in degrees:
        # multiply by (1 + d h)^{-1} = sum (-d)^j h^j
        out = [0] * (top + 1)
        for i in range(top + 1):
            acc = 0
            for j in range(i + 1):
                acc += series[i - j] * (-d) ** j
            out[i] = acc
        series = out
    return math.prod(degrees) * series[top]


# ---------------------------------------------------------------------------
# the order-81 symmetry group and its fixed loci
# ---------------------------------------------------------------------------

class CensusMismatch(RuntimeError):
    """The fixed-locus census disagrees with its cross-checks."""


class UnclassifiablePattern(RuntimeError):
    """A fixed-locus pattern outside the expected classification appeared."""


@dataclass(frozen=True)
class GroupElement:
    """Diagonal symmetry g_{alpha,beta,delta,eps,mu} of the two-cubic family.

    Coordinates scale by ninth roots of unity with exponents
    (3a + mu, 3b + mu, mu, -3d - mu, -3e - mu, -mu); the constraint
    a + b = d + e = mu (mod 3) is exactly the condition making each cubic
    scale by a (cube-root) constant.
    """

    alpha: int
    beta: int
    delta: int
    eps: int
    mu: int

    @property
    def exponents(self) -> tuple[int, ...]:
        a, b, d, e, mu = self.alpha, self.beta, self.delta, self.eps, self.mu
        return (
            (3 * a + mu) % 9,
            (3 * b + mu) % 9,
            mu % 9,
            (-3 * d - mu) % 9,
            (-3 * e - mu) % 9,
            (-mu) % 9,
        )

    def is_identity(self) -> bool:
        return self.exponents == (0, 0, 0, 0, 0, 0)


TRIPLE1 = (0, 1, 2)
TRIPLE2 = (3, 4, 5)

# monomial support of the two cubics, as exponent vectors
_Q1_MONOS = ((3, 0, 0, 0, 0, 0), (0, 3, 0, 0, 0, 0), (0, 0, 3, 0, 0, 0), (0, 0, 0, 1, 1, 1))
_Q2_MONOS = ((0, 0, 0, 3, 0, 0), (0, 0, 0, 0, 3, 0), (0, 0, 0, 0, 0, 3), (1, 1, 1, 0, 0, 0))


def enumerate_group() -> list[GroupElement]:
    """All 81 elements, with the defining properties verified symbolically.

    Checks: order is 81; elements are pairwise distinct as projective
    transformations; exponent tuples are closed under addition; every
    element rescales each cubic by a constant (computed on the monomial
    supports, with the family parameter treated as transcendental).
    """
    elements = []
    for mu in range(9):
        for alpha in range(3):
            beta = (mu - alpha) % 3
            for delta in range(3):
                eps = (mu - delta) % 3
                elements.append(GroupElement(alpha, beta, delta, eps, mu))
    if len(elements) != 81:
        raise CensusMismatch(f"expected 81 elements, built {len(elements)}")
    seen = set()
    exps = set()
    for g in elements:
        e = g.exponents
        exps.add(e)
        # two diagonal maps agree in PGL iff exponents differ by a constant
        normalized = tuple((x - e[0]) % 9 for x in e)
        if normalized in seen:
            raise CensusMismatch(f"transformation {g} is proportional to an earlier one")
        seen.add(normalized)
        for monos in (_Q1_MONOS, _Q2_MONOS):
            scalings = {sum(m * x for m, x in zip(mono, e)) % 9 for mono in monos}
            if len(scalings) != 1:
                raise CensusMismatch(f"{g} does not rescale a defining cubic")
    for e1 in list(exps)[:9]:  # closure spot-check on a deterministic slice
        for e2 in list(exps)[:9]:
            if tuple((x + y) % 9 for x, y in zip(e1, e2)) not in exps:
                raise CensusMismatch("exponent tuples are not closed under addition")
    return elements


@dataclass(frozen=True)
class FixedComponent:
    """One coordinate-subspace piece of a fixed locus, intersected with V."""

    coords: tuple[int, ...]  # surviving coordinates (0-based)
    dim: int                 # dimension of the intersection with V; -1 = empty
    chi: int                 # Euler characteristic of the intersection
    points: tuple[tuple, ...] = ()  # labels of isolated points when dim == 0


@dataclass(frozen=True)
class FixedLocusReport:
    element: GroupElement
    components: tuple[FixedComponent, ...]

    @property
    def chi_total(self) -> int:
        return sum(c.chi for c in self.components)

    @property
    def locus_dim(self) -> int:
        return max((c.dim for c in self.components), default=-1)


def _point_labels(coords: tuple[int, ...]) -> tuple[tuple, ...]:
    """Labels for the isolated intersection points of a fixed subspace.

    A surviving same-triple pair (i, j) meets V in the three points with
    x_i^3 + x_j^3 = 0, labelled (zeroed-coords, i, j, k) with the ratio
    x_i / x_j = -zeta_3^k.  A surviving full triple meets V in nine points,
    three on each line where one further coordinate vanishes.
    """
    s1 = tuple(c for c in coords if c in TRIPLE1)
    s2 = tuple(c for c in coords if c in TRIPLE2)
    labels = []
    for group in (s1, s2):
        if len(group) == 2:
            i, j = group
            labels += [(coords, i, j, k) for k in range(3)]
        elif len(group) == 3:
            for zero in group:
                i, j = (c for c in group if c != zero)
                labels += [(tuple(c for c in coords if c != zero), i, j, k) for k in range(3)]
    return tuple(labels)


def fixed_locus(g: GroupElement) -> FixedLocusReport:
    """Fixed locus of g on a generic fiber, by coordinate-subspace pattern.

    Coordinates are grouped by eigenvalue exponent; each group spans a fixed
    subspace, which is intersected with the family symbolically (the
    parameter is treated as transcendental).  Patterns are classified by the
    split (s1, s2) of surviving coordinates between the two variable triples.
    """
    e = g.exponents
    groups: dict[int, list[int]] = {}
    for idx, val in enumerate(e):
        groups.setdefault(val, []).append(idx)
    comps = []
    for val in sorted(groups):
        coords = tuple(groups[val])
        s1 = sum(1 for c in coords if c in TRIPLE1)
        s2 = sum(1 for c in coords if c in TRIPLE2)
        key = tuple(sorted((s1, s2)))
        if (s1, s2) == (3, 3):
            comps.append(FixedComponent(coords, 3, ci_euler((3, 3), 5)))
        elif key == (1, 3):
            # one cubic keeps its product term: a (3,3) curve in P^3
            comps.append(FixedComponent(coords, 1, ci_euler((3, 3), 3)))
        elif key == (0, 3):
            # {x y z = 0} meet {x^3+y^3+z^3 = 0} in P^2: nine points
            pts = _point_labels(coords)
            comps.append(FixedComponent(coords, 0, 9, pts))
        elif key == (0, 2):
            # a same-triple pair: x_i^3 + x_j^3 = 0 on P^1: three points
            pts = _point_labels(coords)
            comps.append(FixedComponent(coords, 0, 3, pts))
        elif key in ((1, 1), (0, 1)):
            # cross pair {x_i^3 = x_j^3 = 0} or a single coordinate: empty
            comps.append(FixedComponent(coords, -1, 0))
        else:
            raise UnclassifiablePattern(f"pattern {(s1, s2)} for element {g}")
    return FixedLocusReport(element=g, components=tuple(comps))


def _ratio_shift(g: GroupElement, i: int, j: int) -> int:
    """How g shifts the label k of points with x_i / x_j = -zeta_3^k."""
    e = g.exponents
    diff = (e[i] - e[j]) % 9
    if diff % 3 != 0:
        raise CensusMismatch("ratio action must be by cube roots of unity")
    return (diff // 3) % 3


def point_orbit_count(report: FixedLocusReport, group: list[GroupElement]) -> int:
    """Number of group orbits on the isolated fixed points of an element.

    Points are labelled by (vanishing pattern, coordinate pair, ratio class);
    the diagonal group preserves the pattern and shifts the ratio class, so
    orbits are counted exactly from the shift subgroup.
    """
    total = 0
    for comp in report.components:
        if comp.dim != 0:
            continue
        by_set: dict[tuple, list[tuple]] = {}
        for label in comp.points:
            by_set.setdefault((label[0], label[1], label[2]), []).append(label)
        for (pattern, i, j), pts in by_set.items():
            # the shift image is a subgroup of Z_3: {0} or all of it
            shifts = {_ratio_shift(h, i, j) for h in group}
            if len(pts) != 3 or len(shifts) not in (1, 3):
                raise CensusMismatch(f"unexpected point set {pts} with shifts {shifts}")
            total += 3 // len(shifts)
    return total


@dataclass(frozen=True)
class CensusReport:
    """Fixed-locus census of the 81 elements and the orbifold totals."""

    curve_elements: int          # 1-dimensional fixed locus (chi = -18 curve)
    six_point_elements: int      # exactly 6 isolated fixed points
    eighteen_point_elements: int # exactly 18 isolated fixed points
    empty_elements: int          # no fixed points on the fiber
    zero_dim_chi: int            # total chi over all 0-dimensional loci
    zero_dim_orbits: int         # total orbit count over 0-dimensional loci
    point_element_units: int     # zero_dim_orbits / 2: three-point pairs
    identity_term: int           # chi(V/G) from the averaging formula
    orbifold_chi: int


def census(group: list[GroupElement] | None = None) -> CensusReport:
    """Classify all 81 fixed loci and assemble the orbifold Euler number.

    The identity term is chi(V/G) = (1/81) sum_g chi(V^g); every
    1-dimensional quotient contributes 2 (a rational curve), and each
    0-dimensional locus contributes its orbit count.  The cross-checks keep
    the census honest: the averaging sum must be divisible by 81, the
    orbifold total must equal -chi(V), and the zero-dimensional tallies must
    match the known identities (chi total 360, orbit total 120).
    """
    if group is None:
        group = enumerate_group()
    curve = six = eighteen = empty = 0
    chi_sum = 0
    zero_chi = 0
    zero_orbits = 0
    quotient_total = 0
    for g in group:
        report = fixed_locus(g)
        chi_sum += report.chi_total
        if g.is_identity():
            continue
        dim = report.locus_dim
        if dim == 1:
            curve += 1
            quotient_total += 2  # chi of the quotient curve
        elif dim == 0:
            pts = report.chi_total
            if pts == 6:
                six += 1
            elif pts == 18:
                eighteen += 1
            else:
                raise CensusMismatch(f"unexpected isolated-point count {pts}")
            orbits = point_orbit_count(report, group)
            zero_chi += pts
            zero_orbits += orbits
            quotient_total += orbits
        elif dim == -1:
            empty += 1
        else:
            raise CensusMismatch(f"unexpected fixed locus dimension {dim}")
    if chi_sum % len(group) != 0:
        raise CensusMismatch(f"averaging sum {chi_sum} not divisible by {len(group)}")
    identity_term = chi_sum // len(group)
    orbifold = identity_term + quotient_total
    if curve != 12:
        raise CensusMismatch(f"curve-fixing elements: {curve}, expected 12")
    if zero_chi != 360 or zero_orbits != 120:
        raise CensusMismatch(
            f"zero-dimensional tallies chi={zero_chi}, orbits={zero_orbits}, expected 360/120"
        )
    if orbifold != -ci_euler((3, 3), 5):
        raise CensusMismatch(f"orbifold chi {orbifold} != -chi(V)")
    return CensusReport(
        curve_elements=curve,
        six_point_elements=six,
        eighteen_point_elements=eighteen,
        empty_elements=empty,
        zero_dim_chi=zero_chi,
        zero_dim_orbits=zero_orbits,
        point_element_units=zero_orbits // 2,
        identity_term=identity_term,
        orbifold_chi=orbifold,
    )


def orbifold_euler() -> int:
    """The orbifold Euler characteristic of the quotient family: +144."""
    return census().orbifold_chi
