import random

import pytest

from cymirror.enumgeo import (
    GroupElement,
    SchubertClass,
    SchubertError,
    census,
    ci_euler,
    class_mul,
    enumerate_group,
    fixed_locus,
    line_count,
    lines_incidence_class,
    omega_to_sigma,
    orbifold_euler,
    point_orbit_count,
    sigma_to_omega,
)

FAMILIES = [((2, 2, 2, 2), 7, 512), ((2, 2, 3), 6, 720), ((3, 3), 5, 1053),
            ((2, 4), 5, 1280), ((5,), 4, 2875)]


# ---------------------------------------------------------------------------
# Schubert ring
# ---------------------------------------------------------------------------

def test_pieri_basics():
    s1 = SchubertClass.sigma(4, 1)
    assert class_mul(s1, s1).as_dict() == {(2, 0): 1, (1, 1): 1}
    fourth = class_mul(class_mul(s1, s1), class_mul(s1, s1))
    assert fourth.as_dict() == {(2, 2): 2}  # the degree of Gr(2,4)
    assert class_mul(SchubertClass.sigma(8, 1, 1), SchubertClass.sigma(8, 1)).as_dict() == {(2, 1): 1}


def test_ring_commutative_associative():
    rng = random.Random(17)

    def rand_class(m):
        data = {}
        for _ in range(3):
            a = rng.randrange(0, m - 1)
            b = rng.randrange(0, a + 1)
            data[(a, b)] = rng.randint(-3, 3)
        return SchubertClass.make(m, data)

    for _ in range(10):
        x, y, z = (rand_class(6) for _ in range(3))
        assert class_mul(x, y) == class_mul(y, x)
        assert class_mul(class_mul(x, y), z) == class_mul(x, class_mul(y, z))


def test_poincare_pairing():
    m = 6
    top = (m - 2, m - 2)
    for a in range(m - 1):
        for b in range(a + 1):
            dual = (m - 2 - b, m - 2 - a)
            prod = class_mul(SchubertClass.sigma(m, a, b), SchubertClass.sigma(m, *dual))
            assert prod.coefficient(*top) == 1
            # and the product is exactly the top class
            assert prod.as_dict() == {top: 1}


def test_incidence_classes():
    assert lines_incidence_class(2, 8).as_dict() == {(2, 1): 4}
    assert lines_incidence_class(3, 7).as_dict() == {(3, 1): 18, (2, 2): 27}
    assert lines_incidence_class(2, 7).as_dict() == {(2, 1): 4}


def test_incidence_cycle_dictionary():
    # lines in P^7 meeting a P^4 inside a P^6 <-> partition (2, 1)
    assert omega_to_sigma(4, 6, 7) == (2, 1)
    assert sigma_to_omega(2, 1, 7) == (4, 6)
    assert omega_to_sigma(2, 5, 6) == (3, 1)
    assert omega_to_sigma(3, 4, 6) == (2, 2)
    assert omega_to_sigma(3, 5, 6) == (2, 1)


def _schur_expansion_top_coefficient(degrees, n):
    """Independent oracle: bialternant Schur expansion in two variables.

    Expands prod over hypersurfaces of prod_i (i x + (d-i) y) into Schur
    polynomials s_{(a,b)}(x, y) = sum_{t=b..a} x^t y^{a+b-t} by peeling the
    lexicographically largest exponent, and reads off the top-class
    coefficient; no Pieri rule involved.
    """
    poly = {(0, 0): 1}
    for d in degrees:
        factor = {(0, 0): 1}
        for i in range(d + 1):
            nxt = {}
            for (a, b), c in factor.items():
                if i:
                    key = (a + 1, b)
                    nxt[key] = nxt.get(key, 0) + c * i
                if d - i:
                    key = (a, b + 1)
                    nxt[key] = nxt.get(key, 0) + c * (d - i)
            factor = nxt
        merged = {}
        for (a, b), c in poly.items():
            for (u, v), e in factor.items():
                key = (a + u, b + v)
                merged[key] = merged.get(key, 0) + c * e
        poly = merged
    work = {k: v for k, v in poly.items() if v}
    schur = {}
    while work:
        i, j = max(work)
        c = work.pop((i, j))
        if c == 0:
            continue
        schur[(i, j)] = schur.get((i, j), 0) + c
        for t in range(j, i + 1):
            key = (t, i + j - t)
            if key == (i, j):
                continue
            work[key] = work.get(key, 0) - c
        work = {k: v for k, v in work.items() if v}
    return schur.get((n - 1, n - 1), 0)


def test_line_counts_against_schur_oracle():
    for degrees, n, want in FAMILIES:
        assert _schur_expansion_top_coefficient(degrees, n) == want
        assert line_count(degrees, n) == want


def test_line_count_dimension_check():
    with pytest.raises(SchubertError):
        line_count((3, 3), 6)
    with pytest.raises(SchubertError):
        lines_incidence_class(1, 6)


# ---------------------------------------------------------------------------
# Euler characteristics
# ---------------------------------------------------------------------------

def test_ci_euler_values():
    assert ci_euler((3, 3), 5) == -144
    assert ci_euler((3, 3), 3) == -18
    assert ci_euler((), 1) == 2
    assert ci_euler((5,), 4) == -200  # classical quintic value


# ---------------------------------------------------------------------------
# the symmetry group
# ---------------------------------------------------------------------------

def test_group_order_and_identity():
    group = enumerate_group()
    assert len(group) == 81
    assert sum(1 for g in group if g.is_identity()) == 1


def test_group_closure_full():
    exps = {g.exponents for g in enumerate_group()}
    for e1 in exps:
        for e2 in exps:
            assert tuple((a + b) % 9 for a, b in zip(e1, e2)) in exps


def test_group_preserves_both_cubics():
    # each monomial set must scale uniformly; recheck outside the constructor
    for g in enumerate_group():
        e = g.exponents
        fermat1 = {(3 * e[i]) % 9 for i in range(3)}
        prod1 = sum(e[3:]) % 9
        assert len(fermat1) == 1 and fermat1 == {prod1}
        fermat2 = {(3 * e[i]) % 9 for i in range(3, 6)}
        prod2 = sum(e[:3]) % 9
        assert len(fermat2) == 1 and fermat2 == {prod2}


def test_fixed_locus_identity():
    identity = next(g for g in enumerate_group() if g.is_identity())
    report = fixed_locus(identity)
    assert report.locus_dim == 3
    assert report.chi_total == -144


def test_fixed_locus_curve_element():
    # alpha, beta = (1, 2), mu = 0: fixes {x3..x6} pointwise, cutting the
    # curve with x1 = x2 = 0
    g = GroupElement(alpha=1, beta=2, delta=0, eps=0, mu=0)
    report = fixed_locus(g)
    assert report.locus_dim == 1
    curve = [c for c in report.components if c.dim == 1]
    assert len(curve) == 1
    assert curve[0].chi == -18
    assert curve[0].coords == (2, 3, 4, 5)


def test_fixed_locus_scalar_element():
    g = GroupElement(alpha=0, beta=0, delta=0, eps=0, mu=3)
    report = fixed_locus(g)
    assert report.locus_dim == 0
    assert report.chi_total == 18  # two coordinate planes, nine points each


def test_census_structure():
    c = census()
    assert c.curve_elements == 12
    assert c.six_point_elements == 54
    assert c.eighteen_point_elements == 2
    assert c.empty_elements == 12
    assert 1 + 12 + 54 + 2 + 12 == 81
    assert c.zero_dim_chi == 360
    assert c.zero_dim_orbits == 120
    assert c.point_element_units == 60
    assert c.identity_term == 0
    assert c.orbifold_chi == 144


def test_point_set_stabilizers():
    """Pointwise stabilizer of each three-point set has order 27; 20 of those
    are neither the identity nor curve elements."""
    group = enumerate_group()
    # the set with x1 = x2 = x3 = x4 = 0: points x5^3 + x6^3 = 0
    fixers = [g for g in group if (g.exponents[4] - g.exponents[5]) % 9 == 0]
    assert len(fixers) == 27
    curve_like = [g for g in fixers if not g.is_identity() and fixed_locus(g).locus_dim == 1]
    assert len(curve_like) == 6  # three curves through the set, two elements each
    rest = [g for g in fixers if not g.is_identity() and fixed_locus(g).locus_dim == 0]
    assert len(rest) == 20


def test_orbit_counts_per_element():
    group = enumerate_group()
    six = [g for g in group if fixed_locus(g).locus_dim == 0 and fixed_locus(g).chi_total == 6]
    eighteen = [g for g in group if fixed_locus(g).locus_dim == 0 and fixed_locus(g).chi_total == 18]
    assert all(point_orbit_count(fixed_locus(g), group) == 2 for g in six[:5])
    assert all(point_orbit_count(fixed_locus(g), group) == 6 for g in eighteen)


def test_orbifold_euler_mirror_test():
    assert orbifold_euler() == 144 == -ci_euler((3, 3), 5)


def test_line_counts_match_degree_one_predictions():
    from cymirror.mirrorseries import PRESETS, instanton_table

    for degrees, n, want in FAMILIES:
        label = ",".join(str(d) for d in degrees)
        _, table = instanton_table(PRESETS[label], 1)
        assert table.counts[1] == want == line_count(degrees, n)
