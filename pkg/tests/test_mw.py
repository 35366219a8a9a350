from __future__ import annotations

import itertools
import json
import math
import random
from fractions import Fraction

import pytest
from conftest import GZ3_RAYS

from gzchow.fan import Fan, gz_fan, hypersimplex_fan, p1xp1_fan, projective_line_fan, projective_plane_fan
from gzchow.linalg import hnf, integer_kernel, rational_rank
from gzchow.mw import (
    IncompleteFanError,
    MinkowskiWeight,
    NonGenericDisplacementError,
    NormalFanMismatchError,
    balancing_matrix,
    cup_power,
    degree,
    displacement_vector,
    divisor_weight,
    genericity_check,
    is_balanced,
    mw_basis,
    mw_cup,
    mw_ranks,
    mw_smooth_oracle,
    one,
    strongly_generic,
)
from gzchow.polytope import Polytope, gz_polytope, minkowski_sum, volume



def gz3_weight(F, k, labelled_values):
    """Build a weight from values keyed by tuples of ray labels."""
    index = {i: F.ray_index(v) for i, v in GZ3_RAYS.items()}
    values = {F.cone_id(index[i] for i in labels): val for labels, val in labelled_values.items()}
    return MinkowskiWeight(F, k, tuple(values.get(c, 0) for c in F.cones_of_dim(F.dim - k)))


def gz3_value(F, w, labels):
    index = {i: F.ray_index(v) for i, v in GZ3_RAYS.items()}
    return w.value(F.cone_id(index[i] for i in labels))


def two_parameter_weight(F, a, b):
    vals = {}
    for lab in [(1, 3), (1, 5), (1, 6), (2, 5), (2, 6)]:
        vals[lab] = a
    for lab in [(2, 4), (3, 5), (3, 6), (4, 5), (4, 6)]:
        vals[lab] = b
    vals[(2, 3)] = a + b
    return gz3_weight(F, 1, vals)


# -- ranks and bases ----------------------------------------------------------


def test_ranks_of_fixtures():
    assert mw_ranks(gz_fan(3)) == [1, 2, 3, 1]
    assert mw_ranks(hypersimplex_fan()) == [1, 1, 5, 1]
    assert mw_ranks(projective_plane_fan()) == [1, 1, 1]
    assert mw_ranks(p1xp1_fan()) == [1, 2, 1]
    assert mw_ranks(projective_line_fan()) == [1, 1]


def test_codim0_basis_is_all_ones():
    for F in (gz_fan(3), hypersimplex_fan(), p1xp1_fan()):
        (w,) = mw_basis(F, 0)
        assert w == one(F)


def test_gz3_mw2_relations():
    F = gz_fan(3)
    relations = [[1, -1, 0, 0, 1, 0], [0, 0, 1, -1, 0, -1], [0, 0, 0, 0, -1, 1]]
    expected = hnf(integer_kernel(relations, 6), 6)
    order = [F.cone_id([F.ray_index(GZ3_RAYS[i])]) for i in range(1, 7)]
    got = [[w.value(c) for c in order] for w in mw_basis(F, 2)]
    assert hnf(got, 6) == expected


def test_basis_weights_are_balanced():
    for F in (gz_fan(3), hypersimplex_fan()):
        for k in range(F.dim + 1):
            for w in mw_basis(F, k):
                assert is_balanced(w)
    F = gz_fan(3)
    bad = MinkowskiWeight(F, 2, (1, 0, 0, 0, 0, 0))
    assert not is_balanced(bad)
    assert balancing_matrix(F, 3) == []


def test_incomplete_fan_rejected():
    F = Fan.from_maximal_cones(2, [(1, 0), (0, 1)], [[0, 1]])
    with pytest.raises(IncompleteFanError, match="fan not complete"):
        mw_basis(F, 1)


# -- cup products -------------------------------------------------------------


def test_two_parameter_cup_forms():
    F = gz_fan(3)
    v = displacement_vector(F, 0)
    forms = {}
    for (a, b), (at, bt) in itertools.product([(1, 0), (0, 1)], repeat=2):
        prod = mw_cup(two_parameter_weight(F, a, b), two_parameter_weight(F, at, bt), v)
        forms[(a, b, at, bt)] = [gz3_value(F, prod, (r,)) for r in (2, 4, 5)]
    # coefficient of a*at, b*at, a*bt, b*bt at rho2, rho4, rho5
    rho2 = [forms[(1, 0, 1, 0)][0], forms[(0, 1, 1, 0)][0], forms[(1, 0, 0, 1)][0], forms[(0, 1, 0, 1)][0]]
    rho4 = [forms[(1, 0, 1, 0)][1], forms[(0, 1, 1, 0)][1], forms[(1, 0, 0, 1)][1], forms[(0, 1, 0, 1)][1]]
    rho5 = [forms[(1, 0, 1, 0)][2], forms[(0, 1, 1, 0)][2], forms[(1, 0, 0, 1)][2], forms[(0, 1, 0, 1)][2]]
    assert rho2 == [1, 1, 1, 0]
    assert rho4 == [0, 0, 0, 1]
    assert rho5 == [0, 1, 1, 0]


def test_two_parameter_weight_is_balanced():
    F = gz_fan(3)
    assert is_balanced(two_parameter_weight(F, 3, -2))


@pytest.mark.parametrize("make", [lambda: gz_fan(3), hypersimplex_fan, p1xp1_fan, projective_plane_fan],
                         ids=["gz3", "hypersimplex", "P1xP1", "P2"])
def test_ring_axioms(make):
    F = make()
    v = displacement_vector(F, 1)
    n = F.dim
    bases = [mw_basis(F, k) for k in range(n + 1)]
    e = one(F)
    for k in range(n + 1):
        for w in bases[k]:
            assert mw_cup(e, w, v) == w
            assert mw_cup(w, e, v) == w
    for p, q in itertools.product(range(n + 1), repeat=2):
        if p + q > n:
            continue
        for c in bases[p]:
            for d in bases[q]:
                assert mw_cup(c, d, v) == mw_cup(d, c, v)
    for p, q, r in itertools.product(range(1, n + 1), repeat=3):
        if p + q + r > n:
            continue
        for c, d, f in itertools.product(bases[p], bases[q], bases[r]):
            assert mw_cup(mw_cup(c, d, v), f, v) == mw_cup(c, mw_cup(d, f, v), v)


@pytest.mark.parametrize("make", [lambda: gz_fan(3), hypersimplex_fan])
def test_products_independent_of_displacement(make):
    F = make()
    bases = [mw_basis(F, k) for k in range(F.dim + 1)]
    vs = [displacement_vector(F, s) for s in range(5)]
    for p, q in itertools.product(range(1, F.dim + 1), repeat=2):
        if p + q > F.dim:
            continue
        for c, d in itertools.product(bases[p], bases[q]):
            results = {mw_cup(c, d, v).values for v in vs}
            assert len(results) == 1


def test_hypersimplex_mw1_squares_do_not_span_mw2():
    F = hypersimplex_fan()
    (h,) = mw_basis(F, 1)
    sq = mw_cup(h, h, displacement_vector(F))
    assert not sq.is_zero()
    assert len(mw_basis(F, 2)) == 5


def test_genericity():
    F = gz_fan(3)
    assert genericity_check(F, 1, 1, (1, 1, 1))
    assert not genericity_check(F, 1, 1, (0, 0, 0))
    assert not genericity_check(F, 1, 1, GZ3_RAYS[1])
    assert not strongly_generic(F, (1, 0, 0))
    v = displacement_vector(F, 7)
    assert strongly_generic(F, v)
    for p in range(4):
        for q in range(4 - p):
            assert genericity_check(F, p, q, v)


def test_non_generic_displacement_raises():
    F = gz_fan(3)
    c, d = mw_basis(F, 1)
    with pytest.raises(NonGenericDisplacementError):
        mw_cup(c, d, (1, 0, 0))


def test_displacement_vector_deterministic():
    F = hypersimplex_fan()
    assert displacement_vector(F, 3) == displacement_vector(F, 3)
    assert displacement_vector(F, 3) != displacement_vector(F, 4)


# -- divisors -----------------------------------------------------------------


def test_projective_plane_hyperplane():
    F = projective_plane_fan()
    # outer-normal convention: this triangle has normal fan equal to F
    P = Polytope.from_vertices([(0, 0), (-1, 0), (0, -1)])
    w = divisor_weight(F, P)
    assert w.values == (1, 1, 1)
    assert degree(mw_cup(w, w, displacement_vector(F))) == 1


def test_gz3_divisor_degree_spot_value():
    F = gz_fan(3)
    w = divisor_weight(F, gz_polytope((-1, 0, 1)))
    assert all(x >= 0 for x in w.values)
    assert degree(cup_power(w, 3)) == 6


def test_divisor_translation_invariant_and_additive():
    F = gz_fan(3)
    P, Q = gz_polytope((0, 1, 3)), gz_polytope((-2, 0, 1))
    assert divisor_weight(F, P.translate((4, -1, 2))) == divisor_weight(F, P)
    assert divisor_weight(F, minkowski_sum(P, Q)) == divisor_weight(F, P) + divisor_weight(F, Q)


def test_divisor_errors():
    F = gz_fan(3)
    with pytest.raises(NormalFanMismatchError, match="normal fan mismatch"):
        divisor_weight(F, Polytope.from_vertices([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]))
    with pytest.raises(ValueError, match="non-lattice vertex"):
        divisor_weight(F, gz_polytope((0, 1, 2)).translate((Fraction(1, 2), 0, 0)))


def test_degree_consistency_random():
    F = gz_fan(3)
    rng = random.Random(5)
    for _ in range(5):
        lam = [rng.randint(-4, 4)]
        for _ in range(2):
            lam.append(lam[-1] + rng.randint(1, 5))
        P = gz_polytope(lam)
        assert degree(cup_power(divisor_weight(F, P), 3)) == math.factorial(3) * volume(P)


# -- smooth oracle ------------------------------------------------------------


@pytest.mark.parametrize("make, dims", [(projective_line_fan, [1, 1]), (projective_plane_fan, [1, 1, 1]),
                                        (p1xp1_fan, [1, 2, 1])])
def test_smooth_oracle_agreement(make, dims):
    F = make()
    R = mw_smooth_oracle(F)
    assert R.dims == dims == mw_ranks(F)
    v = displacement_vector(F)
    n = F.dim
    for k in range(n + 1):
        basis = [[Fraction(int(i == j)) for j in range(R.dims[k])] for i in range(R.dims[k])]
        images = [R.to_weight(k, x) for x in basis]
        for w in images:
            assert is_balanced(w)
        assert rational_rank([w.values for w in images] + [b.values for b in mw_basis(F, k)]) == R.dims[k]
    for p, q in itertools.product(range(n + 1), repeat=2):
        if p + q > n:
            continue
        for i, j in itertools.product(range(R.dims[p]), range(R.dims[q])):
            x = [Fraction(int(a == i)) for a in range(R.dims[p])]
            y = [Fraction(int(a == j)) for a in range(R.dims[q])]
            assert R.to_weight(p + q, R.multiply(p, x, q, y)) == mw_cup(R.to_weight(p, x), R.to_weight(q, y), v)


def test_smooth_oracle_rejects_singular_fans():
    with pytest.raises(ValueError, match="fan not smooth"):
        mw_smooth_oracle(gz_fan(3))


def test_weight_json_round_trip():
    F = gz_fan(3)
    for w in mw_basis(F, 1) + mw_basis(F, 2):
        data = json.loads(json.dumps(w.to_dict("gz3.json")))
        assert data["fan"] == "gz3.json"
        assert MinkowskiWeight.from_dict(F, data) == w
