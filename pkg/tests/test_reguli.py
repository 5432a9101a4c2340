"""Reguli of PG(3,q), affine reguli of AG(3,q), and hyperplane cuts.

Pinned counts:
  PG(3,2): 560 ordered regulus pairs (280 unordered)
  PG(3,3): 21060 ordered pairs
  AG(3,2): 336 ordered affine pairs,  q^4 (q^3-1)(q+1) = 336
  AG(3,3): 8424 ordered affine pairs, q^4 (q^3-1)(q+1) = 8424
  cutting any PG(3,2) regulus by the 15 planes: 9 affine, 6 wdbplus2
"""

from __future__ import annotations

import random

import pytest

from steinergraphs.errors import (
    DependentVectorsError,
    LinesNotSkewError,
    PointOnLineError,
    WrongCountError,
)
from steinergraphs.geometry import (
    aff_space,
    enumerate_planes,
    proj_space,
    relation,
)
from steinergraphs.gf import field_make
from steinergraphs.linalg import row_basis
from steinergraphs.reguli import (
    affine_regulus_construct,
    classify_skew_family,
    common_transversals,
    enumerate_affine_reguli,
    enumerate_reguli,
    lift_to_projective,
    regulus_restriction,
    regulus_through,
    transversal_through,
)

STANDARD_TRIPLE = (
    ((1, 0, 0, 0), (0, 1, 0, 0)),
    ((0, 0, 1, 0), (0, 0, 0, 1)),
    ((1, 0, 1, 0), (0, 1, 0, 1)),
)


def _proj_lines(sp, triples=STANDARD_TRIPLE):
    return tuple(sp.line_from_basis(b) for b in triples)


# -- transversals ---------------------------------------------------------------------


def test_transversal_through_point():
    sp = proj_space(3, field_make(2))
    l1, l2, l3 = _proj_lines(sp)
    t = transversal_through(sp, l1, l2, (1, 1, 1, 1))
    assert t is not None
    assert relation(sp, t, l1).kind == "meet"
    assert relation(sp, t, l2).kind == "meet"
    # a point on l1 itself is rejected
    with pytest.raises(PointOnLineError):
        transversal_through(sp, l1, l2, (1, 0, 0, 0))


def test_common_transversals_count():
    sp = proj_space(3, field_make(2))
    l1, l2, l3 = _proj_lines(sp)
    trans = common_transversals(sp, (l1, l2, l3))
    assert len(trans) == sp.field.q + 1
    for t in trans:
        for l in (l1, l2, l3):
            assert relation(sp, t, l).kind == "meet"


# -- regulus through three skew lines ---------------------------------------------------


@pytest.mark.parametrize("q", [2, 3])
def test_regulus_through_axioms(q):
    sp = proj_space(3, field_make(q) if q != 4 else field_make(2, 2))
    l1, l2, l3 = _proj_lines(sp)
    pair = regulus_through(sp, l1, l2, l3)
    assert len(pair.r_lines) == q + 1
    assert len(pair.opp_lines) == q + 1
    assert {l1, l2, l3} <= set(pair.r_lines)
    for i, a in enumerate(pair.r_lines):
        for b in pair.r_lines[i + 1 :]:
            assert relation(sp, a, b).kind == "skew"
        for b in pair.opp_lines:
            assert relation(sp, a, b).kind == "meet"
    # swap is an involution through the opposite family
    assert pair.swap().swap() == pair


def test_regulus_through_rejects_meeting_lines():
    sp = proj_space(3, field_make(2))
    l1 = sp.line_from_basis(((1, 0, 0, 0), (0, 1, 0, 0)))
    l2 = sp.line_from_basis(((1, 0, 0, 0), (0, 0, 1, 0)))
    l3 = _proj_lines(sp)[1]
    with pytest.raises(LinesNotSkewError):
        regulus_through(sp, l1, l2, l3)


def test_enumerate_reguli_q2():
    sp = proj_space(3, field_make(2))
    pairs = enumerate_reguli(sp)
    assert len(pairs) == 560
    assert len({frozenset((p.r_lines, p.opp_lines)) for p in pairs}) == 280
    seen = set(pairs)
    assert all(p.swap() in seen for p in pairs)


def test_enumerate_reguli_q3_count():
    sp = proj_space(3, field_make(3))
    assert len(enumerate_reguli(sp)) == 21060


# -- affine reguli ----------------------------------------------------------------------


@pytest.mark.parametrize("q,expected", [(2, 336), (3, 8424)])
def test_enumerate_affine_reguli_counts(q, expected):
    sp = aff_space(3, field_make(q))
    pairs = enumerate_affine_reguli(sp)
    assert len(pairs) == expected
    assert expected == q ** 4 * (q ** 3 - 1) * (q + 1)
    seen = set(pairs)
    assert all(p.swap() in seen for p in pairs)


def test_affine_pair_relations():
    sp = aff_space(3, field_make(3))
    pair = next(iter(enumerate_affine_reguli(sp)[:1]))
    for i, a in enumerate(pair.s_lines):
        for b in pair.s_lines[i + 1 :]:
            assert relation(sp, a, b).kind == "skew"
        for b in pair.opp_lines:
            assert relation(sp, a, b).kind == "meet"


@pytest.mark.parametrize("q", [2, 3])
def test_lift_to_projective_one_line_at_infinity(q):
    sp = aff_space(3, field_make(q))
    pair = enumerate_affine_reguli(sp)[0]
    lifted, cm = lift_to_projective(pair)
    pf = cm.pspace.field
    at_inf_r = [l for l in lifted.r_lines if cm.infinity.contains_line(pf, l)]
    at_inf_o = [l for l in lifted.opp_lines if cm.infinity.contains_line(pf, l)]
    assert len(at_inf_r) == 1 and len(at_inf_o) == 1
    back_s = {cm.line_to_aff(l) for l in lifted.r_lines if l not in at_inf_r}
    assert set(pair.s_lines) == back_s


# -- the three-vector construction ------------------------------------------------------


@pytest.mark.parametrize("q,n", [(2, 3), (3, 3), (2, 4), (3, 4)])
def test_construct_from_independent_vectors(q, n):
    sp = aff_space(n, field_make(q))
    rng = random.Random(q * 100 + n)
    for _ in range(10):
        while True:
            vs = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(3)]
            if len(row_basis(sp.field, vs)) == 3:
                break
        pair = affine_regulus_construct(sp, *vs)
        assert len(pair.s_lines) == q and len(pair.opp_lines) == q
        for i, a in enumerate(pair.s_lines):
            for b in pair.s_lines[i + 1 :]:
                assert relation(sp, a, b).kind == "skew"
            for b in pair.opp_lines:
                assert relation(sp, a, b).kind == "meet"


def test_construct_rejects_dependent_vectors():
    sp = aff_space(3, field_make(2))
    with pytest.raises(DependentVectorsError):
        affine_regulus_construct(sp, (1, 0, 0), (0, 1, 0), (1, 1, 0))


def test_families_lie_in_parallel_planes():
    """Each family's directions span a plane direction and its lines sit
    in pairwise distinct cosets of it."""
    sp = aff_space(3, field_make(3))
    pair = affine_regulus_construct(sp, (1, 0, 0), (0, 1, 0), (0, 0, 1))
    for family in (pair.s_lines, pair.opp_lines):
        dirs = row_basis(sp.field, tuple(l.dir for l in family))
        assert len(dirs) == 2
        host_planes = set()
        for line in family:
            hosts = [
                pl
                for pl in enumerate_planes(sp)
                if line.mask & pl.mask == line.mask and pl.dirbasis == tuple(dirs)
            ]
            assert len(hosts) == 1
            host_planes.add(hosts[0])
        assert len(host_planes) == sp.field.q


# -- classification of skew families ----------------------------------------------------


def test_classify_two_opposites_over_gf2():
    sp = aff_space(3, field_make(2))
    pair = enumerate_affine_reguli(sp)[0]
    cls = classify_skew_family(sp, pair.s_lines)
    assert cls.case == 1
    assert len(cls.pairs) == 2  # a skew pair over GF(2) has exactly two opposites
    opposites = {p.opp_lines for p in cls.pairs}
    assert pair.opp_lines in opposites


def test_classify_case1_q3():
    sp = aff_space(3, field_make(3))
    pair = enumerate_affine_reguli(sp)[0]
    cls = classify_skew_family(sp, pair.s_lines)
    assert cls.case == 1
    assert len(cls.pairs) == 1
    assert cls.pairs[0].opp_lines == pair.opp_lines


def test_classify_case2_q3():
    """Three pairwise skew lines whose directions span the whole space
    extend to no affine regulus."""
    sp = aff_space(3, field_make(3))
    l1 = sp.line_from_key((1, 0, 0), (0, 0, 0))
    l2 = sp.line_from_key((0, 1, 0), (0, 0, 1))
    l3 = sp.line_from_key((0, 0, 1), (1, 1, 0))
    for a, b in ((l1, l2), (l1, l3), (l2, l3)):
        assert relation(sp, a, b).kind == "skew"
    cls = classify_skew_family(sp, (l1, l2, l3))
    assert cls.case == 2
    assert cls.pairs == ()


def test_classify_wrong_count_rejected():
    sp = aff_space(3, field_make(3))
    pair = enumerate_affine_reguli(sp)[0]
    with pytest.raises(WrongCountError):
        classify_skew_family(sp, pair.s_lines[:2])


# -- hyperplane cuts ---------------------------------------------------------------------


def test_restriction_census_q2():
    sp = proj_space(3, field_make(2))
    pair = regulus_through(sp, *_proj_lines(sp))
    kinds = {"affine_regulus": 0, "wdbplus2": 0, "not_restrictable": 0}
    for hyp in sp.hyperplanes:
        out = regulus_restriction(pair, hyp)
        kinds[out.kind] += 1
        if out.kind == "affine_regulus":
            assert len(out.pair.s_lines) == 2
        elif out.kind == "wdbplus2":
            assert len(out.config.r_lines) == 3
            assert len(out.config.opp_lines) == 3
    assert kinds == {"affine_regulus": 9, "wdbplus2": 6, "not_restrictable": 0}


def test_restriction_census_q3_single():
    sp = proj_space(3, field_make(3))
    l1 = sp.line_from_basis(((1, 0, 0, 0), (0, 1, 0, 0)))
    l2 = sp.line_from_basis(((0, 0, 1, 0), (0, 0, 0, 1)))
    l3 = sp.line_from_basis(((1, 0, 1, 0), (0, 1, 0, 1)))
    pair = regulus_through(sp, l1, l2, l3)
    kinds = {"affine_regulus": 0, "wdbplus2": 0, "not_restrictable": 0}
    for hyp in sp.hyperplanes:
        kinds[regulus_restriction(pair, hyp).kind] += 1
    # q^2+q+... : one tangent plane per quadric point, the rest avoid all lines
    assert kinds == {"affine_regulus": 16, "wdbplus2": 24, "not_restrictable": 0}


def test_restriction_roundtrip_with_classify():
    """Cutting a regulus by a tangent plane and classifying the affine
    part recovers the same opposite family."""
    sp = proj_space(3, field_make(3))
    pair = regulus_through(sp, *_proj_lines(sp))
    for hyp in sp.hyperplanes:
        out = regulus_restriction(pair, hyp)
        if out.kind != "affine_regulus":
            continue
        cls = classify_skew_family(out.pair.space, out.pair.s_lines)
        assert cls.case == 1
        assert cls.pairs[0].opp_lines == out.pair.opp_lines
        break
    else:
        pytest.fail("no tangent hyperplane found")
