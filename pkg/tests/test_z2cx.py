import pytest

from hallforge.errors import ResourceLimitError
from hallforge.fqlinalg import Mat
from hallforge.quivers import euler_form, standard_quiver
from hallforge.repfq import RepCategory
from hallforge.z2cx import CxCategory


@pytest.fixture
def a2cx():
    return CxCategory(RepCategory(standard_quiver("a2"), 2))


def proj_rep(rc):
    # indecomposable (k -> k) with the identity arrow
    return rc._make((1, 1), [Mat.from_rows(2, 1, 1, [[1]])])


def test_stalk_shapes_and_acyclicity(a2cx):
    rc = a2cx.repcat
    x = rc.simple(1)
    k, ks, c, cs = a2cx.stalks(x)
    assert a2cx.is_acyclic(k) and a2cx.is_acyclic(ks)
    assert not a2cx.is_acyclic(c) and not a2cx.is_acyclic(cs)


def test_shift_is_involution_and_swaps_stalks(a2cx):
    rc = a2cx.repcat
    for x in (rc.simple(0), rc.simple(1), proj_rep(rc)):
        k, ks, c, cs = a2cx.stalks(x)
        for m in (k, ks, c, cs):
            assert a2cx.canonicalize(a2cx.shift(a2cx.shift(m))) == a2cx.canonicalize(m)
        assert a2cx.canonicalize(a2cx.shift(c)) == a2cx.canonicalize(cs)
        assert a2cx.canonicalize(a2cx.shift(k)) == a2cx.canonicalize(ks)


def test_homology_of_stalks(a2cx):
    rc = a2cx.repcat
    x = rc.simple(1)
    xcls = rc.canonicalize(x)
    h0, h1, im0, im1 = a2cx.homology(a2cx.k_cx(x))
    assert h0.rep.total_dim == 0 and h1.rep.total_dim == 0
    assert im0 == x.dims and im1 == (0, 0)
    h0, h1, im0, im1 = a2cx.homology(a2cx.c_cx(x))
    assert h0.rep.total_dim == 0 and h1 == xcls and im0 == (0, 0) and im1 == (0, 0)


def test_homology_is_additive_on_sums(a2cx):
    rc = a2cx.repcat
    m = a2cx.direct_sum(a2cx.c_cx(rc.simple(1)), a2cx.k_cx(rc.simple(0)))
    h0, h1, im0, im1 = a2cx.homology(m)
    assert h0.rep.total_dim == 0
    assert h1 == rc.canonicalize(rc.simple(1))
    assert im0 == (1, 0) and im1 == (0, 0)


def test_hom_into_acyclic_reduces_to_module_hom(a2cx):
    rc = a2cx.repcat
    target = a2cx.k_cx(rc.simple(1))
    for m in (
        a2cx.c_cx(rc.simple(1)),
        a2cx.c_star_cx(rc.simple(1)),
        a2cx.k_cx(rc.simple(0)),
        a2cx.c_cx(proj_rep(rc)),
    ):
        assert a2cx.cx_hom_dim(m, target) == rc.hom_dim(m.rep1, rc.simple(1))


def test_aut_of_concentrated_equals_module_aut(a2cx):
    rc = a2cx.repcat
    for x in (rc.simple(0), rc.semisimple(0, 2), proj_rep(rc)):
        cls = a2cx.canonicalize(a2cx.c_cx(x))
        assert cls.aut_size == rc.canonicalize(x).aut_size
        assert a2cx.cx_aut_size_bruteforce(a2cx.c_cx(x)) == cls.aut_size


def test_euler_pairing_identities_at_simples(a2cx):
    rc = a2cx.repcat
    quiver = rc.quiver
    a, b = rc.simple(0), rc.simple(1)

    def pairing(l, m):
        return a2cx.cx_hom_dim(l, m) - a2cx.cx_ext1_dim(l, m)

    ea = euler_form(quiver, a.dims, b.dims)
    eb = euler_form(quiver, b.dims, a.dims)
    assert pairing(a2cx.c_cx(a), a2cx.k_cx(b)) == ea
    assert pairing(a2cx.c_star_cx(a), a2cx.k_star_cx(b)) == ea
    assert pairing(a2cx.k_cx(b), a2cx.c_star_cx(a)) == eb
    assert pairing(a2cx.k_star_cx(b), a2cx.c_cx(a)) == eb
    assert pairing(a2cx.k_cx(b), a2cx.c_cx(a)) == 0
    assert pairing(a2cx.k_cx(a), a2cx.k_cx(b)) == ea


def test_acyclic_pairing_closed_form_matches_bruteforce(a2cx):
    rc = a2cx.repcat
    s1, s2 = rc.simple(0), rc.simple(1)
    acyclics = (a2cx.k_cx(s1), a2cx.k_star_cx(s2), a2cx.k_cx(s2))
    others = (a2cx.c_cx(s1), a2cx.c_star_cx(s2), a2cx.k_cx(s2), a2cx.c_cx(s2))
    for t in acyclics:
        for m in others:
            assert a2cx.pair_acyclic_left(t, m) == a2cx.cx_hom_dim(t, m) - a2cx.cx_ext1_dim(t, m)
            assert a2cx.pair_acyclic_right(m, t) == a2cx.cx_hom_dim(m, t) - a2cx.cx_ext1_dim(m, t)


def test_cx_hall_examples(a2cx):
    rc = a2cx.repcat
    s = rc.simple(1)
    k = a2cx.canonicalize(a2cx.k_cx(s))
    c = a2cx.canonicalize(a2cx.c_cx(s))
    cs = a2cx.canonicalize(a2cx.c_star_cx(s))
    zero = a2cx.canonicalize(a2cx.zero_cx())
    assert a2cx.cx_hall_number(zero, k, k) == 1
    both = a2cx.canonicalize(a2cx.direct_sum(a2cx.c_cx(s), a2cx.c_star_cx(s)))
    assert a2cx.cx_hall_number(c, cs, both) == 1
    # unique subcomplex (0, S) of the acyclic stalk with concentrated quotient
    assert a2cx.cx_hall_number(cs, c, k) == 1


def test_enumeration_by_underlying_dims(a2cx):
    classes = a2cx.enumerate_cx((1, 0), (1, 0))
    # zero differentials, and the two acyclic stalks on the simple
    assert len(classes) == 3
    assert sum(1 for c in classes if a2cx.is_acyclic(c.cx)) == 2


def test_enumeration_respects_bound():
    small = CxCategory(RepCategory(standard_quiver("a2"), 2), max_res_dim=1)
    with pytest.raises(ResourceLimitError):
        small.enumerate_cx((1, 0), (0, 1))


def test_find_resolution_postconditions(a2cx):
    rc = a2cx.repcat
    sink = 1  # vertex "2" of the arrow 1 -> 2
    for m in (
        a2cx.c_cx(rc.simple(1)),
        a2cx.c_star_cx(rc.simple(1)),
        a2cx.k_cx(rc.simple(1)),
        a2cx.c_pair(rc.simple(1), rc.simple(1)),
        a2cx.c_cx(rc.simple(0)),
    ):
        x, t = a2cx.find_resolution(m, sink)
        assert a2cx.validate_resolution(m, x, t, sink)
        assert a2cx.is_acyclic(t.cx)
        assert a2cx.cx_in_torsion(x.cx, ("sink", sink))
        assert a2cx.cx_in_torsion(t.cx, ("sink", sink))


def test_resolution_when_already_in_torsion_class(a2cx):
    rc = a2cx.repcat
    m = a2cx.c_cx(rc.simple(0))
    x, t = a2cx.find_resolution(m, 1)
    assert t.cx.total_dim == 0
    assert x == a2cx.canonicalize(m)


def test_two_distinct_resolutions_exist(a2cx):
    rc = a2cx.repcat
    m = a2cx.c_cx(rc.simple(1))
    found = a2cx.find_resolutions(m, 1, count=2)
    assert len(found) == 2
    assert {(x.id, t.id) for x, t in found}.__len__() == 2


def test_find_coresolution_postconditions(a2cx):
    rc = a2cx.repcat
    # vertex "1" is a source of the arrow 1 -> 2
    for m in (a2cx.c_cx(rc.simple(0)), a2cx.c_star_cx(rc.simple(0)), a2cx.k_cx(rc.simple(0))):
        x, t = a2cx.find_coresolutions(m, 0, count=1)[0]
        assert a2cx.is_acyclic(t.cx)
        assert a2cx.cx_in_torsion(x.cx, ("source", 0))
        assert a2cx.cx_in_torsion(t.cx, ("source", 0))


def test_reduce_ideal_invariance_small(a2cx):
    # acyclic-kernel short exact sequences leave the normal form unchanged
    from hallforge.sdh import HallAlgebra

    hall = HallAlgebra(standard_quiver("a2"), 2)
    cc = hall.cx
    for l in cc.enumerate_cx((1, 0), (1, 1)):
        target = hall.reduce(l)
        for s0 in ((0, 0), (1, 0)):
            for s1 in ((0, 0), (1, 0), (0, 1), (1, 1)):
                for spaces in cc.stable_subcx_tuples(l.cx, (s0, s1)):
                    sub = cc.sub_cx(l.cx, spaces)
                    if not cc.is_acyclic(sub):
                        continue
                    quot = cc.quotient_cx(l.cx, spaces)
                    assert hall.reduce(cc.direct_sum(sub, quot)) == target
