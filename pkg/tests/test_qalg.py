from fractions import Fraction

import pytest

from hallforge.errors import ConfigError
from hallforge.qalg import (
    Charge,
    QuantumContext,
    Word,
    bb_relation_items,
    build_relation,
    omega,
    qgkm_relation_items,
    sigma,
    verify_relation,
)
from hallforge.quivers import standard_quiver
from hallforge.repfq import FULL
from hallforge.scalars import Scalar


@pytest.fixture
def a2():
    return QuantumContext(standard_quiver("a2"), 2)


@pytest.fixture
def loop_arrow():
    return QuantumContext(standard_quiver("loop_arrow"), 2)


def test_psi_level_one(a2):
    # (-1)^1 v^0 [[C_S]] with |Aut S| = q - 1
    img = a2.psi_symbol(("e", 0, 1))
    s = a2.hall.rep.canonicalize(a2.hall.rep.simple(0))
    assert img == a2.hall.c_elem(s).scaled(Fraction(-1, 2 - 1))
    imgf = a2.psi_symbol(("f", 0, 1))
    assert imgf == a2.hall.c_elem(None, s).scaled(Fraction(-1, 2 - 1))


def test_psi_level_two(loop_arrow):
    img = loop_arrow.psi_symbol(("e", 0, 2))
    ss = loop_arrow.hall.rep.canonicalize(loop_arrow.hall.rep.semisimple(0, 2))
    expected = loop_arrow.hall.bracket_class(ss).scaled(loop_arrow.v ** 2)
    assert img == expected


def test_psi_degree_support(loop_arrow):
    for l in (1, 2):
        img = loop_arrow.psi_symbol(("e", 0, l))
        for key in img.terms:
            assert key.a.dimvec == (l, 0)
            assert key.b.rep.total_dim == 0


def test_level_bound_enforced(a2):
    with pytest.raises(ConfigError):
        a2.psi_symbol(("e", 0, 2))  # real vertex has level 1 only


def test_kkprime_central_at_small_degree(a2):
    h = a2.hall
    center = h.mul(a2.psi_symbol(("K", (1, 0))), a2.psi_symbol(("Kp", (1, 0))))
    for sym in (("e", 0, 1), ("e", 1, 1), ("f", 0, 1), ("K", (0, 1))):
        img = a2.psi_symbol(sym)
        assert h.mul(center, img) == h.mul(img, center)


def test_eval_word_unit_and_linearity(a2):
    assert a2.eval_word(Word.one(2)) == a2.hall.unit()
    w = Word.monomial(2, (("e", 0, 1),), 3) + Word.monomial(2, (("f", 1, 1),), -1)
    assert a2.eval_word(w) == a2.psi_symbol(("e", 0, 1)).scaled(3) - a2.psi_symbol(("f", 1, 1))


def test_conjugation_instance(a2):
    # K_i e_j K_i^{-1} picks up v^(a_ij)
    w = Word.monomial(2, (("K", (1, 0)), ("e", 1, 1), ("K", (-1, 0))))
    assert a2.eval_word(w) == a2.psi_symbol(("e", 1, 1)).scaled(a2.v ** -1)


def test_cross_commutator_vanishes(a2):
    w = Word.monomial(2, (("e", 0, 1), ("f", 1, 1))) - Word.monomial(
        2, (("f", 1, 1), ("e", 0, 1))
    )
    assert not a2.eval_word(w)


def test_omega_and_sigma_are_involutions():
    w = Word.monomial(3, (("e", 0, 2), ("K", (1, 0)), ("f", 1, 1)), 5) + Word.monomial(
        3, (("Kp", (0, -1)),), -2
    )
    assert omega(omega(w)) == w
    assert sigma(sigma(w)) == w
    assert omega(Word.monomial(3, (("K", (2, 1)),))) == Word.monomial(3, (("Kp", (2, 1)),))
    flipped = sigma(Word.monomial(3, (("e", 0, 1), ("f", 1, 1), ("K", (1, 0)))))
    assert flipped == Word.monomial(3, (("Kp", (1, 0)), ("f", 1, 1), ("e", 0, 1)))


def test_sigma_is_antimultiplicative_under_evaluation(a2):
    words = [
        Word.monomial(2, (("e", 0, 1),)),
        Word.monomial(2, (("f", 1, 1), ("K", (1, 0)))),
        Word.monomial(2, (("e", 1, 1), ("f", 1, 1))),
        Word.monomial(2, (("Kp", (0, 1)),), a2.v),
        Word.monomial(2, (("e", 0, 1), ("e", 1, 1))),
    ]
    checked = 0
    for u in words:
        for w in words:
            lhs = a2.eval_word(sigma(u * w))
            rhs = a2.hall.mul(a2.eval_word(sigma(w)), a2.eval_word(sigma(u)))
            assert lhs == rhs
            checked += 1
    assert checked >= 20


def test_relation_sweep_items_and_pass(a2):
    items = bb_relation_items(a2, max_level=2, max_degree=4)
    assert ("serre-e", {"i": 0, "j": 1, "l": 1}) in items
    assert all(verify_relation(a2, rel, p)["status"] == "pass" for rel, p in items[:10])


def test_higher_commutation_shape(loop_arrow):
    lhs, rhs = build_relation(loop_arrow, "ef-same", {"i": 0, "l": 2, "k": 1})
    # r runs to min(k, l) = 1: two monomials a side
    assert len(lhs.terms) == 2 and len(rhs.terms) == 2
    rep = verify_relation(loop_arrow, "ef-same", {"i": 0, "l": 2, "k": 1})
    assert rep["status"] == "pass"


def test_failed_relation_reports_witness(a2):
    # sabotage: a wrong conjugation exponent must produce a nonzero witness
    lhs, _ = build_relation(a2, "k-conj", {"i": 0, "j": 1, "l": 1, "gen": "e"})
    wrong = Word.monomial(2, (("e", 1, 1), ("K", (1, 0)))).scaled(a2.v ** 5)
    diff = a2.eval_word(lhs) - a2.eval_word(wrong)
    assert diff


def test_charge_validation():
    jordan = standard_quiver("jordan")
    Charge.default(jordan, 2, {"1": 2})
    with pytest.raises(ConfigError):
        Charge.default(jordan, 2, {"1": 3})  # exceeds q^loops
    with pytest.raises(ConfigError):
        Charge(jordan, 2, (((0,), (0,)),))  # duplicate parameter tuples
    a2q = standard_quiver("a2")
    with pytest.raises(ConfigError):
        Charge(a2q, 2, (((), ()), ((),)))  # multiplicity 2 at a real vertex


def test_charged_psi_images():
    jordan = standard_quiver("jordan")
    ctx = QuantumContext(jordan, 2, mode=FULL, charge=Charge.default(jordan, 2, {"1": 2}))
    e1 = ctx.psi_symbol(("E", 0, 1))
    e2 = ctx.psi_symbol(("E", 0, 2))
    (k1, c1), = e1.terms.items()
    (k2, c2), = e2.terms.items()
    assert c1 == 1 and c2 == 1  # 1/(q-1) at q = 2
    assert k1.a != k2.a  # distinct loop scalars give distinct simples
    f1 = ctx.psi_symbol(("F", 0, 1))
    (kf, cf), = f1.terms.items()
    assert cf == -ctx.v / (2 - 1) and kf.b.dimvec == (1,)


def test_real_vertex_charged_image_is_proportional_to_plain():
    a2q = standard_quiver("a2")
    full = QuantumContext(a2q, 2, mode=FULL, charge=Charge.default(a2q, 2))
    nil = QuantumContext(a2q, 2)
    (kc, cc), = full.psi_symbol(("E", 0, 1)).terms.items()
    (kn, cn), = nil.psi_symbol(("e", 0, 1)).terms.items()
    assert kc.a.dimvec == kn.a.dimvec == (1, 0)
    assert cc == -cn  # 1/(q-1) versus -1/(q-1)


def test_qgkm_sweep_smoke():
    jordan = standard_quiver("jordan")
    ctx = QuantumContext(jordan, 2, mode=FULL, charge=Charge.default(jordan, 2, {"1": 2}))
    items = qgkm_relation_items(ctx, max_degree=4)
    assert ("qgkm-ef", {"i": 0, "k": 1, "j": 0, "l": 2}) in items
    for rel, params in items:
        assert verify_relation(ctx, rel, params)["status"] == "pass"


def test_wrong_mode_rejected(a2):
    with pytest.raises(ConfigError):
        a2.psi_symbol(("E", 0, 1))
    jordan = standard_quiver("jordan")
    full = QuantumContext(jordan, 2, mode=FULL)
    with pytest.raises(ConfigError):
        full.psi_symbol(("e", 0, 1))
