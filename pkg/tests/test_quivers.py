import pytest

from hallforge.errors import ConfigError
from hallforge.quivers import (
    Quiver,
    cartan_from_quiver,
    euler_form,
    is_sink,
    is_source,
    reflect_quiver,
    simple_reflection,
    standard_quiver,
    sym_form,
)

FIVE = ("jordan", "two_loop", "a2", "kronecker", "loop_arrow")


def test_cartan_examples():
    assert cartan_from_quiver(standard_quiver("jordan")).matrix == ((0,),)
    assert cartan_from_quiver(standard_quiver("two_loop")).matrix == ((-2,),)
    assert cartan_from_quiver(standard_quiver("kronecker")).matrix == ((2, -2), (-2, 2))
    assert cartan_from_quiver(standard_quiver("a2")).matrix == ((2, -1), (-1, 2))
    assert cartan_from_quiver(standard_quiver("loop_arrow")).matrix == ((0, -1), (-1, 2))


def test_real_imaginary_split():
    cd = cartan_from_quiver(standard_quiver("loop_arrow"))
    assert cd.real_vertices == (1,)
    assert cd.imaginary_vertices == (0,)
    assert cd.generator_levels(0, 3) == (1, 2, 3)
    assert cd.generator_levels(1, 3) == (1,)


def test_euler_form_examples():
    a2 = standard_quiver("a2")
    assert euler_form(a2, (1, 0), (0, 1)) == -1
    assert euler_form(a2, (0, 1), (1, 0)) == 0
    assert euler_form(a2, (4, 7), (0, 0)) == 0
    jordan = standard_quiver("jordan")
    assert euler_form(jordan, (1,), (1,)) == 0


@pytest.mark.parametrize("name", FIVE)
def test_sym_form_equals_cartan(name):
    quiver = standard_quiver(name)
    cd = cartan_from_quiver(quiver)
    for i in range(quiver.n):
        for j in range(quiver.n):
            assert sym_form(quiver, quiver.unit(i), quiver.unit(j)) == cd.a(i, j)


def test_simple_reflection_examples():
    a2 = standard_quiver("a2")
    cd = cartan_from_quiver(a2)
    assert simple_reflection(a2, cd, 0, (1, 0)) == (-1, 0)
    assert simple_reflection(a2, cd, 0, (0, 1)) == (1, 1)
    # vanishing off-diagonal leaves the other root alone
    two = standard_quiver("two_points")
    cd2 = cartan_from_quiver(two)
    assert simple_reflection(two, cd2, 0, (0, 1)) == (0, 1)


@pytest.mark.parametrize("name", ("a2", "kronecker", "loop_arrow"))
def test_reflection_involution_and_invariance(name):
    quiver = standard_quiver(name)
    cd = cartan_from_quiver(quiver)
    vectors = [(1, 0), (0, 1), (2, -1), (3, 5)]
    for i in cd.real_vertices:
        for x in vectors:
            assert simple_reflection(quiver, cd, i, simple_reflection(quiver, cd, i, x)) == x
            for y in vectors:
                assert sym_form(quiver, x, y) == sym_form(
                    quiver,
                    simple_reflection(quiver, cd, i, x),
                    simple_reflection(quiver, cd, i, y),
                )


def test_reflection_rejected_at_imaginary_vertex():
    jordan = standard_quiver("jordan")
    cd = cartan_from_quiver(jordan)
    with pytest.raises(ConfigError):
        simple_reflection(jordan, cd, 0, (1,))


def test_reflect_quiver_examples():
    a2 = standard_quiver("a2")
    assert reflect_quiver(a2, "2").arrows == (("2", "1"),)
    assert reflect_quiver(reflect_quiver(a2, "2"), "2") == a2
    la = standard_quiver("loop_arrow")
    assert reflect_quiver(la, "2").arrows == (("1", "1"), ("2", "1"))


@pytest.mark.parametrize("name", FIVE)
def test_cartan_is_orientation_independent(name):
    quiver = standard_quiver(name)
    for v in quiver.vertices:
        assert cartan_from_quiver(reflect_quiver(quiver, v)).matrix == cartan_from_quiver(quiver).matrix


def test_sink_source_predicates():
    a2 = standard_quiver("a2")
    assert is_sink(a2, "2") and not is_sink(a2, "1")
    assert is_source(a2, "1") and not is_source(a2, "2")
    jordan = standard_quiver("jordan")
    assert not is_sink(jordan, "1") and not is_source(jordan, "1")


def test_json_roundtrip_and_validation():
    quiver = standard_quiver("loop_arrow")
    assert Quiver.from_json(quiver.to_json()) == quiver
    with pytest.raises(ConfigError):
        Quiver(("1",), (("1", "2"),))
    with pytest.raises(ConfigError):
        Quiver(("1", "1"), ())
    with pytest.raises(ConfigError):
        Quiver.from_json({"vertices": ["1"]})
