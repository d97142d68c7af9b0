from fractions import Fraction

import numpy as np
import pytest

from monodromy.rootsys import (
    FAMILIES,
    a7_subsystem_of_e7,
    alternating_generators,
    build_root_system,
    expected_root_count,
    rho_coroot_integrality,
    rho_integral_expected,
    simple_reflection,
    subgroup_orbits,
    validate_type,
    weyl_generators,
)

TYPES = [("A", n) for n in range(1, 9)] + [("B", n) for n in range(2, 9)] + [("C", n) for n in range(2, 9)]
TYPES += [("D", n) for n in range(4, 9)] + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
COXETER = {"E6": 12, "E7": 18, "E8": 30, "F4": 12, "G2": 6}


@pytest.mark.parametrize("family,rank", TYPES)
def test_root_count_and_closure(family, rank):
    s = build_root_system(family, rank)
    assert s.num_roots == expected_root_count(family, rank)
    for i in range(s.rank):
        a = s.roots[i]
        g = s.reflection(i)
        for j, r in enumerate(s.roots):
            c = 2 * s.inner(r, a) / s.inner(a, a)
            assert list(s.roots[g[j]]) == [x - c * y for x, y in zip(r, a)]


@pytest.mark.parametrize("family,rank", TYPES)
def test_negation_and_simple_labels(family, rank):
    s = build_root_system(family, rank)
    n = s.num_roots // 2
    for i in range(n):
        assert [-x for x in s.roots[i]] == list(s.roots[s.negative(i)])
        assert s.negative(i) == i + n
    for i in range(rank):
        assert s.height(i) == 1


@pytest.mark.parametrize("family,rank", TYPES)
def test_coxeter_number(family, rank):
    s = build_root_system(family, rank)
    expected = {"A": rank + 1, "B": 2 * rank, "C": 2 * rank, "D": 2 * rank - 2}.get(family)
    assert s.coxeter_number == (expected if expected else COXETER[s.label])
    assert s.num_roots == rank * s.coxeter_number


@pytest.mark.parametrize("family,rank", TYPES)
def test_rho_check_integrality(family, rank):
    s = build_root_system(family, rank)
    assert rho_coroot_integrality(s).integral == rho_integral_expected(family, rank)


def test_rho_check_b3_coefficients():
    r = rho_coroot_integrality(build_root_system("B", 3))
    assert r.coefficients == (Fraction(3), Fraction(5), Fraction(3))


@pytest.mark.parametrize("family,rank", [("G", 3), ("E", 5), ("D", 2), ("X", 2), ("A", 0), ("F", 5)])
def test_invalid_types(family, rank):
    with pytest.raises(ValueError):
        validate_type(family, rank)


def test_families_listed():
    assert FAMILIES == ("A", "B", "C", "D", "E", "F", "G")


@pytest.mark.parametrize("family,rank,order", [("A", 3, 24), ("B", 3, 48), ("D", 4, 192), ("G", 2, 12), ("F", 4, 1152)])
def test_weyl_group_orders(family, rank, order):
    assert weyl_generators(build_root_system(family, rank)).order() == order


def test_simple_reflection_is_involution():
    s = build_root_system("E", 6)
    for i in range(6):
        g = simple_reflection(s, i)
        assert np.array_equal(g[g], np.arange(s.num_roots))
        assert g[i] == s.negative(i)


def test_a7_inside_e7():
    s = build_root_system("E", 7)
    sub = a7_subsystem_of_e7(s)
    assert len(sub.root_indices) == 56
    assert sub.excluded_simple == 1


def test_e7_alternating_orbits():
    s = build_root_system("E", 7)
    gens = alternating_generators(s)
    assert sorted(len(o) for o in subgroup_orbits(s, gens)) == [56, 70]
    assert gens.order() == 20160


@pytest.mark.parametrize("n", [4, 5, 6])
def test_alternating_group_transitive_in_type_a(n):
    s = build_root_system("A", n)
    assert [len(o) for o in subgroup_orbits(s, alternating_generators(s))] == [s.num_roots]


def test_alternating_group_not_transitive_for_a2():
    s = build_root_system("A", 2)
    assert len(subgroup_orbits(s, alternating_generators(s))) > 1


@pytest.mark.parametrize("family", ["B", "C"])
def test_alternating_part_preserves_lengths(family):
    s = build_root_system(family, 4)
    gens = alternating_generators(s)
    assert gens.preserves_length_classes(s)
    assert len(subgroup_orbits(s, gens)) == 2
