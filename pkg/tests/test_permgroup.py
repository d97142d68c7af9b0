import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from monodromy import permgroup


def perms(n):
    return st.permutations(list(range(n)))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 9).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=3)))
def test_order_and_orbits_match_sympy(gens):
    n = len(gens[0])
    ref = PermutationGroup([Permutation(g) for g in gens])
    assert permgroup.group_order(gens, n) == ref.order()
    ours = sorted(sorted(o) for o in permgroup.orbits(gens, n))
    theirs = sorted(sorted(o) for o in ref.orbits())
    assert ours == theirs


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 8).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=3)), st.integers(0, 7))
def test_stabilizer_matches_sympy(gens, point):
    n = len(gens[0])
    point %= n
    ref = PermutationGroup([Permutation(g) for g in gens])
    assert permgroup.point_stabilizer_order(gens, n, point) == ref.stabilizer(point).order()


def test_compose_applies_left_factor_first():
    g = np.array([1, 2, 0])
    h = np.array([0, 2, 1])
    gh = permgroup.compose(g, h)
    assert list(gh) == [h[g[i]] for i in range(3)]
    assert list(gh) == (Permutation([1, 2, 0]) * Permutation([0, 2, 1])).array_form


def test_membership_and_inverse():
    gens = [[1, 2, 0, 3], [1, 0, 2, 3]]
    chain = permgroup.schreier_sims(gens, 4)
    assert chain.order() == 6
    assert chain.contains([2, 1, 0, 3])
    assert not chain.contains([0, 1, 3, 2])
    g = np.array([2, 0, 1, 3])
    assert permgroup.is_identity(permgroup.compose(g, permgroup.inverse(g)))
    assert permgroup.perm_order(g) == 3


def test_symmetric_group_s8():
    gens = [[1, 0, 2, 3, 4, 5, 6, 7], [1, 2, 3, 4, 5, 6, 7, 0]]
    assert permgroup.group_order(gens, 8) == 40320
