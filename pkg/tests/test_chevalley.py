from functools import lru_cache

import numpy as np
import pytest

from monodromy.chevalley import (
    ModulusTooSmall,
    build_chevalley,
    chevalley,
    jacobi_exhaustive,
    jacobi_sample,
    min_modulus,
    structure_constant_magnitudes_ok,
)
from monodromy.rootsys import build_root_system

P = 73
SMALL = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("C", 3), ("C", 4), ("D", 4), ("G", 2), ("F", 4)]


@lru_cache(maxsize=None)
def alg(family, rank, p=P):
    return chevalley(family, rank, p)


@pytest.mark.parametrize("family,rank", SMALL)
def test_jacobi_exhaustive(family, rank):
    assert jacobi_exhaustive(alg(family, rank)) == 0


@pytest.mark.parametrize("rank", [6, 7])
def test_jacobi_sampled_e(rank):
    assert jacobi_sample(alg("E", rank), 2000, seed=rank) == 0


@pytest.mark.parametrize("family,rank", SMALL + [("E", 6)])
def test_structure_constant_magnitudes(family, rank):
    assert structure_constant_magnitudes_ok(alg(family, rank))


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("G", 2), ("E", 6)])
def test_cartan_integers_on_root_vectors(family, rank):
    a = alg(family, rank)
    s = a.root_system
    for i in range(rank):
        ad_h = a.ad_basis(a.h(i))
        for r in range(s.num_roots):
            v = ad_h[:, a.x(r)]
            pairing = sum(c * s.cartan_matrix[j][i] for j, c in enumerate(s.roots[r]))
            expected = np.zeros(a.dim, dtype=np.int64)
            expected[a.x(r)] = pairing % P
            assert np.array_equal(np.mod(v, P), expected)


@pytest.mark.parametrize("family,rank", [("A", 2), ("C", 3), ("G", 2)])
def test_root_vector_brackets_give_coroots(family, rank):
    a = alg(family, rank)
    s = a.root_system
    for r in s.positive_indices:
        br = a.bracket_vec(a.X(r).coords, a.X(s.negative(r)).coords)
        assert np.array_equal(np.mod(br, P), np.mod(a.H_root(r).coords, P))


@pytest.mark.parametrize("family,rank", [("A", 4), ("B", 3), ("C", 3), ("D", 5), ("G", 2), ("F", 4), ("E", 6)])
def test_weyl_lift_permutes_root_spaces(family, rank):
    a = alg(family, rank)
    s = a.root_system
    for i in range(rank):
        lift = a.weyl_lift(i)
        assert a.induced_root_permutation(lift) == [int(x) for x in s.reflection(i)]
        assert lift.preserves_bracket(lift.sample_pairs(200, seed=i))


def test_killing_form_nondegenerate():
    from monodromy import linalg

    a = alg("B", 3)
    assert linalg.rank(np.mod(a.gram, P), P) == a.dim


def test_exact_algebra_has_integer_constants():
    a = build_chevalley(build_root_system("G", 2), 0)
    assert a.exact
    assert {abs(n) for n in a.n_table.values()} == {1, 2, 3}


def test_modulus_floor():
    s = build_root_system("E", 8)
    with pytest.raises(ModulusTooSmall):
        build_chevalley(s, 73)
    assert min_modulus(s) == 97


def test_composite_modulus_rejected():
    with pytest.raises(ValueError):
        chevalley("A", 2, 21)


def test_torus_action_is_root_value():
    a = alg("A", 2)
    t = (2, 3)
    m = a.ad_torus(t).matrix
    s = a.root_system
    for r in range(s.num_roots):
        assert m[a.x(r), a.x(r)] == a.root_value(t, r)
    highest = s.highest_root
    assert a.root_value(t, highest) == 6
