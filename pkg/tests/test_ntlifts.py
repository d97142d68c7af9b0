from itertools import permutations

import numpy as np
import pytest

from monodromy import linalg
from monodromy.ntlifts import (
    ClosureTooLarge,
    StdMatrix,
    closure,
    derived_subgroup,
    det_square_criterion,
    e7_real_bound_check,
    even_perm_lift,
    hyperoctahedral_order,
    is_abelian,
    perm_sign,
    permutation_matrix,
    real_fixed_roots_formula,
    real_h0_both,
    real_h0_max,
    real_h0_max_closed,
    signed_weight_permutation,
    sp_section_lift,
    sp_tilde_d_generators,
    weyl_image_check,
)

P = 73


def test_perm_sign_matches_determinant():
    for perm in permutations(range(4)):
        det = round(np.linalg.det(permutation_matrix(perm, 4)))
        assert perm_sign(perm) == det


def test_even_lift():
    assert even_perm_lift([1, 2, 0, 3], 4, P).det() == 1
    with pytest.raises(ValueError):
        even_perm_lift([1, 0, 2, 3], 4, P)
    with pytest.raises(ValueError):
        even_perm_lift([0, 0, 1, 2], 4, P)


def test_std_matrix_validation():
    with pytest.raises(ValueError):
        StdMatrix(np.diag([2, 1]), "SL", P)
    with pytest.raises(ValueError):
        StdMatrix(np.eye(2, dtype=np.int64), "GL", P)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sp_d_generators(n):
    ds = sp_tilde_d_generators(n, P)
    assert all(d.order() == 4 for d in ds)
    assert is_abelian([d.matrix for d in ds], P)
    assert len(closure([d.matrix for d in ds], P)) == 4**n
    for d in ds:
        assert signed_weight_permutation(d, n) is not None


def test_section_lift_is_symplectic():
    g = sp_section_lift([1, 2, 0], 3, P)
    assert signed_weight_permutation(g, 3) == (2, 3, 1)


def test_weyl_image():
    total, image, kernel = weyl_image_check(3, P)
    assert image == hyperoctahedral_order(3) == 48
    assert total == image * kernel


def test_closure_cap():
    g = np.array([[1, 1], [0, 1]], dtype=np.int64)
    with pytest.raises(ClosureTooLarge):
        closure([g, g.T.copy()], P, cap=100)


def test_derived_subgroup_of_s3():
    s3 = [permutation_matrix([1, 0, 2], 3), permutation_matrix([1, 2, 0], 3)]
    assert len(closure(s3, P)) == 6
    assert len(derived_subgroup(s3, P)) == 3


@pytest.mark.parametrize("n", [3, 4, 5])
def test_det_square_symmetric_vs_alternating(n):
    transposition = permutation_matrix([1, 0] + list(range(2, n)), n)
    cycle = permutation_matrix(list(range(1, n)) + [0], n)
    sym = det_square_criterion([transposition, cycle], P)
    assert not sym.square and sym.obstruction is not None
    three = permutation_matrix([1, 2, 0] + list(range(3, n)), n)
    alt_gens = [three] + ([permutation_matrix([0] + [2, 3, 1] + list(range(4, n)), n)] if n >= 4 else [])
    assert det_square_criterion(alt_gens, P).square


def test_det_square_cyclic_by_quadratic_character():
    g = linalg.primitive_root(P)
    # <g> has order 72 and det(g^36) = -1 with (g^36)^2 = 1, so det is not a square;
    # g^2 still generates a group containing g^36; g^8 generates a group of odd order 9
    assert not det_square_criterion([np.diag([g, 1])], P).square
    assert not det_square_criterion([np.diag([pow(g, 2, P), 1])], P).square
    assert det_square_criterion([np.diag([pow(g, 8, P), 1])], P).square


def test_det_square_trivial_group():
    assert det_square_criterion([np.eye(3, dtype=np.int64)], P).square
    assert det_square_criterion([], P).square


@pytest.mark.parametrize("family,rank", [("A", 3), ("A", 5), ("B", 3), ("B", 4), ("C", 3), ("C", 4), ("D", 4), ("D", 5)])
def test_real_h0_two_paths(family, rank):
    n = rank + 1 if family == "A" else rank
    for d in range(1, n):
        x = real_h0_both(family, rank, d, P)
        assert x.agree
        assert x.fixed_root_vectors == real_fixed_roots_formula(family, rank, d)


@pytest.mark.parametrize("family,rank", [("A", n) for n in range(1, 9)] + [(f, n) for f in "BC" for n in range(2, 9)] + [("D", n) for n in range(4, 9)])
def test_real_h0_max_closed_forms(family, rank):
    assert real_h0_max(family, rank) == real_h0_max_closed(family, rank)


def test_real_h0_bad_d():
    with pytest.raises(ValueError):
        real_h0_both("B", 3, 0)
    with pytest.raises(ValueError):
        real_fixed_roots_formula("E", 7, 1)


def test_e7_bound():
    r = e7_real_bound_check(P)
    assert r.holds and r.max_h0 <= 119
    assert r.candidates == 126
