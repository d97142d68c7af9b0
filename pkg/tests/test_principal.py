from fractions import Fraction

import pytest

from monodromy.chevalley import chevalley
from monodromy.principal import (
    ad_power_component_check,
    an_k,
    centralizer_dim_mod,
    even_height_fixed_dim,
    exponents,
    kostant_decomposition,
    kostant_fixed_dim,
    lie_an_closed_form_check,
    principal_triple,
    sym_fixed_dim,
    sym_fixed_dim_bruteforce,
    sym_fixed_dim_formula,
)
from monodromy.rootsys import build_root_system

KNOWN_EXPONENTS = {
    ("G", 2): (1, 5),
    ("F", 4): (1, 5, 7, 11),
    ("E", 6): (1, 4, 5, 7, 8, 11),
    ("E", 7): (1, 5, 7, 9, 11, 13, 17),
    ("E", 8): (1, 7, 11, 13, 17, 19, 23, 29),
}


def classical_exponents(family, n):
    if family == "A":
        return tuple(range(1, n + 1))
    if family in "BC":
        return tuple(range(1, 2 * n, 2))
    return tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]))


TYPES = [("A", 1), ("A", 3), ("A", 6), ("B", 2), ("B", 5), ("C", 4), ("D", 4), ("D", 6), ("G", 2), ("F", 4), ("E", 6), ("E", 7)]


@pytest.mark.parametrize("family,rank", TYPES)
def test_triple_relations_and_exponents(family, rank):
    s = build_root_system(family, rank)
    tr = principal_triple(s)
    assert tr.relations_hold()
    kd = kostant_decomposition(tr)
    expected = KNOWN_EXPONENTS.get((family, rank)) or classical_exponents(family, rank)
    assert kd.exponents == expected
    assert exponents(s) == expected
    assert kd.centralizer_dim == rank
    assert kd.checksum() == rank + s.num_roots


def test_h_eigen_multiplicities_match_exponents():
    kd = kostant_decomposition(principal_triple(build_root_system("E", 6)))
    for e, mult in kd.h_eigen_multiplicities.items():
        assert mult == sum(1 for m in kd.exponents if m >= abs(e) // 2)


@pytest.mark.parametrize("family,rank,coeffs", [("A", 4, (4, 6, 6, 4)), ("B", 3, (6, 10, 6)), ("A", 1, (1,))])
def test_y_coefficients(family, rank, coeffs):
    tr = principal_triple(build_root_system(family, rank))
    assert tr.y_coefficients() == tuple(Fraction(c) for c in coeffs)


@pytest.mark.parametrize("family,rank", [("A", 5), ("B", 4), ("E", 6)])
def test_component_checks_nonzero(family, rank):
    tr = principal_triple(build_root_system(family, rank))
    checks = ad_power_component_check(tr, kostant_decomposition(tr), 0)
    assert [c.exponent for c in checks] == list(kostant_decomposition(tr).exponents)
    assert all(c.flags == (True, True) for c in checks)


def test_component_check_rejects_non_simple_alpha():
    tr = principal_triple(build_root_system("A", 2))
    with pytest.raises(ValueError):
        ad_power_component_check(tr, kostant_decomposition(tr), 5)


@pytest.mark.parametrize("n", range(1, 9))
def test_an_closed_form(n):
    for h in range(1, n + 1):
        r = lie_an_closed_form_check(n, h)
        assert r.matches and r.nonzero
        assert r.h1 == r.recursion_h1
        if n >= 2:
            assert r.h2 == r.recursion_h2


def test_an_closed_form_small_value():
    # n = 2, h = 1: h2 - 2 h1 = 2
    assert lie_an_closed_form_check(2, 1).closed_form == 2
    assert [an_k(4, i) for i in range(1, 5)] == [4, 6, 6, 4]
    with pytest.raises(ValueError):
        lie_an_closed_form_check(3, 4)


@pytest.mark.parametrize("m", range(1, 20))
def test_sym_fixed_dim_two_paths(m):
    assert sym_fixed_dim_formula(m) == sym_fixed_dim_bruteforce(m) == sym_fixed_dim(m)


@pytest.mark.parametrize("family,rank,value", [("A", 2, 4), ("B", 3, 9), ("E", 6, 38)])
def test_even_height_two_paths(family, rank, value):
    s = build_root_system(family, rank)
    assert even_height_fixed_dim(s) == value
    assert kostant_fixed_dim(exponents(s)) == value


def test_centralizer_mod_l():
    assert centralizer_dim_mod(build_root_system("E", 6), 73) == 6


def test_modular_algebra_rejected():
    with pytest.raises(ValueError):
        principal_triple(chevalley("A", 2, 73))
