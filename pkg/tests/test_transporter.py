from functools import lru_cache

import numpy as np
import pytest

from monodromy import linalg
from monodromy.chevalley import chevalley
from monodromy.modrep import decompose, standard_action
from monodromy.transporter import (
    SearchExhausted,
    component_flags,
    find_regular_ss,
    intersection_dims,
    is_even_weyl_element,
    modified_sigma,
    primed_decomposition,
    standard_torus,
    strongly_orthogonal_partner,
    w_cap_t_in_t_prime,
)

P = 73


@lru_cache(maxsize=None)
def alg(family, rank):
    return chevalley(family, rank, P)


@lru_cache(maxsize=None)
def sigma_over_reflection(family, rank):
    a = alg(family, rank)
    sig = find_regular_ss(a, (0,), seed=1)
    return sig, primed_decomposition(sig)


@pytest.mark.parametrize("family,rank", [("A", 3), ("A", 4), ("D", 4)])
def test_sigma_is_regular_semisimple(family, rank):
    sig, dec = sigma_over_reflection(family, rank)
    assert sig.automorphism.fixed_dim() == rank
    assert sig.order is not None
    assert linalg.nullity(np.mod(linalg.matpow(sig.automorphism.matrix, sig.order, P) - np.eye(alg(family, rank).dim, dtype=np.int64), P), P) == alg(family, rank).dim
    assert len(dec.roots) == alg(family, rank).root_system.num_roots


@pytest.mark.parametrize("family,rank", [("A", 4), ("D", 4)])
def test_reflection_case_flags_and_intersections(family, rank):
    a = alg(family, rank)
    sig, dec = sigma_over_reflection(family, rank)
    t = standard_torus(a)
    mods = [m for m in decompose(standard_action(a, "weyl"), 0) if m.dim != rank]
    found = False
    for i, root in enumerate(dec.roots):
        if linalg.multiplicative_order(root.sigma_value, P) != 2:
            continue
        if component_flags(t, dec, i).as_tuple() != (False, True):
            continue
        found = True
        assert all(component_flags(m, dec, i).as_tuple() == (True, True) for m in mods)
        assert len(set(intersection_dims(dec, i, t))) == 1
        assert w_cap_t_in_t_prime(dec, i, t)
    assert found


def test_primed_roots_come_in_opposite_pairs():
    _, dec = sigma_over_reflection("A", 4)
    p = P
    for i, root in enumerate(dec.roots):
        j = dec.negative(i)
        assert dec.roots[j].sigma_value * root.sigma_value % p == 1


def test_component_flags_index_error():
    a = alg("A", 3)
    _, dec = sigma_over_reflection("A", 3)
    with pytest.raises(KeyError):
        component_flags(standard_torus(a), dec, len(dec.roots))


def test_empty_budget_exhausts():
    with pytest.raises(SearchExhausted):
        find_regular_ss(alg("A", 3), (0,), budget=0)


def test_strongly_orthogonal_partner():
    a = alg("A", 4)
    s = a.root_system
    b = strongly_orthogonal_partner(a, 0)
    assert s.inner(s.roots[0], s.roots[b]) == 0
    with pytest.raises(ValueError):
        strongly_orthogonal_partner(alg("A", 2), 0)


def test_modified_sigma_is_even():
    a = alg("A", 4)
    sig = modified_sigma(a, 0, seed=2)
    assert is_even_weyl_element(a, sig)
    assert sig.automorphism.fixed_dim() == 4
    with pytest.raises(ValueError):
        modified_sigma(alg("B", 3), 0)


def test_two_length_sigma_has_order_four_long_value():
    a = alg("C", 3)
    s = a.root_system
    lc = s.length_class
    b, g = next(
        (b, g)
        for b in s.positive_indices
        for g in s.positive_indices
        if lc[b] == "long" and lc[g] == "short" and s.inner(s.roots[b], s.roots[g]) != 0
    )
    dec = primed_decomposition(find_regular_ss(a, (b, g), seed=1))
    orders = {linalg.multiplicative_order(r.sigma_value, P) for r in dec.roots}
    assert 4 in orders
