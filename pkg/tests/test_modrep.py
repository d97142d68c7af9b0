from functools import lru_cache

import numpy as np
import pytest

from monodromy.chevalley import chevalley
from monodromy.lie import exp_ad_nilpotent
from monodromy.modrep import (
    ActionSet,
    DecompositionError,
    check_irreducible,
    classify_summand,
    coordinate_submodule,
    decompose,
    eigenvalues,
    joint_eigenspaces,
    spin,
    standard_action,
    submodule_from_rows,
    twist_distinguish,
)

P = 73


@lru_cache(maxsize=None)
def alg(family, rank):
    return chevalley(family, rank, P)


@lru_cache(maxsize=None)
def split(family, rank, construction):
    a = alg(family, rank)
    act = standard_action(a, construction)
    return act, decompose(act, seed=0)


@pytest.mark.parametrize(
    "family,rank,construction,dims",
    [
        ("A", 1, "full", [1, 2]),
        ("A", 2, "full", [2, 6]),
        ("A", 4, "weyl", [4, 20]),
        ("A", 5, "weyl", [5, 30]),
        ("D", 4, "weyl", [4, 24]),
        ("B", 2, "full", [2, 4, 4]),
        ("B", 3, "weyl", [3, 6, 12]),
        ("C", 3, "weyl", [3, 6, 12]),
        ("C", 4, "weyl", [4, 8, 24]),
    ],
)
def test_summand_dimensions(family, rank, construction, dims):
    _, mods = split(family, rank, construction)
    assert sorted(m.dim for m in mods) == dims


@pytest.mark.parametrize("family,rank,construction", [("A", 4, "weyl"), ("B", 3, "weyl"), ("C", 3, "weyl")])
def test_summands_are_invariant_and_certified(family, rank, construction):
    act, mods = split(family, rank, construction)
    for m in mods:
        assert all(m.is_invariant(g) for g in act.generators)
        assert check_irreducible(m, act).irreducible


def test_summand_classes_two_lengths():
    a = alg("B", 3)
    _, mods = split("B", 3, "weyl")
    assert sorted(classify_summand(a, m) for m in mods) == ["g_l", "g_s", "t"]


def test_twist_distinguishes_summands():
    act, mods = split("C", 3, "weyl")
    v = twist_distinguish(mods, act)
    assert v.distinguished and v.verdict == "distinguished"
    assert len(v.names) == 2 * len(mods)


def test_twist_rejects_zero_scalar():
    act, mods = split("A", 4, "weyl")
    with pytest.raises(ValueError):
        twist_distinguish(mods, act, q=P)


def test_alternating_group_on_three_letters_is_not_enough():
    # the 3-cycle action on sl3 does not make g_Phi irreducible
    _, mods = split("A", 2, "weyl")
    assert max(m.dim for m in mods) < 6


def test_b2_weyl_construction_is_not_semisimple():
    with pytest.raises(DecompositionError):
        decompose(standard_action(alg("B", 2), "weyl"), seed=0)


def test_norton_criterion_on_unipotent_action():
    a = alg("A", 2)
    s = a.root_system
    gens = tuple(exp_ad_nilpotent(a.X(i)) for i in (0, 1, s.negative(0), s.negative(1)))
    act = ActionSet(a, gens, ("u1", "u2", "v1", "v2"))
    full = submodule_from_rows(a, np.eye(a.dim, dtype=np.int64))
    cert = check_irreducible(full, act, seed=3)
    assert cert.irreducible and cert.method == "norton"


def test_spin_of_root_vector_is_root_span():
    a = alg("A", 4)
    act, _ = split("A", 4, "weyl")
    v = np.zeros(a.dim, dtype=np.int64)
    v[a.x(0)] = 1
    assert spin(v, act).dim == a.root_system.num_roots


def test_non_invariant_subspace_rejected():
    a = alg("A", 4)
    act, _ = split("A", 4, "weyl")
    with pytest.raises(ValueError):
        check_irreducible(coordinate_submodule(a, [a.x(0)]), act)


def test_eigenvalues_and_joint_spaces():
    m = np.diag([2, 2, 5])
    assert eigenvalues(m, P) == {2: 2, 5: 1}
    spaces = joint_eigenspaces([np.diag([1, 1, 3]), np.diag([1, 2, 2])], P, 3)
    assert sorted(len(b) for _, b in spaces) == [1, 1, 1]


def test_action_needs_generators():
    with pytest.raises(ValueError):
        ActionSet(alg("A", 1), (), ())
