import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monodromy import linalg
from monodromy.ledger import (
    PRINCIPAL_RHS,
    LedgerError,
    LocalCondition,
    WilesLedger,
    dual_selmer_descent_sim,
    mu_l2_obstruction,
    principal_rhs,
    standard_ledger,
    t_ledger_check,
    torus_fixed_dim,
    unramified_h1_cocycles,
    unramified_local_h,
    weyl_slack_closed_form,
    weyl_slack_row,
    wiles_rhs,
)

P = 73


def test_local_condition_validation():
    with pytest.raises(LedgerError):
        LocalCondition("nowhere", 0, 0)
    with pytest.raises(LedgerError):
        LocalCondition("minimal", 1, 0)
    with pytest.raises(LedgerError):
        LocalCondition("real", 1, 1)
    with pytest.raises(LedgerError):
        LocalCondition("ell", -1, 0)
    assert LocalCondition("fixed_frobenius", 0, 4).slack == -4


def test_ell_condition_needs_full_dimension():
    with pytest.raises(LedgerError):
        WilesLedger((LocalCondition("ell", 3, 0),), module_dim=8)
    with pytest.raises(LedgerError):
        WilesLedger((LocalCondition("ell", 8, 0),), module_dim=8, h2_ell_zero=False)


def test_ledger_sum_and_rhs():
    a = WilesLedger((LocalCondition("ell", 8, 0),), 8, h0_global=1)
    b = WilesLedger((LocalCondition("real", 0, 4),), 8)
    c = a + b
    assert wiles_rhs(c) == 1 + 8 - 4
    d = c.to_dict()
    assert d["wiles_rhs"] == 5 and len(d["conditions"]) == 2


@pytest.mark.parametrize("family,ranks", [("A", range(2, 9)), ("B", range(2, 9)), ("C", range(2, 9)), ("D", range(4, 9))])
def test_weyl_slack_rows(family, ranks):
    for n in ranks:
        row = weyl_slack_row(family, n)
        assert row.ok, row


def test_slack_closed_forms():
    # SL_n has rank n - 1, so the slack n - 1 equals the rank
    assert weyl_slack_closed_form("A", 4) == 4
    assert weyl_slack_closed_form("B", 3) == 7
    assert weyl_slack_closed_form("C", 3) == 5
    assert weyl_slack_closed_form("D", 4) == 8
    assert weyl_slack_row("E", 7).rhs == 7
    with pytest.raises(LedgerError):
        weyl_slack_closed_form("F", 4)


def test_principal_rhs():
    for (f, n), v in PRINCIPAL_RHS.items():
        assert principal_rhs(f, n) == v
    assert [principal_rhs("A", 2), principal_rhs("B", 3), principal_rhs("E", 6)] == [2, 9, 34]


def test_standard_ledger_shape():
    led = standard_ledger("B", 3, "principal", 9)
    kinds = [c.place_kind for c in led.conditions]
    assert kinds == ["real", "ell", "minimal", "fixed_frobenius", "steinberg"]
    with pytest.raises(LedgerError):
        standard_ledger("B", 3, "other", 9)


def test_unramified_examples():
    assert unramified_local_h(np.eye(1, dtype=np.int64), 1, P) == (1, 2, 1)
    assert unramified_local_h(np.array([[2]]), 2, P) == (0, 1, 1)
    assert unramified_local_h(np.array([[2]]), 3, P) == (0, 0, 0)
    with pytest.raises(LedgerError):
        unramified_local_h(np.zeros((2, 2), dtype=np.int64), 2, P)
    with pytest.raises(LedgerError):
        unramified_local_h(np.eye(2, dtype=np.int64), P, P)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.integers(1, P - 1), st.integers(0, 2**32 - 1))
def test_unramified_euler_characteristic(n, q, seed):
    rng = np.random.default_rng(seed)
    phi = rng.integers(0, P, size=(n, n))
    if linalg.rank(phi, P) < n:
        return
    h0, h1, h2 = unramified_local_h(phi, q, P)
    assert h1 == h0 + h2 == unramified_h1_cocycles(phi, q, P)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 50), st.integers(0, 50))
def test_descent_difference_invariant(a, b):
    sel, dual = min(a, b), max(a, b)
    states = dual_selmer_descent_sim(sel, dual)
    assert len(states) == dual + 1 and states[0] == (sel, dual) and states[-1][1] == 0
    for (s0, d0), (s1, d1) in zip(states, states[1:]):
        assert d1 == d0 - 1
        if s0 > 0:
            assert s1 - d1 == s0 - d0


def test_descent_example_and_errors():
    assert dual_selmer_descent_sim(2, 3) == [(2, 3), (1, 2), (0, 1), (0, 0)]
    assert dual_selmer_descent_sim(0, 0) == [(0, 0)]
    with pytest.raises(LedgerError):
        dual_selmer_descent_sim(3, 2)
    with pytest.raises(LedgerError):
        dual_selmer_descent_sim(-1, 2)


def test_torus_ledger():
    assert torus_fixed_dim("A", 4, [0]) == 3
    assert torus_fixed_dim("A", 4, []) == 4
    assert t_ledger_check("A", 4, 3) == -3
    with pytest.raises(LedgerError):
        t_ledger_check("A", 4, 5)


def test_mu_l2():
    assert mu_l2_obstruction(2, 73)
    assert not mu_l2_obstruction(73 * 72, 73)
    with pytest.raises(LedgerError):
        mu_l2_obstruction(2, 4)


def test_ramakrishna_step_on_fixtures():
    from monodromy.fixtures import all_fixtures
    from monodromy.ledger import ramakrishna_step_invariants

    for fx in all_fixtures(P):
        for a in fx.alphas:
            q = fx.decomposition.roots[a].sigma_value
            step = ramakrishna_step_invariants(fx.decomposition, fx.torus, a, q)
            assert step.eq2_delta == 0 and step.eq1_strict_possible
            with pytest.raises(LedgerError):
                ramakrishna_step_invariants(fx.decomposition, fx.torus, a, q + 1)
