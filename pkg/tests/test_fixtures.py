import numpy as np
import pytest

from monodromy import linalg
from monodromy.fixtures import (
    a1_fixture,
    a2_fixture,
    all_fixtures,
    c2_fixture,
    display_checks,
    fixture_report,
    primitive_roots_of_unity,
)
from monodromy.matgroups import classical_model, form_matrix, preserves_form

P = 73


@pytest.mark.parametrize("kind,size,dim", [("gl", 2, 4), ("sl", 3, 8), ("sp", 4, 10), ("so", 5, 10), ("so", 6, 15), ("sp", 6, 21)])
def test_matrix_models(kind, size, dim):
    m = classical_model(kind, size, P)
    assert m.dim == dim
    assert all(m.contains(b) for b in m.basis)
    a = m.algebra
    for i in range(min(a.dim, 6)):
        for j in range(a.dim):
            for k in range(a.dim):
                assert a.jacobi_holds(i, j, k)


def test_forms():
    j = form_matrix("sp", 4)
    assert np.array_equal(j.T, -j)
    assert np.array_equal(form_matrix("so", 5).T, form_matrix("so", 5))
    with pytest.raises(ValueError):
        form_matrix("sp", 3)
    g = np.diag([2, 3, linalg.inv_mod(3, P), linalg.inv_mod(2, P)])
    assert preserves_form(g, j, P)


def test_weight_lookup():
    m = classical_model("sp", 4, P)
    i = m.weight_index((2, 0))
    assert m.weights[i] == (2, 0)
    with pytest.raises(KeyError):
        m.weight_index((3, 0))


def test_primitive_roots():
    assert primitive_roots_of_unity(P, 2) == [P - 1]
    assert len(primitive_roots_of_unity(P, 8)) == 4
    with pytest.raises(ValueError):
        primitive_roots_of_unity(P, 5)


@pytest.mark.parametrize("fixture,order", [(lambda: a1_fixture(P, "gl"), 2), (lambda: a1_fixture(P, "sl"), 2), (lambda: a2_fixture(P), 3), (lambda: c2_fixture(P), 4)])
def test_fixture_alpha_orders_and_flags(fixture, order):
    fx = fixture()
    reports = fixture_report(fx)
    assert reports
    for r in reports:
        assert r.sigma_value_order == order
        assert r.flags["t"] == (False, True)
        assert all(v == (True, True) for k, v in r.flags.items() if k != "t")
        assert r.w_cap_t_in_t_prime


def test_a1_value_is_minus_one():
    for kind in ("gl", "sl"):
        for r in fixture_report(a1_fixture(P, kind)):
            assert r.sigma_value == P - 1


def test_intersections():
    gl = fixture_report(a1_fixture(P, "gl"))
    assert {r.intersections for r in gl} == {(1, 1, 1)}
    for fx in (a1_fixture(P, "sl"), a2_fixture(P), c2_fixture(P)):
        assert {r.intersections for r in fixture_report(fx)} == {(0, 0, 0)}


def test_fixtures_need_congruence():
    with pytest.raises(ValueError):
        c2_fixture(79)


def test_display_verdicts():
    checks = {d.check_id: d for d in display_checks(P)}
    assert len(checks) == 16
    failing = sorted(k for k, d in checks.items() if not d.as_printed)
    assert failing == ["a2.w_frame", "c2.torus", "c2.x_beta", "c2.x_beta_in_sp4"]
    assert checks["c2.x_beta"].corrected and checks["c2.torus"].corrected


def test_all_fixtures_names():
    assert [fx.name for fx in all_fixtures(P)] == ["A1/gl2", "A1/sl2", "A2/sl3", "C2/sp4"]
