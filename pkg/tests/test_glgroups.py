import pytest

import oracles
from verlinde.commalg import extension_field, product_of_fields, square_zero, truncated_polynomial
from verlinde.glgroups import (
    EnumerationBoundExceeded,
    end_algebra,
    enumerate_units,
    gl_order,
    gl_points_decomposition_check,
    pgl,
    tautological_simplicity,
    trace_of_scalars,
    unit_count,
    unit_count_radical,
    zero_gl_action,
)
from verlinde.suites import algebra_target
from verlinde.verlinde_core import from_labels, simple


def test_gl_order():
    assert gl_order(1, 5) == 4
    assert gl_order(2, 5) == 480
    assert gl_order(0, 7) == 1


@pytest.mark.parametrize("name", ["k", "sq-L3", "symL2", "FxF"])
def test_end_algebra_is_unital_associative(name):
    a = algebra_target(name, 5)
    for x in (simple(5, 2), from_labels(5, [2, 3])):
        e = end_algebra(a, x)
        assert e.is_associative() and e.is_unital()


def test_units_over_the_base_field():
    # Hom(X, X) for X = 2L2 + L3 is M_2 x M_1
    x = from_labels(5, [2, 2, 3])
    e = end_algebra(algebra_target("k", 5), x)
    assert len(enumerate_units(e)) == gl_order(2, 5) * gl_order(1, 5)


@pytest.mark.parametrize("name", ["k", "sq-L3", "symL2", "FxF"])
def test_unit_count_matches_oracle(name):
    for p in (5, 7):
        a = algebra_target(name, p)
        for x in (simple(p, 2), simple(p, 3)):
            e = end_algebra(a, x)
            if p ** e.dim > 3000:
                continue
            uc = unit_count(e)
            assert uc.consistent
            assert uc.brute == oracles.count_units_bruteforce(e.consts, p)


def test_radical_formula_on_ordinary_algebras():
    x = simple(5, 2)
    for a in (truncated_polynomial(5, 3), product_of_fields(5, 2), square_zero(from_labels(5, [1, 1]))):
        e = end_algebra(a, x)
        assert unit_count_radical(e) == len(enumerate_units(e))


def test_non_split_algebra_uses_enumeration():
    e = end_algebra(extension_field(5), simple(5, 2))
    uc = unit_count(e)
    assert uc.radical is None and uc.brute == 24


def test_enumeration_bound():
    e = end_algebra(algebra_target("k", 5), from_labels(5, [2, 2, 2]))
    with pytest.raises(EnumerationBoundExceeded):
        enumerate_units(e, bound=1000)


@pytest.mark.parametrize("name,x", [("k", "L2"), ("sq-L3", "L2"), ("symL2", "L2"), ("sq-L3", "L3"), ("symL2", "L3")])
def test_points_decomposition(name, x):
    a = algebra_target(name, 5)
    obj = simple(5, int(x[1:]))
    r = gl_points_decomposition_check(a, obj)
    assert r.ok and r.radical_count_agrees


def test_points_on_square_zero():
    r = gl_points_decomposition_check(square_zero(simple(5, 3)), simple(5, 2))
    assert (r.total_units, r.gl0_units, r.fiber_size) == (20, 4, 5)
    assert r.to_json()["product_law_holds"]


def test_tautological_module():
    for p in (5, 7):
        for i in range(1, p):
            assert tautological_simplicity(simple(p, i))
    x = from_labels(5, [1, 3])
    assert tautological_simplicity(x)
    assert not tautological_simplicity(x, zero_gl_action(x))


def test_trace_of_scalars():
    for p in (5, 7):
        for i in range(1, p):
            assert trace_of_scalars(simple(p, i)) == i % p


@pytest.mark.parametrize("i,p", [(2, 5), (3, 5), (4, 5), (2, 7)])
def test_pgl(i, p):
    coord, rep = pgl(i, p)
    assert all(rep.torus_decomposition.values())
    assert all(rep.group_checks.values())
    if i == p - 1:
        assert coord.carrier.dim == 1 and not rep.simple
    else:
        assert rep.simple


def test_pgl_rejects_l1():
    with pytest.raises(ValueError):
        pgl(1, 5)
