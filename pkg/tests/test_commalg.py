import numpy as np
import pytest

import oracles
from verlinde.commalg import (
    FinCommAlgebra,
    RequiresFieldExtension,
    extension_field,
    ideal_generated,
    invariants,
    is_ideal,
    is_local,
    nilpotency_index,
    nilradical,
    primitive_idempotents,
    product_of_fields,
    quotient,
    square_zero,
    symmetric_algebra,
    truncated_polynomial,
    underlying_ordinary,
)
from verlinde.verlinde_core import from_labels, nontrivial_part, simple, tensor, unit


def samples(p=5):
    return [
        truncated_polynomial(p, 3),
        product_of_fields(p, 3),
        extension_field(p),
        square_zero(simple(p, 3)),
        square_zero(from_labels(p, [2, 4])),
        symmetric_algebra(simple(p, 2)).algebra,
        symmetric_algebra(simple(p, 3)).algebra,
    ]


@pytest.mark.parametrize("p", [5, 7])
def test_axioms(p):
    for a in samples(p):
        checks = a.check()
        assert all(checks.values()), (a.name, checks)


def test_symmetric_algebra_dims_match_oracle():
    p = 5
    for i in (2, 3, 4):
        s = symmetric_algebra(simple(p, i))
        mults = [pw.obj.mult for pw in s.powers]
        for n, m in enumerate(mults):
            assert m == oracles.sym_mult(p, [i], n)
        assert s.algebra.carrier.dim == sum(oracles.ver_dim(m) for m in mults)


def test_truncated_polynomial_radical():
    a = truncated_polynomial(5, 4)
    rad = nilradical(a)
    assert rad.obj.mult == (3, 0, 0, 0)
    assert nilpotency_index(a, rad.incl) == 4
    assert is_local(a)


def test_product_of_fields_idempotents():
    a = product_of_fields(7, 3)
    ids = primitive_idempotents(a)
    assert len(ids) == 3
    assert nilradical(a).obj.is_zero
    assert not is_local(a)


def test_extension_field_needs_extension():
    with pytest.raises(RequiresFieldExtension):
        primitive_idempotents(extension_field(5))


def test_square_zero():
    v = from_labels(5, [2, 3])
    a = square_zero(v)
    assert a.carrier.mult == (1, 1, 1, 0)
    i = ideal_generated(a, nontrivial_part(a.carrier))
    assert i.obj == v
    assert is_ideal(a, i.incl)
    assert nilpotency_index(a, i.incl) == 2
    assert nilradical(a).obj == v
    assert is_local(a)


def test_underlying_ordinary_of_symmetric_algebra():
    a = symmetric_algebra(simple(5, 2)).algebra
    q = underlying_ordinary(a)
    assert q.algebra.carrier == unit(5)
    assert is_local(a)


def test_quotient_is_algebra():
    a = symmetric_algebra(simple(5, 2)).algebra
    top = nontrivial_part(a.carrier)
    q = quotient(a, ideal_generated(a, top).incl)
    assert all(q.algebra.check().values())
    # projection is multiplicative
    assert q.proj @ a.m == q.algebra.m @ tensor(q.proj, q.proj)


def test_invariants_subalgebra():
    a = symmetric_algebra(simple(5, 3)).algebra
    inv = invariants(a)
    assert inv.carrier.mult[1:] == (0, 0, 0)
    assert all(inv.check().values())


def test_json_roundtrip():
    a = square_zero(simple(7, 4))
    b = FinCommAlgebra.from_json(a.to_json())
    assert b.m == a.m and b.unit == a.unit and b.carrier == a.carrier


def test_idempotents_are_orthogonal():
    a = product_of_fields(5, 2)
    e = primitive_idempotents(a)
    p = 5
    total = sum(e) % p
    assert np.array_equal(total, np.ones(2, dtype=np.int64))
