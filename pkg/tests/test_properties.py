import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from verlinde.commalg import square_zero
from verlinde.cyclic_rep import CyclicRep, negligible_subspace
from verlinde.glgroups import end_algebra, enumerate_units, unit_count_radical
from verlinde.hopf import function_algebra, group_algebra, verify_hopf
from verlinde.verlinde_core import (
    VerMorphism,
    VerObject,
    braiding,
    ext_power,
    ext_power_combined,
    fusion_product,
    sym_power,
    sym_power_combined,
    tensor,
    tensor_obj,
    trace,
)

PRIMES = st.sampled_from([5, 7, 11])
SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def objects(draw, p=None, max_len=3):
    if p is None:
        p = draw(PRIMES)
    labels = draw(st.lists(st.integers(1, p - 1), min_size=1, max_size=max_len))
    mult = [0] * (p - 1)
    for i in labels:
        mult[i - 1] += 1
    return VerObject(p, tuple(mult))


@st.composite
def object_triples(draw):
    p = draw(PRIMES)
    return tuple(draw(objects(p)) for _ in range(3))


@st.composite
def endo(draw, x):
    blocks = [np.array(draw(st.lists(st.integers(0, x.p - 1), min_size=m * m, max_size=m * m)),
                       dtype=np.int64).reshape(m, m) for m in x.mult]
    return VerMorphism(x, x, blocks)


@SETTINGS
@given(object_triples())
def test_fusion_commutative_associative(t):
    x, y, z = t
    p = x.p
    assert fusion_product(p, x.mult, y.mult) == fusion_product(p, y.mult, x.mult)
    left = fusion_product(p, fusion_product(p, x.mult, y.mult), z.mult)
    right = fusion_product(p, x.mult, fusion_product(p, y.mult, z.mult))
    assert left == right


@SETTINGS
@given(object_triples())
def test_dimensions_multiply(t):
    x, y, _ = t
    assert tensor_obj(x, y).dim % x.p == (x.dim * y.dim) % x.p


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([5, 7]).flatmap(lambda p: st.tuples(objects(p, 2), objects(p, 2))))
def test_tensor_matches_kronecker_oracle(pair):
    x, y = pair
    p = x.p
    u = np.kron(oracles.rep_of(p, x.labels()), oracles.rep_of(p, y.labels())) % p
    assert tensor_obj(x, y).mult == oracles.ver_mult(u, p)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([5, 7]).flatmap(lambda p: objects(p, 2)), st.integers(0, 3))
def test_sym_ext_inductive_vs_combined(x, n):
    assert sym_power_combined(x, n).obj == sym_power(x, n)
    assert ext_power_combined(x, n).obj == ext_power(x, n)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_braiding_natural(data):
    p = data.draw(st.sampled_from([5, 7]))
    x, y = data.draw(objects(p, 2)), data.draw(objects(p, 2))
    f, g = data.draw(endo(x)), data.draw(endo(y))
    assert braiding(x, y) @ tensor(f, g) == tensor(g, f) @ braiding(x, y)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_trace_cyclic_and_multiplicative(data):
    p = data.draw(st.sampled_from([5, 7]))
    x, y = data.draw(objects(p, 2)), data.draw(objects(p, 2))
    f, g = data.draw(endo(x)), data.draw(endo(x))
    h = data.draw(endo(y))
    assert trace(f @ g) == trace(g @ f)
    assert trace(tensor(f, h)) == trace(f) * trace(h) % p


@st.composite
def small_reps(draw, p, maxdim):
    sizes = draw(st.lists(st.integers(1, p), min_size=1, max_size=3).filter(lambda s: sum(s) <= maxdim))
    return oracles.rep_of(p, sizes)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_negligibles_form_tensor_ideal(data):
    p = data.draw(st.sampled_from([5, 7]))
    ux, uy = data.draw(small_reps(p, 5)), data.draw(small_reps(p, 5))
    uw = data.draw(small_reps(p, 3))
    negs = negligible_subspace(CyclicRep(p, ux), CyclicRep(p, uy))
    coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=len(negs), max_size=len(negs)))
    f = np.zeros((uy.shape[0], ux.shape[0]), dtype=np.int64)
    for c, b in zip(coeffs, negs):
        f = (f + c * b) % p
    assert oracles.is_negligible(f, ux, uy, p)
    tw = np.kron(f, np.eye(uw.shape[0], dtype=np.int64)) % p
    assert oracles.is_negligible(tw, np.kron(ux, uw) % p, np.kron(uy, uw) % p, p)
    wt = np.kron(np.eye(uw.shape[0], dtype=np.int64), f) % p
    assert oracles.is_negligible(wt, np.kron(uw, ux) % p, np.kron(uw, uy) % p, p)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([5, 7]), st.integers(1, 3), st.integers(1, 3))
def test_abelian_group_algebras_are_hopf(p, a, b):
    n = a * b
    table = np.array([[((i // b + j // b) % a) * b + (i % b + j % b) % b for j in range(n)] for i in range(n)])
    assert verify_hopf(group_algebra(p, table)).all_pass
    assert verify_hopf(function_algebra(p, table)).all_pass


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_unit_counts_agree_on_square_zero(data):
    p = 5
    v = data.draw(objects(p, 2))
    x = data.draw(objects(p, 1))
    e = end_algebra(square_zero(v), x)
    if p ** e.dim > 20000:
        return
    assert len(enumerate_units(e)) == unit_count_radical(e)
