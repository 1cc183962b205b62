import itertools

import numpy as np
import pytest

import oracles
from verlinde.verlinde_core import (
    VerMorphism,
    VerObject,
    associator,
    associator_inv,
    braiding,
    categorical_dim,
    coev,
    direct_sum,
    ev,
    ext_power,
    ext_power_combined,
    from_labels,
    fusion,
    fusion_table,
    hstack,
    identity,
    nilpotence_degree,
    permutation_action,
    sub_equal,
    sub_intersection,
    sub_sum,
    sym_power,
    sym_power_combined,
    sym_top_degree,
    simple,
    tensor,
    tensor_obj,
    trace,
    unit,
    ver_cokernel,
    ver_image,
    ver_kernel,
    zero_map,
)


def random_endo(x: VerObject, seed: int) -> VerMorphism:
    rng = np.random.default_rng(seed)
    return VerMorphism(x, x, [rng.integers(0, x.p, size=(m, m)) for m in x.mult])


def random_map(x: VerObject, y: VerObject, seed: int) -> VerMorphism:
    rng = np.random.default_rng(seed)
    return VerMorphism(x, y, [rng.integers(0, x.p, size=(n, m)) for m, n in zip(x.mult, y.mult)])


def test_fusion_table_small_case():
    # L2 (x) L2 = L1 + L3 and L4 (x) L4 = L1 at p=5
    assert fusion(5, 2, 2) == (1, 0, 1, 0)
    assert fusion(5, 4, 4) == (1, 0, 0, 0)
    assert fusion(7, 3, 4) == (0, 1, 0, 1, 0, 1)
    table = fusion_table(5)
    assert table[0][2] == (0, 0, 1, 0)


def test_object_basics():
    x = from_labels(5, [1, 2, 2, 4])
    assert x.mult == (1, 2, 0, 1)
    assert x.dim == 9 and x.length == 4 and x.cat_dim == 4
    assert str(x) == "L1 + 2L2 + L4"
    assert VerObject.from_json(x.to_json()) == x
    with pytest.raises(ValueError):
        VerObject(5, (1, 2))


def test_tensor_objects_match_oracle():
    p = 7
    for a, b in [([1, 2], [3]), ([2, 5], [4, 6]), ([3, 3], [2])]:
        x, y = from_labels(p, a), from_labels(p, b)
        u = np.kron(oracles.rep_of(p, a), oracles.rep_of(p, b)) % p
        assert tensor_obj(x, y).mult == oracles.ver_mult(u, p)


def test_unit_is_strict():
    x = from_labels(5, [2, 3])
    assert tensor_obj(unit(5), x) == x
    f = random_endo(x, 1)
    assert tensor(identity(unit(5)), f) == f


@pytest.mark.parametrize("p", [5, 7])
def test_pentagon(p):
    objs = [simple(p, i) for i in range(2, 5)]
    for a, b, c, d in itertools.product(objs[:2], repeat=4):
        lhs = associator(a, b, tensor_obj(c, d)) @ associator(tensor_obj(a, b), c, d)
        rhs = (
            tensor(identity(a), associator(b, c, d))
            @ associator(a, tensor_obj(b, c), d)
            @ tensor(associator(a, b, c), identity(d))
        )
        assert lhs == rhs


def test_associator_inverse():
    x, y, z = simple(5, 2), simple(5, 3), from_labels(5, [2, 4])
    assert associator_inv(x, y, z) @ associator(x, y, z) == identity(tensor_obj(tensor_obj(x, y), z))


@pytest.mark.parametrize("p", [5, 7])
def test_braiding_symmetric_and_hexagon(p):
    for i, j, k in itertools.product(range(2, 4), repeat=3):
        x, y, z = simple(p, i), simple(p, j), simple(p, k)
        assert braiding(y, x) @ braiding(x, y) == identity(tensor_obj(x, y))
        lhs = associator(y, z, x) @ braiding(x, tensor_obj(y, z)) @ associator(x, y, z)
        rhs = tensor(identity(y), braiding(x, z)) @ associator(y, x, z) @ tensor(braiding(x, y), identity(z))
        assert lhs == rhs


def test_braiding_natural():
    x, y = from_labels(5, [2, 3]), from_labels(5, [1, 2])
    f, g = random_endo(x, 2), random_endo(y, 3)
    assert braiding(x, y) @ tensor(f, g) == tensor(g, f) @ braiding(x, y)


@pytest.mark.parametrize("p", [5, 7])
def test_zigzag(p):
    for i in range(1, p):
        x = simple(p, i)
        one = identity(x)
        z1 = tensor(one, ev(x)) @ associator(x, x, x) @ tensor(coev(x), one)
        assert z1 == one


@pytest.mark.parametrize("p", [5, 7])
def test_trace_and_dimension(p):
    for i in range(1, p):
        x = simple(p, i)
        assert trace(identity(x)) == i % p == categorical_dim(x)
    x = from_labels(p, [2, 3, 3])
    f, g = random_endo(x, 4), random_endo(x, 5)
    assert trace(f @ g) == trace(g @ f)
    assert trace(f + g) == (trace(f) + trace(g)) % p


def test_tensor_functorial():
    x, y = from_labels(5, [2, 3]), from_labels(5, [2, 4])
    f1, f2 = random_endo(x, 6), random_endo(x, 7)
    g1, g2 = random_endo(y, 8), random_endo(y, 9)
    assert tensor(f1 @ f2, g1 @ g2) == tensor(f1, g1) @ tensor(f2, g2)


def test_kernel_image_cokernel():
    x, y = from_labels(5, [1, 2, 2, 3]), from_labels(5, [2, 3, 3])
    f = random_map(x, y, 10)
    kobj, kin = ver_kernel(f)
    iobj, iin, _ = ver_image(f)
    cobj, cproj, _ = ver_cokernel(f)
    assert (f @ kin).is_zero()
    assert tuple(a + b for a, b in zip(kobj.mult, iobj.mult)) == x.mult
    assert tuple(a + b for a, b in zip(cobj.mult, iobj.mult)) == y.mult
    assert (cproj @ f).is_zero()


def test_subobject_lattice():
    x = from_labels(5, [2, 2, 2])
    a = ver_image(random_map(from_labels(5, [2]), x, 11))[1]
    b = ver_image(random_map(from_labels(5, [2]), x, 12))[1]
    s = sub_sum(a, b)
    assert s.dom.mult == (0, 2, 0, 0)
    assert sub_intersection(a, b).dom.is_zero
    assert sub_equal(sub_sum(a, a), a)


def test_direct_sum_and_hstack():
    x, y = simple(5, 2), simple(5, 3)
    ds = direct_sum(x, y)
    total = hstack(ds.inj)
    assert total == identity(ds.obj)
    assert ds.proj[0] @ ds.inj[0] == identity(x)
    assert (ds.proj[1] @ ds.inj[0]).is_zero()


def test_morphism_json_roundtrip():
    f = random_map(from_labels(7, [2, 5]), from_labels(7, [2, 2, 5]), 13)
    assert VerMorphism.from_json(f.to_json()) == f


def test_morphism_shape_validation():
    with pytest.raises(ValueError):
        VerMorphism(simple(5, 2), simple(5, 2), [np.zeros((1, 1), dtype=np.int64)] * 3)


def test_permutation_action_is_a_group_action():
    x = from_labels(5, [2, 3])
    n = 3
    for s, t in itertools.product(itertools.permutations(range(n)), repeat=2):
        comp = [s[t[k]] for k in range(n)]
        # acting by s then t is the action of the composite s o t on positions
        assert permutation_action(x, n, t) @ permutation_action(x, n, s) == permutation_action(x, n, comp)


@pytest.mark.parametrize("p", [5, 7])
def test_sym_ext_against_oracle(p):
    for labels in ([2], [3], [2, 2], [1, 3], [4]):
        x = from_labels(p, labels)
        for n in range(4):
            if sum(labels) ** n > 300:
                continue
            assert sym_power(x, n).mult == oracles.sym_mult(p, labels, n), (labels, n)
            assert ext_power(x, n).mult == oracles.ext_mult(p, labels, n), (labels, n)


def test_inductive_matches_combined():
    for labels in ([2], [2, 3], [1, 2]):
        x = from_labels(5, labels)
        for n in range(4):
            assert sym_power_combined(x, n).obj == sym_power(x, n)
            assert ext_power_combined(x, n).obj == ext_power(x, n)


def test_sym_of_l_p_minus_1_is_exterior_like():
    # L_{p-1} is odd: S^2 vanishes and Lambda^2 is L_1
    for p in (5, 7):
        x = simple(p, p - 1)
        assert sym_power(x, 2).is_zero
        assert ext_power(x, 2) == unit(p)


@pytest.mark.parametrize("p", [5, 7])
def test_nilpotence_degree(p):
    for i in range(2, p):
        assert nilpotence_degree(p, i) == p - i + 1
        assert sym_top_degree(simple(p, i)) == p - i


def test_zero_map_and_scale():
    x = from_labels(5, [2, 3])
    f = random_endo(x, 14)
    assert (f + zero_map(x, x)) == f
    assert f.scale(5) == zero_map(x, x)
    assert (f - f).is_zero()
