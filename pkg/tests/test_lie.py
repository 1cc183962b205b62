import numpy as np
import pytest

import oracles
from verlinde.lie import (
    NotMultiplicityFree,
    VerLieAlgebra,
    abelian,
    adjoint_action,
    gl,
    gl_decomposition,
    is_simple,
    lie_action_check,
    lie_ideals,
    restrict,
    scalars_central,
    sl,
    sl_with_inclusion,
    tautological_action,
    trace_form,
    zero_lie,
)
from verlinde.verlinde_core import VerMorphism, from_labels, simple, tensor_obj


@pytest.mark.parametrize("p", [5, 7])
def test_gl_carrier_is_x_tensor_dual(p):
    for labels in ([2], [3], [2, 3], [1, 4]):
        x = from_labels(p, labels)
        u = oracles.rep_of(p, labels)
        assert gl(x).carrier.mult == oracles.ver_mult(np.kron(u, u) % p, p)


def test_sl_of_simples():
    assert sl(simple(5, 2)).carrier.mult == (0, 0, 1, 0)
    assert sl(simple(5, 3)).carrier.mult == (0, 0, 1, 0)
    # L_{p-1} (x) L_{p-1} = L_1, so sl vanishes
    assert sl(simple(5, 4)).carrier.is_zero
    assert sl(simple(7, 3)).carrier.mult == (0, 0, 1, 0, 1, 0)


def test_sl_inclusion_is_kernel_of_trace():
    x = from_labels(5, [2, 3])
    sd = sl_with_inclusion(x)
    assert (trace_form(x) @ sd.incl).is_zero()


def test_gl_decomposition():
    for p in (5, 7):
        for i in range(1, p):
            assert all(gl_decomposition(simple(p, i)).values()), (p, i)


def test_tautological_action_is_lie_action():
    for labels in ([2], [2, 3], [1, 1, 4]):
        x = from_labels(7, labels)
        assert lie_action_check(gl(x), x, tautological_action(x))


def test_adjoint_action_is_lie_action():
    g = gl(from_labels(5, [2, 3]))
    assert lie_action_check(g, g.carrier, adjoint_action(g))


def test_abelian_and_zero():
    g = abelian(from_labels(5, [2, 2]))
    assert g.is_abelian()
    assert all(g.check().values())
    assert not is_simple(g)
    z = zero_lie(5)
    assert z.carrier.is_zero and all(z.check().values())


def test_lie_ideals_of_gl_l2():
    g = gl(simple(5, 2))
    # gl(L2) = L1 + L3 with both pieces ideals
    assert len(lie_ideals(g)) == 4


def test_not_multiplicity_free():
    g = gl(from_labels(5, [2, 2]))
    with pytest.raises(NotMultiplicityFree):
        lie_ideals(g)


def test_restrict_to_sl():
    x = simple(7, 4)
    sd = sl_with_inclusion(x)
    s = restrict(gl(x), sd.incl)
    assert s.carrier == sl(x).carrier
    assert all(s.check().values())


def test_broken_bracket_fails_antisymmetry():
    x = simple(5, 2)
    g = gl(x)
    bad = VerLieAlgebra(g.carrier, g.bracket + _tensor_proj(g), name="bad")
    assert not all(bad.check().values())


def _tensor_proj(g):
    # a map g (x) g -> g that is not antisymmetric: project the L_1 channel
    src = tensor_obj(g.carrier, g.carrier)
    blocks = [np.zeros((g.carrier.mult[k], src.mult[k]), dtype=np.int64) for k in range(g.p - 1)]
    blocks[0][0, 0] = 1
    return VerMorphism(src, g.carrier, blocks)


def test_identity_is_central_in_gl():
    for i in range(1, 5):
        assert scalars_central(simple(5, i))
