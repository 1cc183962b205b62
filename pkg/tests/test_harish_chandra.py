import pytest

from verlinde.harish_chandra import (
    ExperimentalPath,
    PairRep,
    build_H,
    dhc,
    finite_group_scheme,
    make_pair,
    module_to_pair_rep,
    pair_checks,
    pair_rep_checks,
    pair_rep_to_module,
    prim_and_grouplikes,
    roundtrip_cocomm,
    roundtrip_pair,
    trivial_pair,
)
from verlinde.hopf import action_from_endos, base_field_hopf, cyclic_group, group_algebra, primitives, verify_hopf
from verlinde.lie import abelian, sl, sl_with_inclusion, tautological_action
from verlinde.suites import PAIR_TARGETS, pair_target, swap_endo, swap_pair
from verlinde.verlinde_core import (
    VerMorphism,
    direct_sum,
    from_labels,
    identity,
    simple,
    tensor,
    tensor_obj,
    trivial_part,
    unit,
    zero_map,
)


@pytest.mark.parametrize("name", PAIR_TARGETS)
def test_pair_axioms(name):
    pair = pair_target(name, 5)
    assert all(pair_checks(pair).values())


def test_built_hopf_sizes():
    b = build_H(pair_target("k-sl-L2", 5))
    assert b.hopf.carrier.mult == (2, 0, 1, 0)
    assert verify_hopf(b.hopf).all_pass
    b2 = build_H(swap_pair(5))
    assert b2.hopf.carrier.mult == (8, 12, 12, 8)
    for d in b2.pbw:
        assert d["grH"] == d["S_times_J"]


def test_prim_and_grouplikes_of_smash():
    b = build_H(swap_pair(5))
    assert all(prim_and_grouplikes(b).values())


def test_nonzero_trivial_part_is_experimental():
    g = abelian(from_labels(5, [1, 2]))
    j = group_algebra(5, cyclic_group(2))
    act = action_from_endos(j, g.carrier, [identity(g.carrier)] * 2)
    # g_0 = L1 needs an identification with Prim(J)
    with pytest.raises(ValueError):
        make_pair(j, g, act)


def test_build_refuses_trivial_part():
    g = abelian(from_labels(5, [1]))
    j = base_field_hopf(5)
    act = VerMorphism(tensor_obj(j.carrier, g.carrier), g.carrier, identity(g.carrier).blocks)
    prim_iso = zero_map(primitives(j).dom, trivial_part(g.carrier).dom)
    pair = make_pair(j, g, act, prim_iso)
    with pytest.raises(ExperimentalPath):
        build_H(pair)


@pytest.mark.parametrize("p", [5, 7])
def test_roundtrips_trivial_pairs(p):
    for g in (sl(simple(p, 2)), sl(simple(p, 3)), abelian(simple(p, 2))):
        rt = roundtrip_pair(trivial_pair(p, g))
        assert rt.ok, rt.checks


def test_roundtrip_from_group_algebra():
    rt = roundtrip_cocomm(group_algebra(5, cyclic_group(3)))
    assert rt.ok and rt.checks["bijective"]


def test_dhc_of_envelope_recovers_g():
    b = build_H(pair_target("k-sl-L3", 7))
    pd = dhc(b.hopf)
    assert pd.pair.g.carrier == sl(simple(7, 3)).carrier
    assert pd.pair.J.carrier == unit(7)
    assert all(pd.checks.values())


def test_group_scheme_sl_l3_p7():
    gs = finite_group_scheme(sl(simple(7, 3)))
    assert all(gs.checks.values()), gs.checks
    assert gs.cotangent == sl(simple(7, 3)).carrier


def test_tautological_rep_roundtrip():
    p = 5
    x = simple(p, 2)
    sd = sl_with_inclusion(x)
    g = sl(x)
    pair = trivial_pair(p, g)
    b = tautological_action(x) @ tensor(sd.incl, identity(x))
    a = VerMorphism(tensor_obj(unit(p), x), x, identity(x).blocks)
    rep = PairRep(x, a, b)
    assert all(pair_rep_checks(pair, rep).values())
    built = build_H(pair)
    mod = pair_rep_to_module(built, rep)
    assert all(mod.checks.values())
    back = module_to_pair_rep(built, mod)
    assert back.a == rep.a and back.b == rep.b


def test_swap_rep_roundtrip():
    p = 5
    pair = swap_pair(p)
    v = from_labels(p, [2, 2])
    a = action_from_endos(pair.J, v, [identity(v), swap_endo(v)])
    b = zero_map(tensor_obj(pair.g.carrier, v), v)
    rep = PairRep(v, a, b)
    assert all(pair_rep_checks(pair, rep).values())
    built = build_H(pair)
    mod = pair_rep_to_module(built, rep)
    assert all(mod.checks.values())
    back = module_to_pair_rep(built, mod)
    assert back.a == rep.a and back.b == rep.b


def test_inequivariant_rep_detected():
    p = 5
    pair = swap_pair(p)
    gs = direct_sum(simple(p, 2), simple(p, 2))
    vs = direct_sum(unit(p), simple(p, 2))
    v = vs.obj
    # g acts through its first copy only, sending L1 into L2; the swap does not respect this
    b = vs.inj[1] @ tensor(gs.proj[0], vs.proj[0])
    a = action_from_endos(pair.J, v, [identity(v), identity(v)])
    checks = pair_rep_checks(pair, PairRep(v, a, b))
    assert checks["lie_action"] and checks["J_module_assoc"]
    assert not checks["J_equivariance"]
