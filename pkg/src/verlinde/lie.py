"""Lie algebras in Ver_p that live inside associative algebras."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .strands import Strands, concat
from .verlinde_core import (
    VerMorphism,
    VerObject,
    associator,
    associator_inv,
    braiding,
    coev,
    corestrict,
    ev,
    identity,
    isotypic_inclusion,
    map_lands_in,
    permutation_action,
    sub_equal,
    sub_intersection,
    sub_sum,
    tensor,
    tensor_obj,
    ver_image,
    ver_kernel,
    zero_map,
    zero_object,
)


class NotMultiplicityFree(ValueError):
    pass


@dataclass
class Envelope:
    """Associative algebra (obj, product, unit) with an embedding of the Lie algebra."""

    obj: VerObject
    product: VerMorphism
    unit: VerMorphism
    embed: VerMorphism


@dataclass
class VerLieAlgebra:
    carrier: VerObject
    bracket: VerMorphism
    envelope: Envelope | None = None
    name: str = ""

    @property
    def p(self) -> int:
        return self.carrier.p

    def is_abelian(self) -> bool:
        return self.bracket.is_zero()

    def antisymmetry_holds(self) -> bool:
        g = self.carrier
        return (self.bracket @ braiding(g, g) + self.bracket).is_zero()

    def jacobi_map(self) -> VerMorphism:
        """bracket o (bracket x id) o (id + c123 + c123^2) on (g x g) x g."""
        g = self.carrier
        three = tensor_obj(tensor_obj(g, g), g)
        to_nest = associator(g, g, g)
        from_nest = associator_inv(g, g, g)
        cyc = permutation_action(g, 3, (1, 2, 0))
        cyc2 = cyc @ cyc
        s = identity(tensor_obj(g, tensor_obj(g, g))) + cyc + cyc2
        total = from_nest @ s @ to_nest
        out = self.bracket @ tensor(self.bracket, identity(g)) @ total
        assert out.dom == three
        return out

    def jacobi_holds(self) -> bool:
        return self.jacobi_map().is_zero()

    def check(self) -> dict[str, bool]:
        return {"antisymmetry": self.antisymmetry_holds(), "jacobi": self.jacobi_holds()}

    def to_json(self) -> dict:
        out = {"carrier": self.carrier.to_json(), "bracket": self.bracket.to_json()}
        if self.envelope is not None:
            e = self.envelope
            out["envelope"] = {
                "object": e.obj.to_json(),
                "product": e.product.to_json(),
                "unit": e.unit.to_json(),
                "embed": e.embed.to_json(),
            }
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "VerLieAlgebra":
        return cls(VerObject.from_json(obj["carrier"]), VerMorphism.from_json(obj["bracket"]))


def commutator(product: VerMorphism) -> VerMorphism:
    a = product.cod
    return product - product @ braiding(a, a)


def abelian(x: VerObject, name: str = "") -> VerLieAlgebra:
    return VerLieAlgebra(x, zero_map(tensor_obj(x, x), x), name=name or f"abelian({x})")


def zero_lie(p: int) -> VerLieAlgebra:
    return abelian(zero_object(p), "0")


def gl_product(x: VerObject) -> VerMorphism:
    """(X x X*) x (X x X*) -> X x X*, evaluating the middle pair."""
    p = x.p
    s = Strands([x, x, x, x], p).apply(1, 2, ev(x), [])
    return s.result() @ concat([x, x], [x, x], p)


def gl(x: VerObject) -> VerLieAlgebra:
    if x.is_zero:
        raise ValueError("gl of the zero object")
    carrier = tensor_obj(x, x)
    prod = gl_product(x)
    env = Envelope(carrier, prod, coev(x), identity(carrier))
    return VerLieAlgebra(carrier, commutator(prod), env, name=f"gl({x})")


def trace_form(x: VerObject) -> VerMorphism:
    """gl(X) = X x X* -> 1."""
    return ev(x) @ braiding(x, x)


def restrict(g: VerLieAlgebra, incl: VerMorphism, name: str = "") -> VerLieAlgebra:
    """Lie subalgebra on a bracket-closed subobject."""
    inner = g.bracket @ tensor(incl, incl)
    bracket = corestrict(inner, incl)
    env = None
    if g.envelope is not None:
        e = g.envelope
        env = Envelope(e.obj, e.product, e.unit, e.embed @ incl)
    return VerLieAlgebra(incl.dom, bracket, env, name=name)


@dataclass
class SlData:
    lie: VerLieAlgebra
    incl: VerMorphism


def sl_with_inclusion(x: VerObject) -> SlData:
    big = gl(x)
    _, incl = ver_kernel(trace_form(x))
    return SlData(restrict(big, incl, name=f"sl({x})"), incl)


def sl(x: VerObject) -> VerLieAlgebra:
    return sl_with_inclusion(x).lie


def trace_is_lie_map(x: VerObject) -> bool:
    return (trace_form(x) @ gl(x).bracket).is_zero()


def scalars(x: VerObject) -> VerMorphism:
    """Inclusion of the scalar line (image of coev) into gl(X)."""
    return ver_image(coev(x))[1]


def scalars_central(x: VerObject) -> bool:
    g = gl(x)
    s = scalars(x)
    return (g.bracket @ tensor(s, identity(g.carrier))).is_zero()


def _check_mult_free(x: VerObject) -> None:
    if any(m > 1 for m in x.mult):
        raise NotMultiplicityFree(f"{x} is not multiplicity-free")


def _subsets(x: VerObject):
    types = [k + 1 for k, m in enumerate(x.mult) if m]
    for r in range(len(types) + 1):
        for sub in combinations(types, r):
            yield isotypic_inclusion(x, sub)


@dataclass
class LieIdealWitness:
    incl: VerMorphism

    @property
    def obj(self) -> VerObject:
        return self.incl.dom


def is_ideal(g: VerLieAlgebra, incl: VerMorphism) -> bool:
    return map_lands_in(g.bracket @ tensor(identity(g.carrier), incl), incl)


def lie_ideals(g: VerLieAlgebra) -> list[LieIdealWitness]:
    _check_mult_free(g.carrier)
    return [LieIdealWitness(i) for i in _subsets(g.carrier) if is_ideal(g, i)]


def is_simple(g: VerLieAlgebra) -> bool:
    if g.carrier.is_zero or g.is_abelian():
        return False
    ideals = lie_ideals(g)
    return len(ideals) == 2


def lie_action_check(g: VerLieAlgebra, v: VerObject, act: VerMorphism) -> bool:
    """act o (bracket x id) = act o (id x act) o alpha o ((id - c) x id)."""
    x = g.carrier
    lhs = act @ tensor(g.bracket, identity(v))
    swap = identity(tensor_obj(x, x)) - braiding(x, x)
    rhs = act @ tensor(identity(x), act) @ associator(x, x, v) @ tensor(swap, identity(v))
    return lhs == rhs


def adjoint_action(g: VerLieAlgebra) -> VerMorphism:
    return g.bracket


def tautological_action(x: VerObject) -> VerMorphism:
    """gl(X) x X -> X: evaluate X* against X."""
    return tensor(identity(x), ev(x)) @ associator(x, x, x)


def stable_subobjects(g_obj: VerObject, v: VerObject, act: VerMorphism) -> list[VerMorphism]:
    _check_mult_free(v)
    out = []
    for incl in _subsets(v):
        if map_lands_in(act @ tensor(identity(g_obj), incl), incl):
            out.append(incl)
    return out


def is_simple_module(g_obj: VerObject, v: VerObject, act: VerMorphism) -> bool:
    if v.is_zero:
        return False
    return len(stable_subobjects(g_obj, v, act)) == 2


def gl_decomposition(x: VerObject) -> dict[str, bool]:
    """gl(X) = scalars + sl(X) as objects, with scalars central."""
    g = gl(x)
    s = scalars(x)
    sd = sl_with_inclusion(x)
    inter = sub_intersection(s, sd.incl)
    total = sub_sum(s, sd.incl)
    return {
        "trivial_intersection": inter.dom.is_zero,
        "spans": sub_equal(total, identity(g.carrier)),
        "scalars_central": scalars_central(x),
    }
