"""Finite-dimensional commutative algebras in Ver_p.

The ordinary (trivial-isotypic) pieces are handled through structure constants:
for an algebra whose carrier is n copies of the unit, an element is a vector in
F_p^n and the product is read off the type-1 block of m (columns indexed by
a*n + b).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclic_rep import matmul, nullspace, rank
from .verlinde_core import (
    PowerResult,
    VerMorphism,
    VerObject,
    associator,
    braiding,
    corestrict,
    dense,
    direct_sum,
    identity,
    isotypic_inclusion,
    nontrivial_part,
    sub_sum,
    sym_power_data,
    tensor,
    tensor_obj,
    trivial_object,
    unit,
    ver_cokernel,
    ver_image,
    zero_map,
)
from .strands import concat


class RequiresFieldExtension(ValueError):
    """The semisimple quotient is a product of proper extensions of F_p."""


@dataclass
class FinCommAlgebra:
    carrier: VerObject
    m: VerMorphism
    unit: VerMorphism
    name: str = ""

    @property
    def p(self) -> int:
        return self.carrier.p

    def check(self) -> dict[str, bool]:
        a = self.carrier
        ida = identity(a)
        return {
            "associativity": self.m @ tensor(self.m, ida) == self.m @ tensor(ida, self.m) @ associator(a, a, a),
            "left_unit": self.m @ tensor(self.unit, ida) == ida,
            "right_unit": self.m @ tensor(ida, self.unit) == ida,
            "commutativity": self.m @ braiding(a, a) == self.m,
        }

    def to_json(self) -> dict:
        return {"carrier": self.carrier.to_json(), "m": self.m.to_json(), "unit": self.unit.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "FinCommAlgebra":
        return cls(VerObject.from_json(obj["carrier"]), VerMorphism.from_json(obj["m"]), VerMorphism.from_json(obj["unit"]))


# ---------------------------------------------------------------------------
# ordinary algebras by structure constants


@dataclass
class OrdinaryAlgebra:
    """consts[k, i, j] = coefficient of e_k in e_i e_j."""

    p: int
    consts: np.ndarray
    one: np.ndarray

    @property
    def dim(self) -> int:
        return self.consts.shape[0]

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("kij,i,j->k", self.consts, x, y) % self.p

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("kij,i->kj", self.consts, x) % self.p

    def power(self, x: np.ndarray, n: int) -> np.ndarray:
        out = self.one.copy()
        base = x % self.p
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def frobenius_matrix(self) -> np.ndarray:
        n, p = self.dim, self.p
        cols = [self.power(np.eye(n, dtype=np.int64)[i], p) for i in range(n)]
        return np.stack(cols, axis=1) if cols else np.zeros((0, 0), dtype=np.int64)

    def radical(self) -> np.ndarray:
        """Nilradical as a column basis: kernel of a high enough Frobenius power."""
        n, p = self.dim, self.p
        if n == 0:
            return np.zeros((0, 0), dtype=np.int64)
        f = self.frobenius_matrix()
        acc = np.eye(n, dtype=np.int64)
        k = 0
        while p**k < n + 1:
            acc = matmul(f, acc, p)
            k += 1
        return nullspace(acc, p)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.consts, self.consts.transpose(0, 2, 1)))


def ordinary_part(a: FinCommAlgebra) -> OrdinaryAlgebra:
    """Structure constants of a trivial-isotypic algebra."""
    if any(a.carrier.mult[1:]):
        raise ValueError("carrier is not trivial-isotypic")
    n = a.carrier.mult[0]
    block = dense(a.m.blocks[0])[:, : n * n]
    consts = block.reshape(n, n, n)
    one = dense(a.unit.blocks[0])[:, 0].copy()
    return OrdinaryAlgebra(a.p, consts % a.p, one % a.p)


def from_ordinary(p: int, consts, one, name: str = "") -> FinCommAlgebra:
    consts = np.asarray(consts, dtype=np.int64) % p
    n = consts.shape[0]
    obj = trivial_object(p, n)
    sq = tensor_obj(obj, obj)
    mb = [consts.reshape(n, n * n)] + [np.zeros((0, 0), dtype=np.int64)] * (p - 2)
    m = VerMorphism(sq, obj, mb)
    ub = [np.asarray(one, dtype=np.int64).reshape(n, 1)] + [np.zeros((0, 0), dtype=np.int64)] * (p - 2)
    return FinCommAlgebra(obj, m, VerMorphism(unit(p), obj, ub), name=name)


def truncated_polynomial(p: int, k: int) -> FinCommAlgebra:
    """F_p[x]/(x^k)."""
    c = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k - i):
            c[i + j, i, j] = 1
    one = np.zeros(k, dtype=np.int64)
    one[0] = 1
    return from_ordinary(p, c, one, name=f"F_{p}[x]/(x^{k})")


def product_of_fields(p: int, r: int) -> FinCommAlgebra:
    c = np.zeros((r, r, r), dtype=np.int64)
    for i in range(r):
        c[i, i, i] = 1
    return from_ordinary(p, c, np.ones(r, dtype=np.int64), name=f"F_{p}^{r}")


def extension_field(p: int) -> FinCommAlgebra:
    """F_p[x]/(x^2 - n) for a non-square n: a non-split example."""
    n = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 0] = 1
    c[1, 0, 1] = c[1, 1, 0] = 1
    c[0, 1, 1] = n
    return from_ordinary(p, c, np.array([1, 0]), name=f"F_{p}[x]/(x^2-{n})")


def square_zero(v: VerObject) -> FinCommAlgebra:
    """1 + V with V.V = 0."""
    p = v.p
    ds = direct_sum(unit(p), v)
    a = ds.obj
    i1, i2 = ds.inj
    p1, p2 = ds.proj
    m = i1 @ tensor(p1, p1) + i2 @ tensor(p1, p2) + i2 @ tensor(p2, p1)
    return FinCommAlgebra(a, m, i1, name=f"1+{v} square-zero")


@dataclass
class GradedSym:
    """S(X) truncated above degree top, with its degree pieces."""

    algebra: FinCommAlgebra
    x: VerObject
    top: int
    powers: list[PowerResult]
    inj: list[VerMorphism]
    proj: list[VerMorphism]


def symmetric_algebra(x: VerObject, top: int | None = None) -> GradedSym:
    """S(X)/S^{>top}; with top=None, all nonzero degrees (X must have no unit summand)."""
    p = x.p
    from .verlinde_core import sym_top_degree

    if top is None:
        top = sym_top_degree(x)
    powers = [sym_power_data(x, n) for n in range(top + 1)]
    ds = direct_sum(*[pw.obj for pw in powers])
    a = ds.obj
    m = zero_map(tensor_obj(a, a), a)
    xs = [x]
    for i in range(top + 1):
        for j in range(top + 1 - i):
            glue = concat(xs * i, xs * j, p)
            piece = powers[i + j].proj @ glue @ tensor(powers[i].section, powers[j].section)
            m = m + ds.inj[i + j] @ piece @ tensor(ds.proj[i], ds.proj[j])
    alg = FinCommAlgebra(a, m, ds.inj[0], name=f"S({x})<= {top}")
    return GradedSym(alg, x, top, powers, ds.inj, ds.proj)


# ---------------------------------------------------------------------------
# ideals and radicals


@dataclass
class IdealV:
    incl: VerMorphism

    @property
    def obj(self) -> VerObject:
        return self.incl.dom


def ideal_generated(a: FinCommAlgebra, sub: VerMorphism) -> IdealV:
    return IdealV(ver_image(a.m @ tensor(identity(a.carrier), sub))[1])


def is_ideal(a: FinCommAlgebra, incl: VerMorphism) -> bool:
    from .verlinde_core import map_lands_in

    return map_lands_in(a.m @ tensor(identity(a.carrier), incl), incl)


def ideal_product(a: FinCommAlgebra, i: VerMorphism, j: VerMorphism) -> VerMorphism:
    return ver_image(a.m @ tensor(i, j))[1]


def nilpotency_index(a: FinCommAlgebra, i: VerMorphism) -> int | None:
    """Smallest k with I^k = 0, or None if the powers stabilize at a nonzero ideal."""
    cur, k = i, 1
    while not cur.dom.is_zero:
        nxt = ideal_product(a, cur, i)
        if nxt.dom == cur.dom:
            return None
        cur, k = nxt, k + 1
    return k


@dataclass
class Quotient:
    algebra: FinCommAlgebra
    proj: VerMorphism
    section: VerMorphism


def quotient(a: FinCommAlgebra, ideal: VerMorphism) -> Quotient:
    q, proj, sec = ver_cokernel(ideal)
    m = proj @ a.m @ tensor(sec, sec)
    return Quotient(FinCommAlgebra(q, m, proj @ a.unit, name=f"{a.name}/I"), proj, sec)


def underlying_ordinary(a: FinCommAlgebra) -> Quotient:
    """A / (ideal generated by the non-trivial isotypic part)."""
    return quotient(a, ideal_generated(a, nontrivial_part(a.carrier)).incl)


def invariants(a: FinCommAlgebra) -> FinCommAlgebra:
    incl = isotypic_inclusion(a.carrier, [1])
    m = corestrict(a.m @ tensor(incl, incl), incl)
    return FinCommAlgebra(incl.dom, m, corestrict(a.unit, incl), name=f"{a.name}^inv")


def nilradical(a: FinCommAlgebra) -> IdealV:
    base = ideal_generated(a, nontrivial_part(a.carrier)).incl
    q = quotient(a, base)
    ordv = ordinary_part(q.algebra)
    rad = ordv.radical()
    n = q.algebra.carrier.mult[0]
    blocks = [rad] + [np.zeros((0, 0), dtype=np.int64)] * (a.p - 2)
    rad_obj = trivial_object(a.p, rad.shape[1])
    rad_incl = VerMorphism(rad_obj, q.algebra.carrier, blocks)
    if n == 0:
        return IdealV(base)
    return IdealV(sub_sum(base, q.section @ rad_incl))


def _lagrange_split(alg: OrdinaryAlgebra, e: np.ndarray, b: np.ndarray) -> list[np.ndarray]:
    p = alg.p
    out = []
    for lam in range(p):
        acc = e.copy()
        for mu in range(p):
            if mu == lam:
                continue
            factor = (b - mu * alg.one) % p
            acc = alg.mul(acc, factor) * pow((lam - mu) % p, p - 2, p) % p
        if acc.any():
            out.append(acc)
    return out


def primitive_idempotents(a: FinCommAlgebra) -> list[np.ndarray]:
    """Complete orthogonal primitive idempotents, as vectors in the invariant part."""
    inv = invariants(a)
    alg = ordinary_part(inv)
    p, n = alg.p, alg.dim
    if n == 0:
        return []
    rad = alg.radical()
    r0 = rank(rad, p) if rad.shape[1] else 0

    def in_rad(v: np.ndarray) -> bool:
        if not v.any():
            return True
        return r0 > 0 and rank(np.concatenate([rad, v.reshape(-1, 1)], axis=1), p) == r0

    # on A/Rad the Frobenius must be the identity for the quotient to split
    diff = (alg.frobenius_matrix() - np.eye(n, dtype=np.int64)) % p
    if any(not in_rad(diff[:, j]) for j in range(n)):
        raise RequiresFieldExtension(f"{a.name}: semisimple quotient requires a field extension of F_{p}")
    idems = [alg.one.copy()]
    for i in range(n):
        b = np.eye(n, dtype=np.int64)[i]
        nxt = []
        for e in idems:
            nxt.extend(v for v in _lagrange_split(alg, e, b) if not in_rad(v))
        idems = nxt
    # the pieces are idempotent modulo the radical; lift them
    lifted = []
    for e in idems:
        cur = e
        for _ in range(64):
            sq = alg.mul(cur, cur)
            if np.array_equal(sq, cur):
                break
            cube = alg.mul(sq, cur)
            cur = (3 * sq - 2 * cube) % p
        lifted.append(cur)
    return lifted


def is_local(a: FinCommAlgebra) -> bool:
    return len(primitive_idempotents(a)) == 1


def generated_ideal_is_nilpotent(a: FinCommAlgebra) -> bool:
    i = ideal_generated(a, nontrivial_part(a.carrier)).incl
    return nilpotency_index(a, i) is not None


def from_hopf(h) -> FinCommAlgebra:
    return FinCommAlgebra(h.carrier, h.m, h.u, name=h.name)
