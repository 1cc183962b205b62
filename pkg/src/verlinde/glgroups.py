"""A-points of GL(X) for finite commutative algebras A in Ver_p.

GL(X)(A) is the unit group of E = Hom(X, A (x) X) with the product
f * g = (m (x) id) o alpha^-1 o (id_A (x) f) o g.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .commalg import (
    FinCommAlgebra,
    RequiresFieldExtension,
    ideal_generated,
    nilradical,
    primitive_idempotents,
    quotient,
)
from .cyclic_rep import batch_invertible
from .harish_chandra import finite_group_scheme
from .lie import gl, gl_decomposition, is_simple, is_simple_module, sl, tautological_action, trace_form
from .verlinde_core import (
    VerMorphism,
    VerObject,
    associator_inv,
    coev,
    dense,
    identity,
    nontrivial_part,
    simple,
    tensor,
    tensor_obj,
    zero_map,
)


class EnumerationBoundExceeded(RuntimeError):
    pass


DEFAULT_BOUND = 10**6


@dataclass
class EndAlgebraOverA:
    algebra: FinCommAlgebra
    x: VerObject
    shapes: list[tuple[int, int]]    # block shapes of Hom(X, A (x) X)
    consts: np.ndarray               # consts[k, i, j]: coefficient of e_k in e_i * e_j
    one: np.ndarray

    @property
    def p(self) -> int:
        return self.x.p

    @property
    def dim(self) -> int:
        return self.consts.shape[0]

    def to_morphism(self, vec) -> VerMorphism:
        vec = np.asarray(vec, dtype=np.int64)
        blocks, off = [], 0
        for r, c in self.shapes:
            blocks.append(vec[off : off + r * c].reshape(r, c))
            off += r * c
        return VerMorphism(self.x, tensor_obj(self.algebra.carrier, self.x), blocks)

    def mul(self, a, b) -> np.ndarray:
        return np.einsum("kij,i,j->k", self.consts, np.asarray(a), np.asarray(b)) % self.p

    def left_matrices(self) -> np.ndarray:
        """L[i] is the matrix of left multiplication by e_i."""
        return np.transpose(self.consts, (1, 0, 2))

    def is_associative(self) -> bool:
        c = self.consts
        left = np.einsum("mkl,kij->mijl", c, c) % self.p
        right = np.einsum("mik,kjl->mijl", c, c) % self.p
        return bool(np.array_equal(left, right))

    def is_unital(self) -> bool:
        n = self.dim
        eye = np.eye(n, dtype=np.int64)
        return all(
            np.array_equal(self.mul(self.one, eye[i]), eye[i]) and np.array_equal(self.mul(eye[i], self.one), eye[i])
            for i in range(n)
        )


def _flatten(f: VerMorphism) -> np.ndarray:
    parts = [dense(b).reshape(-1) for b in f.blocks]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def compose_over(a: FinCommAlgebra, x: VerObject, f: VerMorphism, g: VerMorphism) -> VerMorphism:
    ao = a.carrier
    return tensor(a.m, identity(x)) @ associator_inv(ao, ao, x) @ tensor(identity(ao), f) @ g


def end_algebra(a: FinCommAlgebra, x: VerObject) -> EndAlgebraOverA:
    ax = tensor_obj(a.carrier, x)
    shapes = [(ax.mult[k], x.mult[k]) for k in range(x.p - 1)]
    n = sum(r * c for r, c in shapes)
    basis = []
    for i in range(n):
        vec = np.zeros(n, dtype=np.int64)
        vec[i] = 1
        blocks, off = [], 0
        for r, c in shapes:
            blocks.append(vec[off : off + r * c].reshape(r, c))
            off += r * c
        basis.append(VerMorphism(x, ax, blocks))
    consts = np.zeros((n, n, n), dtype=np.int64)
    for i, f in enumerate(basis):
        for j, g in enumerate(basis):
            consts[:, i, j] = _flatten(compose_over(a, x, f, g))
    one = _flatten(tensor(a.unit, identity(x)))
    return EndAlgebraOverA(a, x, shapes, consts, one)


def _all_points(p: int, n: int, bound: int) -> np.ndarray:
    if p**n > bound:
        raise EnumerationBoundExceeded(f"{p}^{n} elements exceeds the bound {bound}")
    idx = np.arange(p**n)
    return np.stack([(idx // p**k) % p for k in range(n)], axis=1).astype(np.int64) if n else np.zeros((1, 0), dtype=np.int64)


def enumerate_units(e: EndAlgebraOverA, bound: int = DEFAULT_BOUND) -> np.ndarray:
    pts = _all_points(e.p, e.dim, bound)
    if e.dim == 0:
        return pts
    lm = e.left_matrices()
    out = []
    for start in range(0, len(pts), 1 << 14):
        chunk = pts[start : start + (1 << 14)]
        mats = np.einsum("ci,ikj->ckj", chunk, lm) % e.p
        out.append(chunk[batch_invertible(mats, e.p)])
    return np.concatenate(out)


def gl_order(n: int, p: int) -> int:
    out = 1
    for k in range(n):
        out *= p**n - p**k
    return out


def unit_count_radical(e: EndAlgebraOverA) -> int:
    """|E^x| = |GL(End(X))|^r * p^(dim E - r * sum m_d^2), with A/Rad(A) = F_p^r."""
    a = e.algebra
    r = len(primitive_idempotents(a))  # raises RequiresFieldExtension when not split
    rad = nilradical(a).incl
    red = quotient(a, rad).algebra
    if red.carrier.mult[1:] != (0,) * (a.p - 2) or red.carrier.mult[0] != r:
        raise RequiresFieldExtension("reduced quotient is not a split product of copies of F_p")
    ms = e.x.mult
    semis = 1
    for m in ms:
        semis *= gl_order(m, e.p)
    return semis**r * e.p ** (e.dim - r * sum(m * m for m in ms))


@dataclass
class UnitCount:
    brute: int | None
    radical: int | None

    @property
    def value(self) -> int:
        return self.brute if self.brute is not None else self.radical

    @property
    def consistent(self) -> bool:
        return self.brute is None or self.radical is None or self.brute == self.radical


def unit_count(e: EndAlgebraOverA, bound: int = DEFAULT_BOUND) -> UnitCount:
    brute = radical = None
    try:
        brute = len(enumerate_units(e, bound))
    except EnumerationBoundExceeded:
        pass
    try:
        radical = unit_count_radical(e)
    except RequiresFieldExtension:
        if brute is None:
            raise
    return UnitCount(brute, radical)


@dataclass
class PointsReport:
    total_units: int
    gl0_units: int
    fiber_size: int
    product_law_holds: bool
    image_is_gl0: bool
    fibers_equal: bool
    fiber_over_identity_ok: bool
    radical_count_agrees: bool
    nontrivial_hom_dim: int
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.product_law_holds and self.image_is_gl0 and self.fibers_equal and self.fiber_over_identity_ok

    def to_json(self) -> dict:
        return {
            "total_units": self.total_units,
            "gl0_units": self.gl0_units,
            "fiber_size": self.fiber_size,
            "product_law_holds": self.product_law_holds,
        }


def _codes(pts: np.ndarray, p: int) -> np.ndarray:
    if pts.shape[1] == 0:
        return np.zeros(len(pts), dtype=np.int64)
    weights = p ** np.arange(pts.shape[1], dtype=np.int64)
    return pts @ weights


def gl_points_decomposition_check(a: FinCommAlgebra, x: VerObject, bound: int = DEFAULT_BOUND) -> PointsReport:
    """Counts GL(X)(A) and compares with GL(X)_0(A/I) times the kernel, I the ideal of A_{!=0}."""
    p = x.p
    e = end_algebra(a, x)
    units = enumerate_units(e, bound)
    ideal = ideal_generated(a, nontrivial_part(a.carrier)).incl
    q = quotient(a, ideal)
    abar = q.algebra
    ebar = end_algebra(abar, x)
    bar_units = enumerate_units(ebar, bound)
    # pi: E -> E_bar, composing with the projection A -> A_bar
    pi = np.zeros((ebar.dim, e.dim), dtype=np.int64)
    for i in range(e.dim):
        vec = np.zeros(e.dim, dtype=np.int64)
        vec[i] = 1
        pi[:, i] = _flatten(tensor(q.proj, identity(x)) @ e.to_morphism(vec))
    images = (units @ pi.T) % p
    img_codes = _codes(images, p)
    bar_codes = _codes(bar_units, p)
    uniq, counts = np.unique(img_codes, return_counts=True)
    image_ok = set(uniq.tolist()) == set(bar_codes.tolist())
    ker_dim = e.dim - ebar.dim
    fiber = p**ker_dim
    fibers_equal = bool(np.all(counts == fiber))
    # fiber over the identity: units congruent to 1 modulo I
    one_code = _codes((e.one[None, :] @ pi.T) % p, p)[0]
    over_one = units[img_codes == one_code]
    congruent = np.all(((over_one - e.one[None, :]) @ pi.T) % p == 0) if len(over_one) else True
    ident_ok = bool(congruent and len(over_one) == fiber)
    nontriv = nontrivial_part(a.carrier)
    hom_dim = sum(
        tensor_obj(nontriv.dom, x).mult[k] * x.mult[k] for k in range(p - 1)
    )
    notes = []
    if hom_dim != ker_dim:
        notes.append("ideal generated by the nontrivial part meets the trivial part")
    try:
        rad_ok = unit_count_radical(e) == len(units)
    except RequiresFieldExtension:
        rad_ok = True
        notes.append("radical count skipped: non-split quotient")
    return PointsReport(
        total_units=len(units),
        gl0_units=len(bar_units),
        fiber_size=fiber,
        product_law_holds=len(units) == len(bar_units) * fiber,
        image_is_gl0=image_ok,
        fibers_equal=fibers_equal,
        fiber_over_identity_ok=ident_ok,
        radical_count_agrees=rad_ok,
        nontrivial_hom_dim=hom_dim,
        notes=notes,
    )


def tautological_simplicity(x: VerObject, action: VerMorphism | None = None) -> bool:
    g = gl(x)
    act = tautological_action(x) if action is None else action
    return is_simple_module(g.carrier, x, act)


def zero_gl_action(x: VerObject) -> VerMorphism:
    g = gl(x)
    return zero_map(tensor_obj(g.carrier, x), x)


def trace_of_scalars(x: VerObject) -> int:
    """trace_form applied to the identity element coev(1) of gl(X), as an element of F_p."""
    f = trace_form(x) @ coev(x)
    return int(dense(f.blocks[0])[0, 0]) % x.p


@dataclass
class PGLReport:
    p: int
    i: int
    dim: int
    sl_mult: tuple[int, ...]
    simple: bool
    torus_decomposition: dict[str, bool]
    group_checks: dict[str, bool]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "i": self.i,
            "dim": self.dim,
            "sl": list(self.sl_mult),
            "simple": self.simple,
            "torus_decomposition": self.torus_decomposition,
            "group_checks": self.group_checks,
        }


def pgl(i: int, p: int, max_headroom: int | None = None):
    """O(PGL(L_i)) = U(sl(L_i))^*, with the simplicity and torus checks."""
    if not 2 <= i <= p - 1:
        raise ValueError("need 2 <= i <= p-1")
    x = simple(p, i)
    g = sl(x)
    gs = finite_group_scheme(g, max_headroom)
    simple_flag = is_simple(g) if not g.carrier.is_zero else False
    rep = PGLReport(p, i, gs.coord.carrier.dim, g.carrier.mult, simple_flag, gl_decomposition(x), gs.checks)
    return gs.coord, rep
