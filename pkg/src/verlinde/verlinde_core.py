"""The semisimplified category Ver_p.

Objects are multiplicity vectors over the simples L_1..L_{p-1}.  Each object has
a standard representative: standard Jordan blocks ordered by size, copies of
the same size adjacent.  A morphism modulo negligibles is stored as one
matrix per simple type (rows = copies in the codomain, columns = copies in the
domain): two equivariant maps are equal in Ver_p exactly when these
"isotypic blocks" agree, and composition is block-wise.

Tensor products use a fixed layout: the copies of L_d in X (x) Y are indexed by
channels (a, b) with L_d inside L_a (x) L_b, lexicographic in (a, b), then by the
pair of copies (alpha, beta) row-major.  The associator and braiding in this
layout are determined by small tables (one per triple or pair of simples) that
are extracted from the concrete Kronecker model with projectives stripped.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .cyclic_rep import (
    CyclicRep,
    FpMatrix,
    Splitting,
    check_prime,
    colspace,
    inverse,
    jordan_block,
    matmul,
    nullspace,
    rank,
    rref_array,
    strip_projectives,
)

DENSE_LIMIT = 250_000


# ---------------------------------------------------------------------------
# fusion rule


def fusion_channels(p: int, i: int, j: int) -> tuple[int, ...]:
    if not (1 <= i <= p - 1 and 1 <= j <= p - 1):
        raise ValueError(f"simple index out of range for p={p}: ({i}, {j})")
    top = min(i, j, p - i, p - j)
    return tuple(abs(j - i) + 2 * k - 1 for k in range(1, top + 1))


def fusion(p: int, i: int, j: int) -> tuple[int, ...]:
    out = [0] * (p - 1)
    for k in fusion_channels(p, i, j):
        out[k - 1] += 1
    return tuple(out)


def fusion_table(p: int) -> list[list[tuple[int, ...]]]:
    check_prime(p)
    return [[fusion(p, i, j) for j in range(1, p)] for i in range(1, p)]


def fusion_product(p: int, m1: Sequence[int], m2: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (p - 1)
    for i in range(1, p):
        if not m1[i - 1]:
            continue
        for j in range(1, p):
            if not m2[j - 1]:
                continue
            for k in fusion_channels(p, i, j):
                out[k - 1] += m1[i - 1] * m2[j - 1]
    return tuple(out)


# ---------------------------------------------------------------------------
# objects


@dataclass(frozen=True)
class VerObject:
    p: int
    mult: tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(int(x) for x in self.mult)
        if len(m) != self.p - 1 or any(x < 0 for x in m):
            raise ValueError(f"multiplicity vector must have {self.p - 1} nonnegative entries")
        object.__setattr__(self, "mult", m)

    @property
    def length(self) -> int:
        return sum(self.mult)

    @property
    def dim(self) -> int:
        return sum((i + 1) * m for i, m in enumerate(self.mult))

    @property
    def cat_dim(self) -> int:
        return self.dim % self.p

    @property
    def is_zero(self) -> bool:
        return self.length == 0

    @property
    def trivial_part(self) -> int:
        return self.mult[0]

    def labels(self) -> list[int]:
        return [i + 1 for i, m in enumerate(self.mult) for _ in range(m)]

    def rep_offsets(self) -> list[list[int]]:
        out, acc = [], 0
        for i, m in enumerate(self.mult):
            out.append([acc + c * (i + 1) for c in range(m)])
            acc += m * (i + 1)
        return out

    @property
    def rep(self) -> CyclicRep:
        return CyclicRep.from_blocks(self.p, self.labels())

    @property
    def split(self) -> Splitting:
        eye = np.eye(self.dim, dtype=np.int64)
        return Splitting(self.p, tuple(self.labels()), eye, eye.copy())

    def to_json(self) -> dict:
        return {"p": self.p, "mult": list(self.mult)}

    @classmethod
    def from_json(cls, obj: dict) -> "VerObject":
        return cls(int(obj["p"]), tuple(obj["mult"]))

    def __str__(self) -> str:
        parts = [f"{m}L{i + 1}" if m > 1 else f"L{i + 1}" for i, m in enumerate(self.mult) if m]
        return " + ".join(parts) if parts else "0"


def simple(p: int, i: int) -> VerObject:
    m = [0] * (p - 1)
    m[i - 1] = 1
    return VerObject(p, tuple(m))


def unit(p: int) -> VerObject:
    return simple(p, 1)


def zero_object(p: int) -> VerObject:
    return VerObject(p, (0,) * (p - 1))


def trivial_object(p: int, n: int) -> VerObject:
    """n copies of the unit: an ordinary n-dimensional vector space."""
    return VerObject(p, (n,) + (0,) * (p - 2))


def from_labels(p: int, labels: Iterable[int]) -> VerObject:
    m = [0] * (p - 1)
    for i in labels:
        m[i - 1] += 1
    return VerObject(p, tuple(m))


# ---------------------------------------------------------------------------
# block matrix helpers (dense numpy or scipy.sparse, entries mod p)


def _zeros(r: int, c: int):
    return np.zeros((r, c), dtype=np.int64)


def _mod(a, p: int):
    if sp.issparse(a):
        a = a.tocsr()
        a.data %= p
        a.eliminate_zeros()
        return _normalize(a)
    return np.asarray(a, dtype=np.int64) % p


def _normalize(a):
    if sp.issparse(a) and a.shape[0] * a.shape[1] <= DENSE_LIMIT:
        return a.toarray().astype(np.int64)
    return a


def dense(a) -> np.ndarray:
    return a.toarray().astype(np.int64) if sp.issparse(a) else a


def _mm(a, b, p: int):
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return _zeros(a.shape[0], b.shape[1])
    if not sp.issparse(a) and not sp.issparse(b):
        return matmul(a, b, p)
    if a.shape[0] * b.shape[1] > DENSE_LIMIT:
        # keep large products sparse instead of densifying through the dense factor
        a, b = sp.csr_matrix(a), sp.csr_matrix(b)
    out = a @ b
    if sp.issparse(out):
        return _mod(out, p)
    return np.asarray(out, dtype=np.int64) % p


def _add(a, b, p: int, sign: int = 1):
    if sp.issparse(a) or sp.issparse(b):
        out = sp.csr_matrix(a) + sign * sp.csr_matrix(b)
        return _mod(out, p)
    return (a + sign * b) % p


def _is_zero(a) -> bool:
    if sp.issparse(a):
        return a.nnz == 0
    return not a.any()


def _kron(a, b):
    if sp.issparse(a) or sp.issparse(b) or a.shape[0] * b.shape[0] * a.shape[1] * b.shape[1] > DENSE_LIMIT:
        return sp.kron(sp.csr_matrix(a), sp.csr_matrix(b), format="csr")
    return np.kron(a, b)


def _assemble(rows: int, cols: int, pieces: list, p: int):
    """Place blocks (row offset, col offset, matrix) into a rows x cols matrix."""
    if rows * cols <= DENSE_LIMIT:
        out = _zeros(rows, cols)
        for r0, c0, m in pieces:
            out[r0 : r0 + m.shape[0], c0 : c0 + m.shape[1]] = dense(m)
        return out % p
    rr, cc, dd = [], [], []
    for r0, c0, m in pieces:
        coo = sp.coo_matrix(m)
        rr.append(coo.row + r0)
        cc.append(coo.col + c0)
        dd.append(coo.data)
    if not rr:
        return sp.csr_matrix((rows, cols), dtype=np.int64)
    out = sp.csr_matrix(
        (np.concatenate(dd).astype(np.int64), (np.concatenate(rr), np.concatenate(cc))), shape=(rows, cols)
    )
    return _mod(out, p)


def _coo(rows: int, cols: int, r: np.ndarray, c: np.ndarray, d: np.ndarray, p: int):
    if rows * cols <= DENSE_LIMIT:
        out = _zeros(rows, cols)
        np.add.at(out, (r, c), d)
        return out % p
    return _mod(sp.csr_matrix((d.astype(np.int64), (r, c)), shape=(rows, cols)), p)


def _identity_block(n: int):
    if n * n <= DENSE_LIMIT:
        return np.eye(n, dtype=np.int64)
    return sp.identity(n, dtype=np.int64, format="csr")


# ---------------------------------------------------------------------------
# morphisms


class VerMorphism:
    """A morphism of Ver_p, stored through its isotypic blocks."""

    __slots__ = ("dom", "cod", "blocks")

    def __init__(self, dom: VerObject, cod: VerObject, blocks: Sequence):
        if dom.p != cod.p:
            raise ValueError("domain and codomain live over different primes")
        p = dom.p
        if len(blocks) != p - 1:
            raise ValueError("need one block per simple type")
        fixed = []
        for k, b in enumerate(blocks):
            shape = (cod.mult[k], dom.mult[k])
            if b is None:
                b = _zeros(*shape)
            if tuple(b.shape) != shape:
                raise ValueError(f"block {k + 1} has shape {b.shape}, expected {shape}")
            fixed.append(_mod(b, p) if not sp.issparse(b) else _normalize(b))
        self.dom = dom
        self.cod = cod
        self.blocks = tuple(fixed)

    @classmethod
    def _trusted(cls, dom: VerObject, cod: VerObject, blocks: Sequence) -> "VerMorphism":
        """Skip validation for blocks that are already reduced and correctly shaped."""
        out = cls.__new__(cls)
        out.dom, out.cod, out.blocks = dom, cod, tuple(blocks)
        return out

    @property
    def p(self) -> int:
        return self.dom.p

    def block(self, k: int):
        return self.blocks[k - 1]

    def __matmul__(self, other: "VerMorphism") -> "VerMorphism":
        if other.cod != self.dom:
            raise ValueError(f"cannot compose: {other.cod} != {self.dom}")
        p = self.p
        return VerMorphism._trusted(other.dom, self.cod, [_mm(a, b, p) for a, b in zip(self.blocks, other.blocks)])

    def _check_parallel(self, other: "VerMorphism") -> None:
        if self.dom != other.dom or self.cod != other.cod:
            raise ValueError("morphisms are not parallel")

    def __add__(self, other: "VerMorphism") -> "VerMorphism":
        self._check_parallel(other)
        return VerMorphism._trusted(self.dom, self.cod, [_add(a, b, self.p) for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "VerMorphism") -> "VerMorphism":
        self._check_parallel(other)
        return VerMorphism._trusted(self.dom, self.cod, [_add(a, b, self.p, -1) for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self) -> "VerMorphism":
        return self.scale(-1)

    def scale(self, c: int) -> "VerMorphism":
        return VerMorphism(self.dom, self.cod, [_mod(b * (c % self.p), self.p) for b in self.blocks])

    def __rmul__(self, c: int) -> "VerMorphism":
        return self.scale(int(c))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VerMorphism):
            return NotImplemented
        if self.dom != other.dom or self.cod != other.cod:
            return False
        return all(_is_zero(_add(a, b, self.p, -1)) for a, b in zip(self.blocks, other.blocks))

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return all(_is_zero(b) for b in self.blocks)

    def ranks(self) -> tuple[int, ...]:
        return tuple(rank(dense(b), self.p) if min(b.shape) else 0 for b in self.blocks)

    def is_iso(self) -> bool:
        return self.dom == self.cod and self.ranks() == self.dom.mult or (
            self.dom.mult == self.cod.mult and self.ranks() == self.dom.mult
        )

    def is_mono(self) -> bool:
        return self.ranks() == self.dom.mult

    def is_epi(self) -> bool:
        return self.ranks() == self.cod.mult

    def inverse(self) -> "VerMorphism":
        if not self.is_iso():
            raise ValueError("morphism is not invertible")
        return VerMorphism(self.cod, self.dom, [inverse(dense(b), self.p) if b.shape[0] else b for b in self.blocks])

    def dense_blocks(self) -> list[np.ndarray]:
        return [dense(b) for b in self.blocks]

    def first_difference(self, other: "VerMorphism") -> tuple[int, int, int] | None:
        """(type, row, col) of the first differing structure constant, or None."""
        for k, (a, b) in enumerate(zip(self.blocks, other.blocks)):
            diff = dense(_add(a, b, self.p, -1))
            nz = np.argwhere(diff)
            if nz.size:
                return (k + 1, int(nz[0][0]), int(nz[0][1]))
        return None

    @property
    def mat(self) -> FpMatrix:
        """Canonical representative: scalar multiples of the identity between equal blocks."""
        p = self.p
        out = _zeros(self.cod.dim, self.dom.dim)
        co, do = self.cod.rep_offsets(), self.dom.rep_offsets()
        for k, b in enumerate(self.blocks):
            size = k + 1
            bd = dense(b)
            for t, s in zip(*np.nonzero(bd)):
                r0, c0 = co[k][t], do[k][s]
                out[r0 : r0 + size, c0 : c0 + size] = bd[t, s] * np.eye(size, dtype=np.int64)
        return FpMatrix(p, out)

    @classmethod
    def from_rep(cls, dom: VerObject, cod: VerObject, m: np.ndarray) -> "VerMorphism":
        return cls(dom, cod, block_coeffs(dom, cod, m))

    def to_json(self) -> dict:
        return {"domain": self.dom.to_json(), "codomain": self.cod.to_json(), "mat": self.mat.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "VerMorphism":
        dom = VerObject.from_json(obj["domain"])
        cod = VerObject.from_json(obj["codomain"])
        return cls.from_rep(dom, cod, FpMatrix.from_json(obj["mat"]).data)

    def __repr__(self) -> str:
        return f"VerMorphism({self.dom} -> {self.cod})"


def block_coeffs(dom: VerObject, cod: VerObject, m: np.ndarray) -> list[np.ndarray]:
    """Isotypic blocks of an equivariant matrix between standard representatives."""
    co, do = cod.rep_offsets(), dom.rep_offsets()
    m = np.asarray(m) % dom.p
    out = []
    for k in range(dom.p - 1):
        if co[k] and do[k]:
            out.append(m[np.ix_(co[k], do[k])].astype(np.int64))
        else:
            out.append(_zeros(len(co[k]), len(do[k])))
    return out


def identity(x: VerObject) -> VerMorphism:
    return VerMorphism(x, x, [_identity_block(m) for m in x.mult])


def zero_map(x: VerObject, y: VerObject) -> VerMorphism:
    return VerMorphism(x, y, [None] * (x.p - 1))


def morphism(dom: VerObject, cod: VerObject, blocks: dict[int, Sequence]) -> VerMorphism:
    """Convenience constructor from {type: nested list} (missing types are zero)."""
    out = []
    for k in range(1, dom.p):
        if k in blocks:
            out.append(np.array(blocks[k], dtype=np.int64).reshape(cod.mult[k - 1], dom.mult[k - 1]))
        else:
            out.append(None)
    return VerMorphism(dom, cod, out)


# ---------------------------------------------------------------------------
# tensor layout


class Layout:
    """Channel layout of X (x) Y for each output type."""

    __slots__ = ("totals", "entries", "offset")

    def __init__(self, p: int, mx: tuple[int, ...], my: tuple[int, ...]):
        entries: list[list[tuple[int, int, int, int]]] = [[] for _ in range(p - 1)]
        totals = [0] * (p - 1)
        offset: list[dict[tuple[int, int], int]] = [dict() for _ in range(p - 1)]
        for a in range(1, p):
            for b in range(1, p):
                for d in fusion_channels(p, a, b):
                    size = mx[a - 1] * my[b - 1]
                    offset[d - 1][(a, b)] = totals[d - 1]
                    entries[d - 1].append((a, b, totals[d - 1], size))
                    totals[d - 1] += size
        self.totals = tuple(totals)
        self.entries = entries
        self.offset = offset


@lru_cache(maxsize=None)
def layout(p: int, mx: tuple[int, ...], my: tuple[int, ...]) -> Layout:
    return Layout(p, mx, my)


def tensor_obj(x: VerObject, y: VerObject) -> VerObject:
    if x.p != y.p:
        raise ValueError("objects over different primes")
    return VerObject(x.p, layout(x.p, x.mult, y.mult).totals)


def tensor(f, g):
    """Tensor product of two objects or of two morphisms."""
    if isinstance(f, VerObject):
        return tensor_obj(f, g)
    p = f.p
    ld = layout(p, f.dom.mult, g.dom.mult)
    lc = layout(p, f.cod.mult, g.cod.mult)
    blocks = []
    for d in range(p - 1):
        pieces = []
        for a, b, off_d, size_d in ld.entries[d]:
            off_c = lc.offset[d][(a, b)]
            fa, gb = f.blocks[a - 1], g.blocks[b - 1]
            if size_d and fa.shape[0] * gb.shape[0]:
                pieces.append((off_c, off_d, _kron(fa, gb)))
        blocks.append(_assemble(lc.totals[d], ld.totals[d], pieces, p))
    return VerMorphism(tensor_obj(f.dom, g.dom), tensor_obj(f.cod, g.cod), blocks)


# ---------------------------------------------------------------------------
# representative-level data: splittings of L_a (x) L_b and of X (x) Y


def kronecker_fusion(p: int, i: int, j: int) -> tuple[int, ...]:
    """Multiplicities in J_i (x) J_j after discarding the size-p blocks, from the Jordan form."""
    from .cyclic_rep import jordan_profile

    r = CyclicRep(p, np.kron(jordan_block(p, i), jordan_block(p, j)) % p)
    return jordan_profile(r).m[: p - 1]


@lru_cache(maxsize=None)
def pair_splitting(p: int, a: int, b: int) -> Splitting:
    """Decomposition of J_a (x) J_b (Kronecker basis) into the fusion channels, free part dropped."""
    r = CyclicRep(p, np.kron(jordan_block(p, a), jordan_block(p, b)) % p)
    _, split = strip_projectives(r)
    if split.sizes != fusion_channels(p, a, b):
        raise AssertionError(f"Kronecker decomposition of L{a}(x)L{b} disagrees with the fusion rule: {split.sizes}")
    return split


def tensor_splitting(x: VerObject, y: VerObject) -> tuple[np.ndarray, np.ndarray]:
    """(iota, pi) between rep(X (x) Y) and the Kronecker product rep(X) (x) rep(Y)."""
    p = x.p
    lay = layout(p, x.mult, y.mult)
    xy = tensor_obj(x, y)
    dim_y = y.dim
    big = x.dim * y.dim
    iota = _zeros(big, xy.dim)
    pi = _zeros(xy.dim, big)
    xo, yo, zo = x.rep_offsets(), y.rep_offsets(), xy.rep_offsets()
    for d in range(1, p):
        for a, b, off, size in lay.entries[d - 1]:
            if not size:
                continue
            split = pair_splitting(p, a, b)
            ch = fusion_channels(p, a, b).index(d)
            inc = split.inclusion(ch)
            proj = split.projection(ch)
            ii, jj = np.divmod(np.arange(a * b), b)
            for alpha in range(x.mult[a - 1]):
                for beta in range(y.mult[b - 1]):
                    rows = (xo[a - 1][alpha] + ii) * dim_y + yo[b - 1][beta] + jj
                    target = zo[d - 1][off + alpha * y.mult[b - 1] + beta]
                    iota[rows, target : target + d] = inc
                    pi[target : target + d, rows] = proj
    return iota, pi


def rep_swap(dx: int, dy: int) -> np.ndarray:
    out = _zeros(dx * dy, dx * dy)
    i, j = np.divmod(np.arange(dx * dy), dy)
    out[j * dx + i, i * dy + j] = 1
    return out


def rep_associator(x: VerObject, y: VerObject, z: VerObject) -> np.ndarray:
    p = x.p
    xy, yz = tensor_obj(x, y), tensor_obj(y, z)
    i1, _ = tensor_splitting(xy, z)
    i2 = np.kron(tensor_splitting(x, y)[0], np.eye(z.dim, dtype=np.int64))
    p1 = np.kron(np.eye(x.dim, dtype=np.int64), tensor_splitting(y, z)[1])
    _, p2 = tensor_splitting(x, yz)
    return matmul(matmul(p2, p1, p), matmul(i2, i1, p), p)


def rep_braiding(x: VerObject, y: VerObject) -> np.ndarray:
    p = x.p
    i1, _ = tensor_splitting(x, y)
    _, p2 = tensor_splitting(y, x)
    return matmul(p2, matmul(rep_swap(x.dim, y.dim), i1, p), p)


# ---------------------------------------------------------------------------
# skeletal structure constants


@lru_cache(maxsize=None)
def associator_table(p: int, a: int, b: int, c: int) -> dict[int, tuple[tuple[int, ...], tuple[int, ...], np.ndarray, np.ndarray]]:
    """For each d: (k channels of (ab)c, l channels of a(bc), matrix l x k, inverse)."""
    la, lb, lc = simple(p, a), simple(p, b), simple(p, c)
    m = rep_associator(la, lb, lc)
    dom = tensor_obj(tensor_obj(la, lb), lc)
    cod = tensor_obj(la, tensor_obj(lb, lc))
    blocks = block_coeffs(dom, cod, m)
    out = {}
    for d in range(1, p):
        ks = tuple(k for k in fusion_channels(p, a, b) if d in fusion_channels(p, k, c))
        ls = tuple(l for l in fusion_channels(p, b, c) if d in fusion_channels(p, a, l))
        if not ks:
            continue
        mat = blocks[d - 1]
        out[d] = (ks, ls, mat, inverse(mat, p))
    return out


@lru_cache(maxsize=None)
def braiding_table(p: int, a: int, b: int) -> dict[int, int]:
    la, lb = simple(p, a), simple(p, b)
    blocks = block_coeffs(tensor_obj(la, lb), tensor_obj(lb, la), rep_braiding(la, lb))
    return {d: int(blocks[d - 1][0, 0]) for d in fusion_channels(p, a, b)}


@lru_cache(maxsize=None)
def coev_scalar(p: int, a: int) -> int:
    """Coefficient making the snake identity hold when ev on L_a has coefficient 1."""
    ks, ls, mat, _ = associator_table(p, a, a, a)[a]
    return pow(int(mat[ls.index(1), ks.index(1)]), p - 2, p)


# ---------------------------------------------------------------------------
# associator, braiding, rigidity on arbitrary objects


def _associator_blocks(x: VerObject, y: VerObject, z: VerObject, inverse_dir: bool) -> VerMorphism:
    p = x.p
    xy, yz = tensor_obj(x, y), tensor_obj(y, z)
    l_xy, l_yz = layout(p, x.mult, y.mult), layout(p, y.mult, z.mult)
    l_left, l_right = layout(p, xy.mult, z.mult), layout(p, x.mult, yz.mult)
    left, right = tensor_obj(xy, z), tensor_obj(x, yz)
    blocks = []
    for d in range(1, p):
        rr, cc, dd = [], [], []
        for k, c, off1, size1 in l_left.entries[d - 1]:
            if not size1:
                continue
            mc = z.mult[c - 1]
            for a, b, offab, sizeab in l_xy.entries[k - 1]:
                if not sizeab:
                    continue
                ma, mb = x.mult[a - 1], y.mult[b - 1]
                ks, ls, mat, matinv = associator_table(p, a, b, c)[d]
                kidx = ks.index(k)
                al, be, ga = np.meshgrid(np.arange(ma), np.arange(mb), np.arange(mc), indexing="ij")
                al, be, ga = al.ravel(), be.ravel(), ga.ravel()
                src = off1 + (offab + al * mb + be) * mc + ga
                for lidx, l in enumerate(ls):
                    coef = int(matinv[kidx, lidx]) if inverse_dir else int(mat[lidx, kidx])
                    if coef == 0:
                        continue
                    off2 = l_right.offset[d - 1][(a, l)]
                    offbc = l_yz.offset[l - 1][(b, c)]
                    dst = off2 + al * yz.mult[l - 1] + offbc + be * mc + ga
                    rr.append(dst)
                    cc.append(src)
                    dd.append(np.full(src.shape, coef, dtype=np.int64))
        n_left, n_right = left.mult[d - 1], right.mult[d - 1]
        if rr:
            r, c_, v = np.concatenate(rr), np.concatenate(cc), np.concatenate(dd)
        else:
            r = c_ = v = np.zeros(0, dtype=np.int64)
        if inverse_dir:
            blocks.append(_coo(n_left, n_right, c_, r, v, p))
        else:
            blocks.append(_coo(n_right, n_left, r, c_, v, p))
    if inverse_dir:
        return VerMorphism(right, left, blocks)
    return VerMorphism(left, right, blocks)


@lru_cache(maxsize=4096)
def _associator_cached(p: int, mx, my, mz, inverse_dir: bool) -> VerMorphism:
    return _associator_blocks(VerObject(p, mx), VerObject(p, my), VerObject(p, mz), inverse_dir)


def associator(x: VerObject, y: VerObject, z: VerObject) -> VerMorphism:
    """(X (x) Y) (x) Z -> X (x) (Y (x) Z)."""
    return _associator_cached(x.p, x.mult, y.mult, z.mult, False)


def associator_inv(x: VerObject, y: VerObject, z: VerObject) -> VerMorphism:
    """X (x) (Y (x) Z) -> (X (x) Y) (x) Z."""
    return _associator_cached(x.p, x.mult, y.mult, z.mult, True)


@lru_cache(maxsize=4096)
def _braiding_cached(p: int, mx, my) -> VerMorphism:
    x, y = VerObject(p, mx), VerObject(p, my)
    lxy, lyx = layout(p, mx, my), layout(p, my, mx)
    blocks = []
    for d in range(1, p):
        rr, cc, dd = [], [], []
        for a, b, off, size in lxy.entries[d - 1]:
            if not size:
                continue
            ma, mb = mx[a - 1], my[b - 1]
            al, be = np.divmod(np.arange(ma * mb), mb)
            coef = braiding_table(p, a, b)[d]
            rr.append(lyx.offset[d - 1][(b, a)] + be * ma + al)
            cc.append(off + al * mb + be)
            dd.append(np.full(al.shape, coef, dtype=np.int64))
        n = lxy.totals[d - 1]
        if rr:
            blocks.append(_coo(n, n, np.concatenate(rr), np.concatenate(cc), np.concatenate(dd), p))
        else:
            blocks.append(_zeros(n, n))
    return VerMorphism(tensor_obj(x, y), tensor_obj(y, x), blocks)


def braiding(x: VerObject, y: VerObject) -> VerMorphism:
    """The symmetric braiding X (x) Y -> Y (x) X."""
    return _braiding_cached(x.p, x.mult, y.mult)


def dual(x: VerObject) -> VerObject:
    """Every L_i is self-dual; the dual is identified with X through ev below."""
    return x


def ev(x: VerObject) -> VerMorphism:
    """Evaluation X* (x) X -> 1."""
    p = x.p
    lay = layout(p, x.mult, x.mult)
    row = _zeros(1, lay.totals[0])
    for a in range(1, p):
        m = x.mult[a - 1]
        if m:
            off = lay.offset[0][(a, a)]
            row[0, off + np.arange(m) * (m + 1)] = 1
    blocks = [row] + [_zeros(0, n) for n in lay.totals[1:]]
    return VerMorphism(tensor_obj(x, x), unit(p), blocks)


def coev(x: VerObject) -> VerMorphism:
    """Coevaluation 1 -> X (x) X*."""
    p = x.p
    lay = layout(p, x.mult, x.mult)
    col = _zeros(lay.totals[0], 1)
    for a in range(1, p):
        m = x.mult[a - 1]
        if m:
            off = lay.offset[0][(a, a)]
            col[off + np.arange(m) * (m + 1), 0] = coev_scalar(p, a)
    blocks = [col] + [_zeros(n, 0) for n in lay.totals[1:]]
    return VerMorphism(unit(p), tensor_obj(x, x), blocks)


def trace(f: VerMorphism) -> int:
    """Categorical trace of an endomorphism."""
    x = f.dom
    if f.cod != x:
        raise ValueError("trace needs an endomorphism")
    if x.is_zero:
        return 0
    t = ev(x) @ braiding(x, x) @ tensor(f, identity(x)) @ coev(x)
    return int(dense(t.blocks[0])[0, 0]) % x.p


def categorical_dim(x: VerObject) -> int:
    return trace(identity(x))


# ---------------------------------------------------------------------------
# direct sums


@dataclass
class DirectSum:
    obj: VerObject
    inj: list[VerMorphism]
    proj: list[VerMorphism]


def direct_sum(*objs: VerObject) -> DirectSum:
    p = objs[0].p
    total = VerObject(p, tuple(sum(o.mult[k] for o in objs) for k in range(p - 1)))
    inj, proj = [], []
    offs = [0] * (p - 1)
    for o in objs:
        ib, pb = [], []
        for k in range(p - 1):
            n, m = total.mult[k], o.mult[k]
            r, c = offs[k] + np.arange(m), np.arange(m)
            one = np.ones(m, dtype=np.int64)
            ib.append(_coo(n, m, r, c, one, p))
            pb.append(_coo(m, n, c, r, one, p))
            offs[k] += m
        inj.append(VerMorphism._trusted(o, total, ib))
        proj.append(VerMorphism._trusted(total, o, pb))
    return DirectSum(total, inj, proj)


def _cat(blocks: list, axis: int, shape: tuple[int, int]):
    blocks = [b for b in blocks if b.shape[axis]]
    if not blocks:
        return _zeros(*shape)
    if any(sp.issparse(b) for b in blocks) or shape[0] * shape[1] > DENSE_LIMIT:
        stack = sp.hstack if axis == 1 else sp.vstack
        return _normalize(stack([sp.csr_matrix(b) for b in blocks], format="csr"))
    return np.concatenate(blocks, axis=axis)


def hstack(maps: Sequence[VerMorphism]) -> VerMorphism:
    """[f_1 ... f_n] : X_1 + ... + X_n -> Y."""
    ds = direct_sum(*[f.dom for f in maps])
    cod = maps[0].cod
    blocks = [
        _cat([f.blocks[k] for f in maps], 1, (cod.mult[k], ds.obj.mult[k])) for k in range(cod.p - 1)
    ]
    return VerMorphism._trusted(ds.obj, cod, blocks)


def vstack(maps: Sequence[VerMorphism]) -> VerMorphism:
    """(f_1; ...; f_n) : X -> Y_1 + ... + Y_n."""
    ds = direct_sum(*[f.cod for f in maps])
    dom = maps[0].dom
    blocks = [
        _cat([f.blocks[k] for f in maps], 0, (ds.obj.mult[k], dom.mult[k])) for k in range(dom.p - 1)
    ]
    return VerMorphism._trusted(dom, ds.obj, blocks)


def block_matrix(srcs: Sequence[VerObject], tgts: Sequence[VerObject], entries: dict) -> VerMorphism:
    """Morphism (+)srcs -> (+)tgts from {(target index, source index): morphism}."""
    ds, dt = direct_sum(*srcs), direct_sum(*tgts)
    acc = zero_map(ds.obj, dt.obj)
    for (t, s), f in entries.items():
        acc = acc + dt.inj[t] @ f @ ds.proj[s]
    return acc


# ---------------------------------------------------------------------------
# images, kernels, cokernels (multiplicity-space ranks)


def _image_basis(b, p: int) -> tuple[np.ndarray, list[int]]:
    """Canonical column basis B of the image (B^T in rref) and its pivot rows."""
    bd = dense(b)
    if bd.shape[1] == 0 or bd.shape[0] == 0:
        return _zeros(bd.shape[0], 0), []
    r, piv = rref_array(bd.T, p)
    return r[: len(piv)].T.copy(), piv


def ver_image(f: VerMorphism) -> tuple[VerObject, VerMorphism, VerMorphism]:
    """(Im f, inclusion Im f -> cod, corestriction dom -> Im f)."""
    p = f.p
    incl, core, mult = [], [], []
    for b in f.blocks:
        basis, piv = _image_basis(b, p)
        incl.append(basis)
        core.append(dense(b)[piv, :] if piv else _zeros(0, b.shape[1]))
        mult.append(basis.shape[1])
    im = VerObject(p, tuple(mult))
    return im, VerMorphism(im, f.cod, incl), VerMorphism(f.dom, im, core)


def ver_kernel(f: VerMorphism) -> tuple[VerObject, VerMorphism]:
    p = f.p
    blocks, mult = [], []
    for b in f.blocks:
        if b.shape[1] == 0:
            ker = _zeros(0, 0)
        elif b.shape[0] == 0:
            ker = np.eye(b.shape[1], dtype=np.int64)
        else:
            ker = nullspace(dense(b), p)
        blocks.append(ker)
        mult.append(ker.shape[1])
    k = VerObject(p, tuple(mult))
    return k, VerMorphism(k, f.dom, blocks)


def ver_cokernel(f: VerMorphism) -> tuple[VerObject, VerMorphism, VerMorphism]:
    """(Coker f, projection cod -> Coker f, section Coker f -> cod)."""
    p = f.p
    projs, secs, mult = [], [], []
    for b in f.blocks:
        n = b.shape[0]
        basis, piv = _image_basis(b, p)
        rest = [i for i in range(n) if i not in set(piv)]
        proj = _zeros(len(rest), n)
        proj[np.arange(len(rest)), rest] = 1
        if piv and rest:
            proj[:, piv] = (-basis[rest, :]) % p
        sec = _zeros(n, len(rest))
        sec[rest, np.arange(len(rest))] = 1
        projs.append(proj)
        secs.append(sec)
        mult.append(len(rest))
    q = VerObject(p, tuple(mult))
    return q, VerMorphism(f.cod, q, projs), VerMorphism(q, f.cod, secs)


def image_mult(f: VerMorphism) -> tuple[int, ...]:
    return f.ranks()


def kernel_mult(f: VerMorphism) -> tuple[int, ...]:
    return tuple(m - r for m, r in zip(f.dom.mult, f.ranks()))


def cokernel_mult(f: VerMorphism) -> tuple[int, ...]:
    return tuple(m - r for m, r in zip(f.cod.mult, f.ranks()))


# subobjects are represented by monomorphisms into the ambient object


def sub_contains(big: VerMorphism, small: VerMorphism) -> bool:
    p = big.p
    for b, s in zip(big.blocks, small.blocks):
        if s.shape[1] == 0:
            continue
        bd, sd = dense(b), dense(s)
        if rank(np.concatenate([bd, sd], axis=1), p) != rank(bd, p):
            return False
    return True


def map_lands_in(f: VerMorphism, incl: VerMorphism) -> bool:
    return sub_contains(incl, f)


def sub_equal(a: VerMorphism, b: VerMorphism) -> bool:
    return a.ranks() == b.ranks() and sub_contains(a, b)


def sub_sum(*incls: VerMorphism) -> VerMorphism:
    return ver_image(hstack(list(incls)))[1]


def sub_intersection(a: VerMorphism, b: VerMorphism) -> VerMorphism:
    k, ki = ver_kernel(hstack([a, -b]))
    ds = direct_sum(a.dom, b.dom)
    return ver_image(a @ ds.proj[0] @ ki)[1]


def whole(x: VerObject) -> VerMorphism:
    return identity(x)


def corestrict(f: VerMorphism, incl: VerMorphism) -> VerMorphism:
    """The map dom f -> S when f factors through the subobject incl: S -> cod."""
    if not map_lands_in(f, incl):
        raise ValueError("morphism does not land in the subobject")
    return left_inverse(incl) @ f


def left_inverse(incl: VerMorphism) -> VerMorphism:
    """A retraction of a monomorphism (first-pivot rows)."""
    from .cyclic_rep import left_inverse as _li

    p = incl.p
    blocks = [_li(dense(b), p) if b.shape[1] else _zeros(0, b.shape[0]) for b in incl.blocks]
    return VerMorphism(incl.cod, incl.dom, blocks)


def right_inverse(proj: VerMorphism) -> VerMorphism:
    from .cyclic_rep import right_inverse as _ri

    p = proj.p
    blocks = [_ri(dense(b), p) if b.shape[0] else _zeros(b.shape[1], 0) for b in proj.blocks]
    return VerMorphism(proj.cod, proj.dom, blocks)


def isotypic_inclusion(x: VerObject, types: Iterable[int]) -> VerMorphism:
    """Inclusion of the isotypic components of the given simple types."""
    keep = set(types)
    sub = VerObject(x.p, tuple(m if k + 1 in keep else 0 for k, m in enumerate(x.mult)))
    blocks = [np.eye(m, dtype=np.int64) if k + 1 in keep else _zeros(m, 0) for k, m in enumerate(x.mult)]
    return VerMorphism(sub, x, blocks)


def trivial_part(x: VerObject) -> VerMorphism:
    return isotypic_inclusion(x, [1])


def nontrivial_part(x: VerObject) -> VerMorphism:
    return isotypic_inclusion(x, range(2, x.p))


# ---------------------------------------------------------------------------
# tensor powers, permutations, symmetric and exterior powers


def tensor_power(x: VerObject, n: int) -> VerObject:
    """Right-nested X (x) (X (x) (... (x) X)); the empty power is the unit."""
    if n == 0:
        return unit(x.p)
    if n == 1:
        return x
    return tensor_obj(x, tensor_power(x, n - 1))


@lru_cache(maxsize=1024)
def _transposition_cached(p: int, mx: tuple[int, ...], n: int, t: int) -> VerMorphism:
    x = VerObject(p, mx)
    if t > 0:
        return tensor(identity(x), _transposition_cached(p, mx, n - 1, t - 1))
    if n == 2:
        return braiding(x, x)
    rest = tensor_power(x, n - 2)
    return associator(x, x, rest) @ tensor(braiding(x, x), identity(rest)) @ associator_inv(x, x, rest)


def transposition(x: VerObject, n: int, t: int) -> VerMorphism:
    """Swap tensor factors t and t+1 (0-based) of the n-th tensor power."""
    if not 0 <= t < n - 1:
        raise ValueError("transposition index out of range")
    return _transposition_cached(x.p, x.mult, n, t)


def permutation_action(x: VerObject, n: int, perm: Sequence[int]) -> VerMorphism:
    """Operator putting input factor perm[j] into output slot j."""
    cur = list(range(n))
    acc = identity(tensor_power(x, n))
    for i in range(n):
        j = cur.index(perm[i])
        while j > i:
            acc = transposition(x, n, j - 1) @ acc
            cur[j - 1], cur[j] = cur[j], cur[j - 1]
            j -= 1
    return acc


@dataclass
class PowerResult:
    obj: VerObject
    proj: VerMorphism
    section: VerMorphism


def _power_combined(x: VerObject, n: int, sign: int) -> PowerResult:
    p = x.p
    if n == 0:
        u = unit(p)
        return PowerResult(u, identity(u), identity(u))
    if n == 1:
        return PowerResult(x, identity(x), identity(x))
    ident = identity(tensor_power(x, n))
    rels = [ident + transposition(x, n, s).scale(sign) for s in range(n - 1)]
    q, proj, sec = ver_cokernel(hstack(rels))
    return PowerResult(q, proj, sec)


def _power_inductive(x: VerObject, n: int, sign: int, prev: PowerResult, prev2: PowerResult) -> PowerResult:
    """Quotient X (x) S^(n-1) by the images of x (x) y (x) r -/+ y (x) x (x) r."""
    # mu: X (x) S^(n-2) -> S^(n-1), the degree-raising product of the previous step
    mu = prev.proj @ tensor(identity(x), prev2.section)
    idx = identity(x)
    lift = tensor(idx, mu)
    rel = lift + (lift @ associator(x, x, prev2.obj) @ tensor(braiding(x, x), identity(prev2.obj))
                  @ associator_inv(x, x, prev2.obj)).scale(sign)
    q, qproj, qsec = ver_cokernel(rel)
    proj = qproj @ tensor(idx, prev.proj)
    sec = tensor(idx, prev.section) @ qsec
    return PowerResult(q, proj, sec)


def _power_chain(p: int, mx: tuple[int, ...], n: int, sign: int) -> PowerResult:
    cache = _sym_chain if sign < 0 else _ext_chain
    key = (p, mx)
    chain = cache.setdefault(key, [])
    x = VerObject(p, mx)
    while len(chain) <= n:
        k = len(chain)
        if k < 2:
            chain.append(_power_combined(x, k, sign))
        else:
            chain.append(_power_inductive(x, k, sign, chain[k - 1], chain[k - 2]))
    return chain[n]


_sym_chain: dict = {}
_ext_chain: dict = {}


def sym_power_combined(x: VerObject, n: int) -> PowerResult:
    """S^n(X) as the cokernel of the sum of (id - c_t) over all adjacent transpositions."""
    return _power_combined(x, n, -1)


def ext_power_combined(x: VerObject, n: int) -> PowerResult:
    return _power_combined(x, n, 1)


def sym_power_data(x: VerObject, n: int) -> PowerResult:
    """S^n(X) with its projection from and section into the n-th tensor power.

    Built degree by degree; agrees with sym_power_combined (checked in the tests).
    """
    return _power_chain(x.p, x.mult, n, -1)


def ext_power_data(x: VerObject, n: int) -> PowerResult:
    """Exterior power: the same construction with (id + c_t)."""
    return _power_chain(x.p, x.mult, n, 1)


def sym_power(x: VerObject, n: int) -> VerObject:
    return sym_power_data(x, n).obj


def ext_power(x: VerObject, n: int) -> VerObject:
    return ext_power_data(x, n).obj


def sym_top_degree(x: VerObject, limit: int | None = None) -> int:
    """Largest n with S^n(X) != 0 (requires X to have no trivial summand)."""
    if x.mult[0]:
        raise ValueError("S(X) is infinite when X contains the unit")
    limit = limit or x.p * max(1, x.length) + 1
    n = 0
    while n < limit:
        if sym_power(x, n + 1).is_zero:
            return n
        n += 1
    raise RuntimeError("symmetric powers did not vanish below the limit")


def nilpotence_degree(p: int, i: int) -> int:
    """Smallest N with S^N(L_i) = 0; S^(N-1)(L_i) != 0 is checked on the way."""
    if not 2 <= i <= p - 1:
        raise ValueError("need 2 <= i <= p-1")
    x = simple(p, i)
    n = 1
    while not sym_power(x, n).is_zero:
        n += 1
        if n > p + 1:
            raise RuntimeError("symmetric powers did not vanish")
    return n


def sym_power_rep_check(x: VerObject, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Coinvariants of S_n on the Kronecker power of rep(X), projectives stripped.

    Returns (representative-level multiplicities, Ver-level multiplicities) so the
    caller can compare them.
    """
    from .cyclic_rep import jordan_profile

    p = x.p
    u = x.rep.u
    dim = x.dim
    big = np.eye(1, dtype=np.int64)
    for _ in range(n):
        big = np.kron(big, u) % p
    size = dim**n
    rels = []
    idx = np.arange(size)
    digits = np.array(np.unravel_index(idx, (dim,) * n)) if n else np.zeros((0, size), dtype=np.int64)
    for t in range(n - 1):
        sw = digits.copy()
        sw[[t, t + 1]] = sw[[t + 1, t]]
        target = np.ravel_multi_index(tuple(sw), (dim,) * n)
        perm = _zeros(size, size)
        perm[target, idx] = 1
        rels.append((np.eye(size, dtype=np.int64) - perm) % p)
    if rels:
        w = colspace(np.concatenate(rels, axis=1), p)
    else:
        w = _zeros(size, 0)
    r, piv = (rref_array(w.T, p) if w.shape[1] else (None, []))
    rest = [i for i in range(size) if i not in set(piv)]
    proj = _zeros(len(rest), size)
    proj[np.arange(len(rest)), rest] = 1
    if piv and rest:
        proj[:, piv] = (-w[rest, :]) % p
    sec = _zeros(size, len(rest))
    sec[rest, np.arange(len(rest))] = 1
    uq = matmul(proj, matmul(big, sec, p), p)
    prof = jordan_profile(CyclicRep(p, uq)).m if len(rest) else (0,) * p
    return tuple(prof[: p - 1]), sym_power(x, n).mult
