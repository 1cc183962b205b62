"""Exact linear algebra over F_p and representations of the cyclic group Z/p.

Everything here works on integer numpy arrays reduced mod p.  Pivoting is
deterministic (first nonzero entry, columns left to right, rows top to bottom),
so every basis produced by this module is reproducible bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def check_prime(p: int) -> None:
    if not is_prime(p) or p < 5:
        raise ValueError(f"expected a prime p >= 5, got {p}")


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    inv.setflags(write=False)
    return inv


def inv_mod(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError("0 has no inverse mod p")
    return pow(x, p - 2, p)


# ---------------------------------------------------------------------------
# raw array routines (ndarray in, ndarray out)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product mod p.  Uses float BLAS whenever the exact result fits in 2^53."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if (p - 1) ** 2 * a.shape[1] < 2**52:
        out = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        return out % p
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


def rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    inv = inverse_table(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * inv[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref_array(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of {x : a x = 0}; one vector per free column."""
    rows, cols = a.shape
    r, piv = rref_array(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(piv):
            basis[pc, j] = (-r[i, f]) % p
    return basis


def colspace(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (as columns) of the column space: the nonzero rows of rref(a^T)."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    r, piv = rref_array(a.T, p)
    return r[: len(piv)].T.copy()


def pivot_columns(a: np.ndarray, p: int) -> list[int]:
    return rref_array(a, p)[1]


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """One solution x of a x = b (first-pivot choice, free variables zero)."""
    rows, cols = a.shape
    b2 = b.reshape(rows, -1)
    aug = np.concatenate([a % p, b2 % p], axis=1)
    r, piv = rref_array(aug, p)
    if any(c >= cols for c in piv):
        raise ValueError("inconsistent linear system")
    x = np.zeros((cols, b2.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, cols:]
    return x.reshape((cols,) + b.shape[1:]) if b.ndim == 1 else x


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref_array(aug, p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular mod p")
    return r[:, n:].copy()


def left_inverse(a: np.ndarray, p: int) -> np.ndarray:
    """l with l a = I for a of full column rank (deterministic pivot rows)."""
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, rows), dtype=np.int64)
    piv_rows = pivot_columns(a.T, p)
    if len(piv_rows) < cols:
        raise ValueError("matrix does not have full column rank")
    sub = a[piv_rows]
    out = np.zeros((cols, rows), dtype=np.int64)
    out[:, piv_rows] = inverse(sub, p)
    return out


def right_inverse(a: np.ndarray, p: int) -> np.ndarray:
    """s with a s = I for a of full row rank (first-pivot preimages)."""
    return left_inverse(a.T, p).T.copy()


def complement_basis(sub: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the column span of `sub` to F_p^n."""
    chosen: list[int] = []
    cur = sub % p
    r = rank(cur, p) if cur.size else 0
    for i in range(n):
        if r == n:
            break
        e = np.zeros((n, 1), dtype=np.int64)
        e[i, 0] = 1
        trial = np.concatenate([cur, e], axis=1)
        r2 = rank(trial, p)
        if r2 > r:
            chosen.append(i)
            cur, r = trial, r2
    out = np.zeros((n, len(chosen)), dtype=np.int64)
    for j, i in enumerate(chosen):
        out[i, j] = 1
    return out


def extend_independent(base: np.ndarray, candidates: np.ndarray, p: int) -> list[int]:
    """Greedy choice of candidate columns independent modulo span(base)."""
    cur = base % p
    r = rank(cur, p) if cur.size else 0
    picked = []
    for j in range(candidates.shape[1]):
        trial = np.concatenate([cur, candidates[:, j : j + 1]], axis=1)
        r2 = rank(trial, p)
        if r2 > r:
            picked.append(j)
            cur, r = trial, r2
    return picked


def batch_invertible(mats: np.ndarray, p: int) -> np.ndarray:
    """Vectorised invertibility test for a stack of square matrices mod p."""
    a = np.array(mats, dtype=np.int64) % p
    count, n, _ = a.shape
    ok = np.ones(count, dtype=bool)
    inv = inverse_table(p)
    idx = np.arange(count)
    for col in range(n):
        nz = a[:, col:, col] != 0
        ok &= nz.any(axis=1)
        piv = col + nz.argmax(axis=1)
        row_c = a[idx, col].copy()
        a[idx, col] = a[idx, piv]
        a[idx, piv] = row_c
        scale = inv[a[idx, col, col]]
        a[idx, col] = (a[idx, col] * scale[:, None]) % p
        factors = a[:, :, col].copy()
        factors[:, col] = 0
        a = (a - factors[:, :, None] * a[:, col][:, None, :]) % p
    return ok


# ---------------------------------------------------------------------------
# public matrix type


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """A matrix over F_p; entries are stored reduced into [0, p)."""

    p: int
    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("FpMatrix needs a 2-d array")
        arr %= self.p
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> list[int]:
        return [int(x) for x in self.data.ravel()]

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix(self.p, matmul(self.data, other.data, self.p))

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix(self.p, self.data + other.data)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix(self.p, self.data - other.data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )

    __hash__ = None  # type: ignore[assignment]

    def to_json(self) -> dict:
        return {"p": self.p, "rows": self.rows, "cols": self.cols, "entries": self.entries}

    @classmethod
    def from_json(cls, obj: dict) -> "FpMatrix":
        p, rows, cols = int(obj["p"]), int(obj["rows"]), int(obj["cols"])
        entries = list(obj["entries"])
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match the shape")
        if any(not 0 <= int(x) < p for x in entries):
            raise ValueError("entries must lie in [0, p)")
        return cls(p, np.array(entries, dtype=np.int64).reshape(rows, cols))


class RrefResult(NamedTuple):
    reduced: FpMatrix
    rank: int
    pivots: list[int]
    kernel: list[np.ndarray]


def rref(m: FpMatrix) -> RrefResult:
    r, piv = rref_array(m.data, m.p)
    ker = nullspace(m.data, m.p)
    return RrefResult(FpMatrix(m.p, r), len(piv), piv, [ker[:, j].copy() for j in range(ker.shape[1])])


# ---------------------------------------------------------------------------
# representations of Z/p


def jordan_block(p: int, n: int) -> np.ndarray:
    """Standard upper-triangular unipotent Jordan block of size n."""
    return np.eye(n, dtype=np.int64) + np.eye(n, k=1, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class CyclicRep:
    """A representation of Z/p over F_p, given by the action u of the generator."""

    p: int
    u: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.u, dtype=np.int64).reshape(len(self.u), -1) if len(self.u) else np.zeros((0, 0), dtype=np.int64)
        if arr.shape[0] != arr.shape[1]:
            raise ValueError("u must be square")
        arr %= self.p
        arr.setflags(write=False)
        object.__setattr__(self, "u", arr)

    @property
    def dim(self) -> int:
        return self.u.shape[0]

    @property
    def nilpotent(self) -> np.ndarray:
        return (self.u - np.eye(self.dim, dtype=np.int64)) % self.p

    def is_valid(self) -> bool:
        n = self.nilpotent
        acc = np.eye(self.dim, dtype=np.int64)
        for _ in range(self.p):
            acc = matmul(acc, n, self.p)
        return not acc.any()

    def validate(self) -> "CyclicRep":
        if not self.is_valid():
            raise ValueError("u^p != identity: not a representation of Z/p")
        return self

    @classmethod
    def from_blocks(cls, p: int, sizes: Sequence[int]) -> "CyclicRep":
        return cls(p, block_diag_int([jordan_block(p, s) for s in sizes]))

    @classmethod
    def regular(cls, p: int) -> "CyclicRep":
        perm = np.zeros((p, p), dtype=np.int64)
        for i in range(p):
            perm[(i + 1) % p, i] = 1
        return cls(p, perm)

    def __matmul__(self, other: "CyclicRep") -> "CyclicRep":
        return kron_rep(self, other)


def block_diag_int(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    m = sum(b.shape[1] for b in blocks)
    out = np.zeros((n, m), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def direct_sum_rep(*reps: CyclicRep) -> CyclicRep:
    p = reps[0].p
    return CyclicRep(p, block_diag_int([r.u for r in reps]))


def kron_rep(r1: CyclicRep, r2: CyclicRep) -> CyclicRep:
    return CyclicRep(r1.p, np.kron(r1.u, r2.u) % r1.p)


def dual_rep(r: CyclicRep) -> CyclicRep:
    if r.dim == 0:
        return r
    return CyclicRep(r.p, inverse(r.u, r.p).T)


@dataclass(frozen=True)
class JordanProfile:
    """m[k-1] = number of Jordan blocks of size k, for k = 1..p."""

    m: tuple[int, ...]

    @property
    def dim(self) -> int:
        return sum((k + 1) * x for k, x in enumerate(self.m))

    def __add__(self, other: "JordanProfile") -> "JordanProfile":
        return JordanProfile(tuple(a + b for a, b in zip(self.m, other.m)))


def jordan_profile(r: CyclicRep) -> JordanProfile:
    p, n = r.p, r.dim
    nil = r.nilpotent
    ranks = [n]
    acc = np.eye(n, dtype=np.int64)
    for _ in range(p + 1):
        acc = matmul(acc, nil, p)
        ranks.append(rank(acc, p))
    if ranks[p] != 0:
        raise ValueError("u^p != identity: not a representation of Z/p")
    m = tuple(ranks[k - 1] - 2 * ranks[k] + ranks[k + 1] for k in range(1, p + 1))
    return JordanProfile(m)


def hom_basis(r1: CyclicRep, r2: CyclicRep) -> list[np.ndarray]:
    """Basis of {X : u2 X = X u1}, X of shape dim2 x dim1 (row-major unknowns)."""
    p = r1.p
    d1, d2 = r1.dim, r2.dim
    if d1 == 0 or d2 == 0:
        return []
    system = (np.kron(r2.u, np.eye(d1, dtype=np.int64)) - np.kron(np.eye(d2, dtype=np.int64), r1.u.T)) % p
    ker = nullspace(system, p)
    return [ker[:, j].reshape(d2, d1).copy() for j in range(ker.shape[1])]


def trace_pairing(r1: CyclicRep, r2: CyclicRep) -> tuple[list[np.ndarray], list[np.ndarray], np.ndarray]:
    fs = hom_basis(r1, r2)
    gs = hom_basis(r2, r1)
    pair = np.zeros((len(fs), len(gs)), dtype=np.int64)
    for i, f in enumerate(fs):
        for j, g in enumerate(gs):
            pair[i, j] = int(np.trace(matmul(g, f, r1.p))) % r1.p
    return fs, gs, pair


def negligible_subspace(r1: CyclicRep, r2: CyclicRep) -> list[np.ndarray]:
    """Basis of the f in Hom(r1, r2) with trace(g f) = 0 for every g in Hom(r2, r1)."""
    p = r1.p
    fs, _, pair = trace_pairing(r1, r2)
    if not fs:
        return []
    if pair.shape[1] == 0:
        return [f.copy() for f in fs]
    coeffs = nullspace(pair.T, p)
    out = []
    for j in range(coeffs.shape[1]):
        acc = np.zeros_like(fs[0])
        for i, f in enumerate(fs):
            acc = (acc + coeffs[i, j] * f) % p
        out.append(acc)
    return out


def hom_ver_dim(r1: CyclicRep, r2: CyclicRep) -> int:
    """dim Hom(r1, r2) minus dim of its negligible part (= rank of the trace pairing)."""
    _, _, pair = trace_pairing(r1, r2)
    return rank(pair, r1.p) if pair.size else 0


@dataclass(frozen=True, eq=False)
class Splitting:
    """Equivariant decomposition witness.

    `iota` has the summand inclusions as consecutive column blocks, `pi` the
    matching projections as row blocks; `sizes` lists the Jordan size of each
    summand in order.
    """

    p: int
    sizes: tuple[int, ...]
    iota: np.ndarray
    pi: np.ndarray

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for s in self.sizes:
            out.append(acc)
            acc += s
        return out

    def inclusion(self, a: int) -> np.ndarray:
        o = self.offsets()[a]
        return self.iota[:, o : o + self.sizes[a]]

    def projection(self, a: int) -> np.ndarray:
        o = self.offsets()[a]
        return self.pi[o : o + self.sizes[a], :]


def _chain_generators(nil: np.ndarray, p: int) -> dict[int, list[np.ndarray]]:
    """Generators of Jordan chains, grouped by chain length.

    Free (length p) chains come from first-pivot lifts of a basis of im N^(p-1);
    shorter chains of length k come from vectors of ker N^k independent modulo
    ker N^(k-1) + N(ker N^(k+1)).
    """
    n = nil.shape[0]
    powers = [np.eye(n, dtype=np.int64)]
    for _ in range(p):
        powers.append(matmul(powers[-1], nil, p))
    kernels = [nullspace(pw, p) for pw in powers]
    gens: dict[int, list[np.ndarray]] = {}

    top = powers[p - 1]
    img = colspace(top, p)
    free = []
    for j in range(img.shape[1]):
        free.append(solve(top, img[:, j], p))
    gens[p] = free

    for k in range(p - 1, 0, -1):
        below = kernels[k - 1]
        pushed = matmul(nil, kernels[k + 1], p) if kernels[k + 1].shape[1] else np.zeros((n, 0), dtype=np.int64)
        base = np.concatenate([below, pushed], axis=1)
        picked = extend_independent(base, kernels[k], p)
        gens[k] = [kernels[k][:, j].copy() for j in picked]
    return gens


def jordan_decomposition(r: CyclicRep) -> Splitting:
    """Full decomposition into standard Jordan blocks, sizes ascending."""
    p, n = r.p, r.dim
    if n == 0:
        return Splitting(p, (), np.zeros((0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64))
    nil = r.nilpotent
    gens = _chain_generators(nil, p)
    cols, sizes = [], []
    for k in range(1, p + 1):
        for v in gens.get(k, []):
            chain = [v % p]
            for _ in range(k - 1):
                chain.append(matmul(nil, chain[-1].reshape(-1, 1), p).ravel())
            cols.extend(reversed(chain))
            sizes.append(k)
    basis = np.stack(cols, axis=1)
    return Splitting(p, tuple(sizes), basis, inverse(basis, p))


def strip_projectives(r: CyclicRep) -> tuple[CyclicRep, Splitting]:
    """Remove the free (size p) Jordan summands.

    Returns the core in standard block form and a splitting (iota, pi) with
    pi @ iota = identity on the core.
    """
    full = jordan_decomposition(r)
    keep_cols, keep_sizes = [], []
    off = 0
    for s in full.sizes:
        if s < r.p:
            keep_cols.extend(range(off, off + s))
            keep_sizes.append(s)
        off += s
    iota = full.iota[:, keep_cols]
    pi = full.pi[keep_cols, :]
    core = CyclicRep.from_blocks(r.p, keep_sizes)
    return core, Splitting(r.p, tuple(keep_sizes), iota, pi)
