"""Brute-force reference computations, written independently of the package.

Everything here works with explicit matrices of Z/p-representations (a single
unipotent matrix u) and plain Gaussian elimination, without the isotypic block
machinery the package uses.
"""
from __future__ import annotations

import itertools

import numpy as np


def rank_mod(a: np.ndarray, p: int) -> int:
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        r += 1
    return r


def null_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the right kernel."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    out = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, c in enumerate(pivots):
            out[c, k] = (-a[i, f]) % p
    return out


def jordan(p: int, n: int) -> np.ndarray:
    return (np.eye(n, dtype=np.int64) + np.eye(n, k=1, dtype=np.int64)) % p


def rep_of(p: int, sizes) -> np.ndarray:
    n = sum(sizes)
    u = np.zeros((n, n), dtype=np.int64)
    o = 0
    for s in sizes:
        u[o : o + s, o : o + s] = jordan(p, s)
        o += s
    return u


def block_counts(u: np.ndarray, p: int) -> list[int]:
    """Number of Jordan blocks of each size 1..p of a unipotent matrix."""
    n = u.shape[0]
    nil = (u - np.eye(n, dtype=np.int64)) % p
    ranks = [n]
    acc = np.eye(n, dtype=np.int64)
    for _ in range(p + 1):
        acc = acc @ nil % p
        ranks.append(rank_mod(acc, p))
    return [ranks[k - 1] - 2 * ranks[k] + ranks[k + 1] for k in range(1, p + 1)]


def ver_mult(u: np.ndarray, p: int) -> tuple[int, ...]:
    """Multiplicities of L_1..L_{p-1} after discarding blocks of size p."""
    return tuple(block_counts(u, p)[: p - 1])


def kron_fusion(p: int, i: int, j: int) -> tuple[int, ...]:
    return ver_mult(np.kron(jordan(p, i), jordan(p, j)) % p, p)


def fusion_formula(p: int, i: int, j: int) -> tuple[int, ...]:
    out = [0] * (p - 1)
    for k in range(abs(i - j) + 1, min(i + j - 1, 2 * p - i - j - 1) + 1, 2):
        out[k - 1] += 1
    return tuple(out)


def tensor_power_rep(u: np.ndarray, n: int, p: int) -> np.ndarray:
    out = np.eye(1, dtype=np.int64)
    for _ in range(n):
        out = np.kron(out, u) % p
    return out


def _perm_matrix(d: int, n: int, perm) -> np.ndarray:
    size = d**n
    idx = np.arange(size)
    digits = np.array(np.unravel_index(idx, (d,) * n))
    target = np.ravel_multi_index(tuple(digits[list(perm)]), (d,) * n)
    m = np.zeros((size, size), dtype=np.int64)
    m[target, idx] = 1
    return m


def coinvariant_rep(u: np.ndarray, n: int, p: int, sign: int) -> np.ndarray:
    """The action on V^(n) / span{(v - sign * s_t v)} for adjacent transpositions s_t."""
    d = u.shape[0]
    big = tensor_power_rep(u, n, p)
    size = d**n
    if n < 2:
        return big
    rels = []
    for t in range(n - 1):
        perm = list(range(n))
        perm[t], perm[t + 1] = perm[t + 1], perm[t]
        rels.append((np.eye(size, dtype=np.int64) - sign * _perm_matrix(d, n, perm)) % p)
    r = np.concatenate(rels, axis=1)
    # quotient by the column space of r: pick a complement via left kernel
    ann = null_mod(r.T, p).T          # rows spanning functionals killing im r
    # action on the quotient = action on the dual subspace of annihilators
    if ann.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    # ann @ big = M @ ann  solve for M
    sol = []
    a_t = ann.T
    for row in (ann @ big % p):
        sol.append(_solve_rows(a_t, row, p))
    return np.array(sol, dtype=np.int64) % p


def _solve_rows(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """x with a @ x = b (a has independent columns)."""
    aug = np.concatenate([a, b[:, None]], axis=1) % p
    n = a.shape[1]
    rows = aug.shape[0]
    r = 0
    piv_cols = []
    for c in range(n):
        nz = np.nonzero(aug[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        aug[[r, piv]] = aug[[piv, r]]
        aug[r] = aug[r] * pow(int(aug[r, c]), p - 2, p) % p
        col = aug[:, c].copy()
        col[r] = 0
        aug = (aug - np.outer(col, aug[r])) % p
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv_cols):
        x[c] = aug[i, -1]
    return x


def sym_mult(p: int, sizes, n: int) -> tuple[int, ...]:
    """Ver-multiplicities of S^n of the representation with the given Jordan blocks."""
    if n == 0:
        return (1,) + (0,) * (p - 2)
    u = rep_of(p, sizes)
    q = coinvariant_rep(u, n, p, 1)
    if q.shape[0] == 0:
        return (0,) * (p - 1)
    return ver_mult(q, p)


def ext_mult(p: int, sizes, n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,) + (0,) * (p - 2)
    u = rep_of(p, sizes)
    q = coinvariant_rep(u, n, p, -1)
    if q.shape[0] == 0:
        return (0,) * (p - 1)
    return ver_mult(q, p)


def ver_dim(mult) -> int:
    return sum((i + 1) * m for i, m in enumerate(mult))


# ---------------------------------------------------------------------------
# equivariant maps and negligibility


def hom_space(u1: np.ndarray, u2: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of {f : f u1 = u2 f}."""
    n1, n2 = u1.shape[0], u2.shape[0]
    # vec(f u1 - u2 f) = (u1^T kron I - I kron u2) vec(f), column-major vec
    a = (np.kron(u1.T, np.eye(n2, dtype=np.int64)) - np.kron(np.eye(n1, dtype=np.int64), u2)) % p
    ker = null_mod(a, p)
    return [ker[:, k].reshape(n1, n2).T.copy() for k in range(ker.shape[1])]


def is_negligible(f: np.ndarray, u1: np.ndarray, u2: np.ndarray, p: int) -> bool:
    """tr(g f) = 0 for every equivariant g going back."""
    return all(int(np.trace(g @ f)) % p == 0 for g in hom_space(u2, u1, p))


def ver_hom_dim(u1: np.ndarray, u2: np.ndarray, p: int) -> int:
    fs = hom_space(u1, u2, p)
    gs = hom_space(u2, u1, p)
    if not fs or not gs:
        return 0
    pairing = np.array([[int(np.trace(g @ f)) % p for g in gs] for f in fs], dtype=np.int64)
    return rank_mod(pairing, p)


def negligible_basis(u1: np.ndarray, u2: np.ndarray, p: int) -> list[np.ndarray]:
    fs = hom_space(u1, u2, p)
    gs = hom_space(u2, u1, p)
    if not fs:
        return []
    if not gs:
        return fs
    pairing = np.array([[int(np.trace(g @ f)) % p for g in gs] for f in fs], dtype=np.int64)
    ker = null_mod(pairing.T, p)
    return [sum(int(c) * f for c, f in zip(ker[:, k], fs)) % p for k in range(ker.shape[1])]


# ---------------------------------------------------------------------------
# small algebras


def count_units_bruteforce(consts: np.ndarray, p: int) -> int:
    """Units of the algebra with structure constants consts[k, i, j], by checking x y = 1 for some y."""
    n = consts.shape[0]
    elems = [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=n)]
    one = None
    for x in elems:
        # the unit is the element e with e * y = y for all basis y
        lm = np.einsum("kij,i->kj", consts, x) % p
        if np.array_equal(lm, np.eye(n, dtype=np.int64)):
            rm = np.einsum("kij,j->ki", consts, x) % p
            if np.array_equal(rm, np.eye(n, dtype=np.int64)):
                one = x
    count = 0
    for x in elems:
        lm = np.einsum("kij,i->kj", consts, x) % p
        if any(np.array_equal(lm @ y % p, one) for y in elems):
            count += 1
    return count
