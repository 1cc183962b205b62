"""Morphisms between right-nested tensor products, built strand by strand.

A list of factors [X_1, ..., X_n] stands for X_1 (x) (X_2 (x) (... (x) X_n)).
The helpers here re-bracket such products so that a morphism can be applied to
any run of consecutive factors.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .verlinde_core import (
    VerMorphism,
    VerObject,
    associator,
    associator_inv,
    braiding,
    identity,
    tensor,
    tensor_obj,
    unit,
)


def rnest(objs: Sequence[VerObject], p: int | None = None) -> VerObject:
    if not objs:
        if p is None:
            raise ValueError("empty product needs p")
        return unit(p)
    out = objs[-1]
    for x in reversed(objs[:-1]):
        out = tensor_obj(x, out)
    return out


def _objs(p: int, key: tuple) -> list[VerObject]:
    return [VerObject(p, m) for m in key]


@lru_cache(maxsize=4096)
def _concat(p: int, a: tuple, b: tuple) -> VerMorphism:
    xa, xb = _objs(p, a), _objs(p, b)
    src = tensor_obj(rnest(xa, p), rnest(xb, p))
    if len(a) <= 1 or not b:
        return identity(src)
    rest = rnest(xa[1:], p)
    step = associator(xa[0], rest, rnest(xb, p))
    return tensor(identity(xa[0]), _concat(p, a[1:], b)) @ step


@lru_cache(maxsize=4096)
def _split(p: int, a: tuple, b: tuple) -> VerMorphism:
    xa, xb = _objs(p, a), _objs(p, b)
    if len(a) <= 1 or not b:
        return identity(tensor_obj(rnest(xa, p), rnest(xb, p)))
    rest = rnest(xa[1:], p)
    step = associator_inv(xa[0], rest, rnest(xb, p))
    return step @ tensor(identity(xa[0]), _split(p, a[1:], b))


def concat(a: Sequence[VerObject], b: Sequence[VerObject], p: int) -> VerMorphism:
    """rnest(a) (x) rnest(b) -> rnest(a + b)."""
    return _concat(p, tuple(x.mult for x in a), tuple(x.mult for x in b))


def split(a: Sequence[VerObject], b: Sequence[VerObject], p: int) -> VerMorphism:
    """rnest(a + b) -> rnest(a) (x) rnest(b)."""
    return _split(p, tuple(x.mult for x in a), tuple(x.mult for x in b))


def apply_at(objs: Sequence[VerObject], i: int, k: int, f: VerMorphism, out: Sequence[VerObject]) -> VerMorphism:
    """Apply f: rnest(objs[i:i+k]) -> rnest(out) inside rnest(objs)."""
    p = f.p
    objs = list(objs)
    if i > 0:
        inner = apply_at(objs[1:], i - 1, k, f, out)
        return tensor(identity(objs[0]), inner)
    rest = objs[k:]
    head = split(objs[:k], rest, p)
    body = tensor(f, identity(rnest(rest, p)))
    tail = concat(list(out), rest, p)
    return tail @ body @ head


class Strands:
    """Accumulates a morphism out of rnest(objs) one local operation at a time."""

    def __init__(self, objs: Sequence[VerObject], p: int | None = None):
        self.p = p if p is not None else objs[0].p
        self.objs = list(objs)
        self.mor = identity(rnest(self.objs, self.p))

    def apply(self, i: int, k: int, f: VerMorphism, out: Sequence[VerObject] | VerObject | None = None) -> "Strands":
        if out is None:
            out = [f.cod]
        elif isinstance(out, VerObject):
            out = [out]
        out = [x for x in out]
        if rnest(self.objs[i : i + k], self.p) != f.dom:
            raise ValueError(f"factor mismatch at {i}:{i + k}")
        step = apply_at(self.objs, i, k, f, out)
        self.mor = step @ self.mor
        self.objs = self.objs[:i] + out + self.objs[i + k :]
        return self

    def swap(self, i: int) -> "Strands":
        x, y = self.objs[i], self.objs[i + 1]
        return self.apply(i, 2, braiding(x, y), [y, x])

    def group(self, i: int, k: int) -> "Strands":
        """Merge factors i..i+k-1 into a single factor."""
        obj = rnest(self.objs[i : i + k], self.p)
        return self.apply(i, k, identity(obj), [obj])

    def unit_in(self, i: int, f: VerMorphism) -> "Strands":
        """Insert the factors of f's codomain (f: 1 -> Y) before position i."""
        return self.apply(i, 0, f, [f.cod])

    def result(self) -> VerMorphism:
        return self.mor

    @property
    def cod(self) -> VerObject:
        return rnest(self.objs, self.p)


def strand_map(objs: Sequence[VerObject], ops: Sequence[tuple], p: int | None = None) -> VerMorphism:
    """Run ops of the form ("apply", i, k, f[, out]) or ("swap", i)."""
    s = Strands(objs, p)
    for op in ops:
        if op[0] == "swap":
            s.swap(op[1])
        elif op[0] == "apply":
            s.apply(*op[1:])
        else:
            raise ValueError(op[0])
    return s.result()
