"""Named test objects shared by the command line and the test suite."""
from __future__ import annotations

import re

import numpy as np

from .commalg import FinCommAlgebra, from_ordinary, product_of_fields, square_zero, symmetric_algebra
from .harish_chandra import DualHCPair, make_pair, trivial_pair
from .hopf import (
    SmashData,
    VerHopfAlgebra,
    action_from_endos,
    corrupted_function_algebra,
    cyclic_group,
    dual_hopf,
    group_algebra,
    universal_envelope,
)
from .lie import VerLieAlgebra, abelian, sl, zero_lie
from .verlinde_core import VerMorphism, VerObject, from_labels, identity, simple


def parse_object(text: str, p: int) -> VerObject:
    """'2', '1,2', 'L1+L2' or '2L2+L3' -> VerObject."""
    text = text.strip()
    if not text or text == "0":
        return VerObject(p, (0,) * (p - 1))
    labels: list[int] = []
    for part in re.split(r"[+,]", text):
        part = part.strip()
        m = re.fullmatch(r"(\d*)L(\d+)", part)
        if m:
            labels += [int(m.group(2))] * int(m.group(1) or 1)
        elif part.isdigit():
            labels.append(int(part))
        else:
            raise ValueError(f"cannot parse object {text!r}")
    if any(not 1 <= i <= p - 1 for i in labels):
        raise ValueError(f"simple index out of range in {text!r} for p={p}")
    return from_labels(p, labels)


LIE_TARGETS = ("zero", "abelian-L2", "sl-L2", "sl-L3", "L2L2-abelian")


def lie_target(name: str, p: int) -> VerLieAlgebra:
    if name == "zero":
        return zero_lie(p)
    if name == "abelian-L2":
        return abelian(simple(p, 2), "abelian(L2)")
    if name == "sl-L2":
        return sl(simple(p, 2))
    if name == "sl-L3":
        return sl(simple(p, 3))
    if name == "L2L2-abelian":
        return abelian(from_labels(p, [2, 2]), "abelian(2L2)")
    raise KeyError(f"unknown Lie target {name!r}; choose from {', '.join(LIE_TARGETS)}")


def swap_endo(x: VerObject) -> VerMorphism:
    """Exchange of the two copies of L_2 in 2L_2."""
    blocks = [np.eye(m, dtype=np.int64) for m in x.mult]
    blocks[1] = np.array([[0, 1], [1, 0]], dtype=np.int64)
    return VerMorphism(x, x, blocks)


def swap_pair(p: int) -> DualHCPair:
    """(kZ/2, 2L_2 abelian) with the generator exchanging the two copies."""
    kz = group_algebra(p, cyclic_group(2), name="kZ/2")
    g = abelian(from_labels(p, [2, 2]), "abelian(2L2)")
    act = action_from_endos(kz, g.carrier, [identity(g.carrier), swap_endo(g.carrier)])
    return make_pair(kz, g, act)


def smash_z2(p: int) -> SmashData:
    """U(2L_2 abelian) # kZ/2 with the swap action."""
    from .harish_chandra import build_H

    return build_H(swap_pair(p)).smash


PAIR_TARGETS = ("k-0", "k-abelian-L2", "k-sl-L2", "k-sl-L3", "smash-Z2-L2L2")


def pair_target(name: str, p: int) -> DualHCPair:
    if name == "smash-Z2-L2L2":
        return swap_pair(p)
    table = {"k-0": "zero", "k-abelian-L2": "abelian-L2", "k-sl-L2": "sl-L2", "k-sl-L3": "sl-L3"}
    if name not in table:
        raise KeyError(f"unknown pair {name!r}; choose from {', '.join(PAIR_TARGETS)}")
    return trivial_pair(p, lie_target(table[name], p))


HOPF_TARGETS = ("kZ2", "kZ3", "U-sl-L2", "U-abelian-L2", "O-sl-L2", "smash-Z2-L2L2", "corrupted-delta")


def hopf_target(name: str, p: int) -> VerHopfAlgebra:
    if name == "kZ2":
        return group_algebra(p, cyclic_group(2), name="kZ/2")
    if name == "kZ3":
        return group_algebra(p, cyclic_group(3), name="kZ/3")
    if name == "U-sl-L2":
        return universal_envelope(sl(simple(p, 2))).hopf
    if name == "U-abelian-L2":
        return universal_envelope(abelian(simple(p, 2))).hopf
    if name == "O-sl-L2":
        return dual_hopf(universal_envelope(sl(simple(p, 2))).hopf)
    if name == "smash-Z2-L2L2":
        return smash_z2(p).hopf
    if name == "corrupted-delta":
        return corrupted_function_algebra(p)
    raise KeyError(f"unknown Hopf target {name!r}; choose from {', '.join(HOPF_TARGETS)}")


ALGEBRA_TARGETS = ("k", "sq-L3", "symL2", "FxF")


def algebra_target(name: str, p: int) -> FinCommAlgebra:
    if name == "k":
        return from_ordinary(p, [[[1]]], [1])
    if name == "sq-L3":
        return square_zero(simple(p, 3))
    if name == "symL2":
        return symmetric_algebra(simple(p, 2)).algebra
    if name == "FxF":
        return product_of_fields(p, 2)
    raise KeyError(f"unknown algebra {name!r}; choose from {', '.join(ALGEBRA_TARGETS)}")
