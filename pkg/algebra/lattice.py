"""
Finite posets and their Dedekind–MacNeille completion.

Subsets are held as Python int bitmasks (bit x set iff x is in the subset).
The cuts L(U(X)) of a finite poset are exactly the intersections of principal
downsets, so the completion is built by closing the principal downsets and the
whole carrier under intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from algebra.mv_core import FiniteMvAlgebra
from core.errors import InvalidArgumentError, InvariantViolation
from core.utils import logger


def _bits(mask: int) -> List[int]:
    out, x = [], 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def _mask_of(members: Iterable[int]) -> int:
    mask = 0
    for x in members:
        mask |= 1 << int(x)
    return mask


class FinitePoset:
    """Finite partial order given by its ≤ matrix"""

    def __init__(self, names: Sequence[str], leq, check: bool = True):
        self.names = tuple(str(n) for n in names)
        leq = np.array(leq, dtype=bool)
        if leq.shape != (len(self.names), len(self.names)):
            raise InvalidArgumentError(f"≤ matrix has shape {leq.shape}, expected {(len(self.names),) * 2}")
        leq.setflags(write=False)
        self.leq = leq
        if check:
            self.validate()

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"FinitePoset(size={len(self)})"

    @classmethod
    def from_pairs(cls, names: Sequence[str], pairs: Iterable[Tuple[int, int]]) -> 'FinitePoset':
        """Reflexive-transitive closure of the given (x ≤ y) pairs"""
        size = len(names)
        leq = np.eye(size, dtype=bool)
        for x, y in pairs:
            leq[x, y] = True
        while True:
            closed = leq | ((leq.astype(np.int64) @ leq.astype(np.int64)) > 0)
            if np.array_equal(closed, leq):
                break
            leq = closed
        return cls(names, leq)

    @classmethod
    def of_algebra(cls, algebra: FiniteMvAlgebra) -> 'FinitePoset':
        return cls(algebra.names, algebra.leq_matrix, check=False)

    def validate(self) -> None:
        leq = self.leq
        off_diagonal = np.flatnonzero(~leq.diagonal())
        if off_diagonal.size:
            x = self.names[off_diagonal[0]]
            raise InvalidArgumentError(f"Not reflexive: {x} ≰ {x}", {'witness': [x]})

        both = np.argwhere(leq & leq.T & ~np.eye(len(self), dtype=bool))
        if len(both):
            x, y = (self.names[i] for i in both[0])
            raise InvalidArgumentError(f"Not antisymmetric: {x} ≤ {y} ≤ {x}", {'witness': [x, y]})

        as_int = leq.astype(np.int64)
        through = as_int @ as_int
        broken = np.argwhere((through > 0) & ~leq)
        if len(broken):
            x, z = (int(i) for i in broken[0])
            y = int(np.flatnonzero(leq[x] & leq[:, z])[0])
            witness = [self.names[x], self.names[y], self.names[z]]
            raise InvalidArgumentError(
                f"Not transitive: {witness[0]} ≤ {witness[1]} ≤ {witness[2]}", {'witness': witness})

    def downset(self, x: int) -> int:
        return _mask_of(np.flatnonzero(self.leq[:, x]).tolist())

    def upset(self, x: int) -> int:
        return _mask_of(np.flatnonzero(self.leq[x]).tolist())

    def bottom(self) -> Optional[int]:
        hits = np.flatnonzero(self.leq.all(axis=1))
        return int(hits[0]) if hits.size else None

    def top(self) -> Optional[int]:
        hits = np.flatnonzero(self.leq.all(axis=0))
        return int(hits[0]) if hits.size else None

    def is_order_isomorphism(self, other: 'FinitePoset', mapping: Sequence[int]) -> bool:
        """Bijective, order-preserving and order-reflecting"""
        m = np.asarray(mapping, dtype=np.int64)
        if len(m) != len(self) or len(other) != len(self) or len(set(m.tolist())) != len(m):
            return False
        return bool(np.array_equal(self.leq, other.leq[np.ix_(m, m)]))


@dataclass(frozen=True, eq=False)
class MacNeilleCompletion:
    poset: FinitePoset
    lattice: FinitePoset
    cuts: Tuple[int, ...]
    embedding: Tuple[int, ...]

    def cut_members(self, index: int) -> List[int]:
        return _bits(self.cuts[index])


def _closure(principal: Sequence[int], full: int, mask: int) -> int:
    """L(U(X)): intersection of the downsets of all upper bounds of X"""
    result = full
    for down in principal:
        if mask & ~down == 0:
            result &= down
    return result


def _cut_name(poset: FinitePoset, mask: int, principal_names: dict) -> str:
    if mask in principal_names:
        return principal_names[mask]
    members = [poset.names[x] for x in _bits(mask)]
    return '{' + ','.join(members) + '}' if members else '∅'


def dedekind_macneille(poset: FinitePoset) -> MacNeilleCompletion:
    """
    Lattice of cuts ordered by inclusion, with x ↦ ↓x.

    The embedding is checked to be an order embedding, its image join- and
    meet-dense, and the cut family closed under intersection with a top.
    """
    size = len(poset)
    full = (1 << size) - 1
    principal = [poset.downset(x) for x in range(size)]

    cuts = set(principal) | {full}
    frontier = list(cuts)
    while frontier:
        found = set()
        for c in frontier:
            for d in list(cuts):
                e = c & d
                if e not in cuts:
                    found.add(e)
        cuts |= found
        frontier = list(found)

    ordered = sorted(cuts, key=lambda m: (bin(m).count('1'), m))
    index = {m: i for i, m in enumerate(ordered)}
    count = len(ordered)
    leq = np.zeros((count, count), dtype=bool)
    for i, c in enumerate(ordered):
        for j, d in enumerate(ordered):
            leq[i, j] = c & ~d == 0

    principal_names = {principal[x]: poset.names[x] for x in range(size)}
    lattice = FinitePoset([_cut_name(poset, m, principal_names) for m in ordered], leq, check=False)
    embedding = tuple(index[principal[x]] for x in range(size))

    if len(set(embedding)) != size:
        raise InvariantViolation("Principal cuts are not distinct")
    if not np.array_equal(poset.leq, lattice.leq[np.ix_(embedding, embedding)]):
        raise InvariantViolation("x ↦ ↓x is not an order embedding")
    for c in ordered:
        below = 0
        for p in _bits(c):
            below |= principal[p]
        if _closure(principal, full, below) != c:
            raise InvariantViolation(f"Cut {_bits(c)} is not the join of the principal cuts below it")
        above = [down for down in principal if c & ~down == 0]
        meet = full
        for down in above:
            meet &= down
        if meet != c:
            raise InvariantViolation(f"Cut {_bits(c)} is not the meet of the principal cuts above it")
    if full not in index or any(c & d not in index for c in ordered for d in ordered):
        raise InvariantViolation("Cut family is not closed under intersection")

    logger(f"Dedekind–MacNeille completion: {size} elements -> {count} cuts", 'debug')
    return MacNeilleCompletion(poset, lattice, tuple(ordered), embedding)
