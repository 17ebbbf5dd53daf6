"""
Canonical decomposition of a finite MV-algebra into Łukasiewicz chains, and
isomorphism testing by comparing the resulting chain multisets.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List, NamedTuple, Optional

from algebra.ideals import max_ideals, quotient, rank
from algebra.mv_core import (
    ChainMultiset,
    FiniteMvAlgebra,
    Homomorphism,
    IsoWitness,
    make_product,
    make_trivial,
    product_index,
)
from core.errors import TheoremViolation
from core.utils import logger


class CanonicalDecomposition(NamedTuple):
    multiset: ChainMultiset
    witness: IsoWitness


def chain_positions(chain: FiniteMvAlgebra) -> List[int]:
    """Position of each element in a finite MV-chain, i.e. k for the value k/(n-1)"""
    below = chain.leq_matrix.sum(axis=0) - 1
    return [int(k) for k in below]


@lru_cache(maxsize=256)
def canonical_decomposition(algebra: FiniteMvAlgebra) -> CanonicalDecomposition:
    """
    A ≅ ∏_M A/M over the maximal ideals, factors sorted by rank.

    Each quotient is a chain and is matched to Ł_rank by position.
    """
    if algebra.is_trivial:
        witness = IsoWitness.from_bijection(Homomorphism(algebra, make_trivial(), (0,)))
        return CanonicalDecomposition(ChainMultiset(), witness)

    ranked = sorted(
        (rank(algebra, m), i, m) for i, m in enumerate(max_ideals(algebra))
    )
    sizes = [r for r, _, _ in ranked]
    target = make_product(sizes)
    projections = [quotient(algebra, m) for _, _, m in ranked]
    positions = [chain_positions(q.algebra) for q in projections]

    mapping = [
        product_index([pos[q.projection(a)] for q, pos in zip(projections, positions)], sizes)
        for a in range(algebra.size)
    ]
    forward = Homomorphism(algebra, target, tuple(mapping))
    if not forward.is_bijective:
        raise TheoremViolation(f"{algebra.label} is not the product of its quotients by maximal ideals")

    multiset = ChainMultiset.of(sizes)
    logger(f"{algebra.label} decomposes as {multiset}", 'debug')
    return CanonicalDecomposition(multiset, IsoWitness.from_bijection(forward))


def is_isomorphic(a: FiniteMvAlgebra, b: FiniteMvAlgebra) -> Optional[IsoWitness]:
    """Explicit isomorphism when the chain multisets agree, otherwise None"""
    left = canonical_decomposition(a)
    right = canonical_decomposition(b)
    if left.multiset != right.multiset:
        return None
    # Both decompositions land in equally indexed products
    mapping = tuple(right.witness.backward(left.witness.forward(x)) for x in range(a.size))
    return IsoWitness.from_bijection(Homomorphism(a, b, mapping))
