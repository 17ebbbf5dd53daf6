"""
Ideals of finite MV-algebras: generation, enumeration, prime and maximal
classification, quotients, ranks, radicals and the decomposition of a
finite-index ideal into the maximal ideals above it.

Enumeration order is fixed: ideals are sorted lexicographically by their
sorted member ids, so every report built on them is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, NamedTuple, Optional, Tuple

import numpy as np

from algebra.mv_core import (
    ChainMultiset,
    FiniteMvAlgebra,
    Homomorphism,
    IsoWitness,
    direct_product,
    product_index,
)
from core.errors import (
    InvalidArgumentError,
    InvariantViolation,
    ResourceLimitError,
    TheoremViolation,
)
from core.utils import get_settings, logger


def _mask(algebra: FiniteMvAlgebra, members: Iterable[int]) -> np.ndarray:
    mask = np.zeros(algebra.size, dtype=bool)
    mask[list(members)] = True
    return mask


def is_ideal(algebra: FiniteMvAlgebra, members: Iterable[int]) -> bool:
    """Contains 0, closed downward and under ⊕"""
    members = sorted(set(members))
    if algebra.zero not in members:
        return False
    mask = _mask(algebra, members)
    below_members = algebra.leq_matrix[:, members].any(axis=1)
    if (below_members & ~mask).any():
        return False
    sums = algebra.oplus_table[np.ix_(members, members)]
    return bool(mask[sums].all())


@dataclass(frozen=True)
class Ideal:
    algebra: FiniteMvAlgebra
    members: frozenset

    def __post_init__(self):
        members = frozenset(int(m) for m in self.members)
        if any(not 0 <= m < self.algebra.size for m in members):
            raise InvalidArgumentError(f"Ideal members leave the carrier of {self.algebra.label}")
        if not is_ideal(self.algebra, members):
            raise InvalidArgumentError(f"{sorted(members)} is not an ideal of {self.algebra.label}")
        object.__setattr__(self, 'members', members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"Ideal{{{', '.join(self.names())}}}"

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.algebra.size

    @property
    def sorted_members(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    def names(self) -> list:
        return [self.algebra.names[m] for m in self.sorted_members]

    @property
    def greatest(self) -> Optional[int]:
        """Greatest member, when it exists"""
        members = list(self.sorted_members)
        leq = self.algebra.leq_matrix
        for g in reversed(members):
            if leq[members, g].all():
                return g
        return None


def _own(algebra: FiniteMvAlgebra, ideal: Ideal) -> None:
    if ideal.algebra is not algebra:
        raise InvalidArgumentError(f"Ideal belongs to {ideal.algebra.label}, not {algebra.label}")


def _require_proper(algebra: FiniteMvAlgebra, ideal: Ideal) -> None:
    _own(algebra, ideal)
    if not ideal.is_proper:
        raise InvalidArgumentError(f"The improper ideal of {algebra.label} is not allowed here")


def ideal_generated(algebra: FiniteMvAlgebra, generators: Iterable[int]) -> Ideal:
    """
    Least ideal containing the generators.

    Fixpoint of: take t, the ⊕-sum of all current members, and close below t ⊕ t.
    Every pairwise sum x ⊕ y lies below t ⊕ t, so the fixpoint is ⊕-closed.
    """
    generators = set(int(g) for g in generators)
    if any(not 0 <= g < algebra.size for g in generators):
        raise InvalidArgumentError(f"Generators leave the carrier of {algebra.label}")
    mask = _mask(algebra, generators | {algebra.zero})
    while True:
        total = reduce(algebra.oplus, np.flatnonzero(mask).tolist(), algebra.zero)
        closed = algebra.leq_matrix[:, algebra.oplus(total, total)] | mask
        if np.array_equal(closed, mask):
            break
        mask = closed
    return Ideal(algebra, frozenset(np.flatnonzero(mask).tolist()))


def _ideal_key(ideal: Ideal) -> Tuple[int, ...]:
    return ideal.sorted_members


@lru_cache(maxsize=256)
def all_ideals(algebra: FiniteMvAlgebra) -> Tuple[Ideal, ...]:
    """
    Every ideal, found by closing {0} under 'add one element and regenerate'.

    Each ideal I is reached by adding its members one at a time, so the search
    is complete without assuming ideals are principal.
    """
    settings = get_settings()
    if algebra.size > settings.max_carrier:
        raise ResourceLimitError(
            f"{algebra.label} has {algebra.size} elements, above the limit {settings.max_carrier}")

    start = ideal_generated(algebra, ())
    seen = {start.members: start}
    frontier = [start]
    while frontier:
        ideal = frontier.pop()
        for a in range(algebra.size):
            if a in ideal.members:
                continue
            bigger = ideal_generated(algebra, ideal.members | {a})
            if bigger.members in seen:
                continue
            if len(seen) >= settings.max_ideals:
                raise ResourceLimitError(
                    f"{algebra.label} has more than {settings.max_ideals} ideals",
                    {'limit': settings.max_ideals},
                )
            seen[bigger.members] = bigger
            frontier.append(bigger)

    ideals = tuple(sorted(seen.values(), key=_ideal_key))
    logger(f"{algebra.label}: {len(ideals)} ideals", 'debug')
    return ideals


def id_f(algebra: FiniteMvAlgebra) -> Tuple[Ideal, ...]:
    """Ideals with finite quotient; all of them for a finite algebra"""
    return all_ideals(algebra)


def prime_violation(algebra: FiniteMvAlgebra, ideal: Ideal) -> Optional[Tuple[int, int]]:
    """First pair (x, y) with x ∧ y in I but neither x nor y in I"""
    _require_proper(algebra, ideal)
    inside = _mask(algebra, ideal.members)
    bad = inside[algebra.meet_table] & ~inside[:, None] & ~inside[None, :]
    hits = np.argwhere(bad)
    return (int(hits[0][0]), int(hits[0][1])) if len(hits) else None


def is_prime(algebra: FiniteMvAlgebra, ideal: Ideal) -> bool:
    return prime_violation(algebra, ideal) is None


def _some_multiple_negation_inside(algebra: FiniteMvAlgebra, ideal: Ideal, a: int) -> bool:
    """Is ¬(na) in I for some n >= 1, with na the n-fold ⊕-sum"""
    total, seen = a, set()
    while total not in seen:
        if algebra.neg(total) in ideal.members:
            return True
        seen.add(total)
        total = algebra.oplus(total, a)
    return False


def is_maximal_by_inclusion(algebra: FiniteMvAlgebra, ideal: Ideal) -> bool:
    _own(algebra, ideal)
    if not ideal.is_proper:
        return False
    return not any(
        other.is_proper and ideal.members < other.members
        for other in all_ideals(algebra)
    )


def is_maximal(algebra: FiniteMvAlgebra, ideal: Ideal) -> bool:
    """
    For every a outside I, some ¬(na) lies in I.

    Cross-checked against inclusion-maximality among proper ideals.
    """
    _require_proper(algebra, ideal)
    by_definition = all(
        _some_multiple_negation_inside(algebra, ideal, a)
        for a in range(algebra.size) if a not in ideal.members
    )
    by_inclusion = is_maximal_by_inclusion(algebra, ideal)
    if by_definition != by_inclusion:
        raise InvariantViolation(
            f"Maximality criteria disagree on {ideal!r}: definition={by_definition}, inclusion={by_inclusion}")
    return by_definition


def is_principal(algebra: FiniteMvAlgebra, ideal: Ideal) -> Optional[int]:
    """A generator of I, trying its greatest member first; None if I is not principal"""
    _own(algebra, ideal)
    candidates = list(ideal.sorted_members)
    greatest = ideal.greatest
    if greatest is not None:
        candidates.remove(greatest)
        candidates.insert(0, greatest)
    for a in candidates:
        if ideal_generated(algebra, (a,)).members == ideal.members:
            return a
    return None


class Quotient(NamedTuple):
    algebra: FiniteMvAlgebra
    projection: Homomorphism


@lru_cache(maxsize=1024)
def quotient(algebra: FiniteMvAlgebra, ideal: Ideal) -> Quotient:
    """
    A/I under x ~ y iff (x ⊙ ¬y) ⊕ (y ⊙ ¬x) is in I.

    Classes are numbered by their least member; induced operations are checked
    to be well defined on every pair.
    """
    _own(algebra, ideal)
    inside = _mask(algebra, ideal.members)
    x_without_y = algebra.otimes_table[:, algebra.neg_table]      # x ⊙ ¬y
    distance = algebra.oplus_table[x_without_y, x_without_y.T]
    related = inside[distance]

    least = related.argmax(axis=1)
    reps = np.unique(least)
    class_of = np.searchsorted(reps, least)
    if not np.array_equal(related, class_of[:, None] == class_of[None, :]):
        raise InvariantViolation(f"Relation induced by {ideal!r} is not an equivalence")

    q_oplus = class_of[algebra.oplus_table[np.ix_(reps, reps)]]
    q_neg = class_of[algebra.neg_table[reps]]
    if not (np.array_equal(class_of[algebra.oplus_table], q_oplus[class_of[:, None], class_of[None, :]])
            and np.array_equal(class_of[algebra.neg_table], q_neg[class_of])):
        raise InvariantViolation(f"Operations are not well defined modulo {ideal!r}")

    generator = ideal.greatest
    suffix = algebra.names[generator] if generator is not None else 'I'
    q = FiniteMvAlgebra(
        [f"[{algebra.names[r]}]" for r in reps],
        q_oplus, q_neg, int(class_of[algebra.zero]),
        label=f"{algebra.label}/⟨{suffix}⟩",
    )
    projection = Homomorphism(algebra, q, tuple(class_of.tolist())).verify()
    if projection.kernel() != ideal.members:
        raise InvariantViolation(f"Kernel of the projection onto {q.label} differs from {ideal!r}")
    return Quotient(q, projection)


def rank(algebra: FiniteMvAlgebra, ideal: Ideal) -> int:
    """n with A/M ≅ Ł_n"""
    if not is_maximal(algebra, ideal):
        raise InvalidArgumentError(f"{ideal!r} is not a maximal ideal of {algebra.label}")
    q = quotient(algebra, ideal).algebra
    if not q.is_chain:
        raise InvariantViolation(f"{q.label} is not totally ordered")
    return q.size


@lru_cache(maxsize=256)
def max_ideals(algebra: FiniteMvAlgebra) -> Tuple[Ideal, ...]:
    return tuple(
        ideal for ideal in all_ideals(algebra)
        if ideal.is_proper and is_maximal(algebra, ideal)
    )


def max_f(algebra: FiniteMvAlgebra) -> Tuple[Ideal, ...]:
    """Maximal ideals of finite rank; all of them for a finite algebra"""
    return max_ideals(algebra)


def prime_ideals(algebra: FiniteMvAlgebra) -> Tuple[Ideal, ...]:
    """Underlying set of the prime spectrum"""
    return tuple(
        ideal for ideal in all_ideals(algebra)
        if ideal.is_proper and is_prime(algebra, ideal)
    )


def radical(algebra: FiniteMvAlgebra) -> Ideal:
    """Intersection of all maximal ideals (the whole algebra when there are none)"""
    members = frozenset(range(algebra.size))
    for ideal in max_ideals(algebra):
        members &= ideal.members
    return Ideal(algebra, members)


def is_semisimple(algebra: FiniteMvAlgebra) -> bool:
    return radical(algebra).members == frozenset({algebra.zero})


@dataclass(frozen=True, eq=False)
class SDecomposition:
    ideal: Ideal
    factors: Tuple[Ideal, ...]
    iso: IsoWitness

    @property
    def ranks(self) -> ChainMultiset:
        return ChainMultiset.of(quotient(self.ideal.algebra, m).algebra.size for m in self.factors)


def s_decomposition(algebra: FiniteMvAlgebra, ideal: Ideal) -> SDecomposition:
    """
    The maximal ideals above I, with φ_I: A/I -> ∏ A/M, [a]_I ↦ ([a]_M)_M.

    φ_I is checked to be injective; equal cardinalities then make it an
    isomorphism, and the witness is verified exhaustively.
    """
    _own(algebra, ideal)
    source = quotient(algebra, ideal)

    factors = tuple(m for m in max_ideals(algebra) if ideal.members <= m.members) if ideal.is_proper else ()
    if factors:
        intersection = frozenset.intersection(*(m.members for m in factors))
    else:
        intersection = frozenset(range(algebra.size))
    if intersection != ideal.members:
        raise TheoremViolation(f"Maximal ideals above {ideal!r} intersect to {sorted(intersection)}")

    factor_quotients = [quotient(algebra, m) for m in factors]
    target = direct_product(
        [q.algebra for q in factor_quotients],
        label='×'.join(q.algebra.label for q in factor_quotients) or None,
    )
    sizes = [q.algebra.size for q in factor_quotients]

    representative = {}
    for a, c in enumerate(source.projection.mapping):
        representative.setdefault(c, a)
    mapping = [
        product_index([q.projection(representative[c]) for q in factor_quotients], sizes)
        for c in range(source.algebra.size)
    ]
    phi = Homomorphism(source.algebra, target, tuple(mapping)).verify()
    if not phi.is_injective or source.algebra.size != target.size:
        raise TheoremViolation(f"φ_I for {ideal!r} is not a bijection onto {target.label}")

    logger(f"S({ideal!r}) has {len(factors)} factor(s)", 'debug')
    return SDecomposition(ideal, factors, IsoWitness.from_bijection(phi))
