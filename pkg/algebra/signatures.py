"""
Spectral signatures: semisimple algebras described only by the ranks of
their maximal ideals, with finite or countable multiplicities.

Infinite rank sets are given by symbolic families (all ranks from k, or an
arithmetic progression). Every family is periodic past its first member,
so equality and divisibility questions reduce to finite checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple, Union

from algebra.ideals import max_f, rank
from algebra.mv_core import FiniteMvAlgebra, atoms, element_order, is_atomic
from core.errors import InvalidParameterError, PreconditionError
from core.utils import logger


class Countable(enum.Enum):
    COUNTABLE = 'countable'

    def __repr__(self) -> str:
        return 'COUNTABLE'


COUNTABLE = Countable.COUNTABLE

Count = Union[int, Countable]


def add_counts(a: Count, b: Count) -> Count:
    if a is COUNTABLE or b is COUNTABLE:
        return COUNTABLE
    return a + b


def _check_count(count: Count, where: str, allow_zero: bool = False) -> Count:
    if count is COUNTABLE:
        return count
    if isinstance(count, bool) or not isinstance(count, int) or count < (0 if allow_zero else 1):
        floor = 'non-negative' if allow_zero else 'positive'
        raise InvalidParameterError(f"{where} must be a {floor} integer or COUNTABLE, got {count!r}")
    return count


def count_to_json(count: Count) -> Union[int, str]:
    return count.value if count is COUNTABLE else count


# ----- Families -----

@dataclass(frozen=True)
class Arithmetic:
    """first, first + step, first + 2·step, ..."""
    first: int
    step: int

    def __post_init__(self):
        for name in ('first', 'step'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidParameterError(f"Arithmetic family needs {name} >= 1, got {value!r}")

    def contains(self, n: int) -> bool:
        return n >= self.first and (n - self.first) % self.step == 0

    def normalized(self) -> 'Arithmetic':
        return self

    def shifted(self, delta: int) -> 'Arithmetic':
        return Arithmetic(self.first + delta, self.step)

    def members_up_to(self, bound: int) -> List[int]:
        return list(range(self.first, bound + 1, self.step))

    def as_dict(self) -> Dict:
        return {'arithmetic': {'first': self.first, 'step': self.step}}

    def __str__(self) -> str:
        return f"ARITHMETIC({self.first}, {self.step})"


@dataclass(frozen=True)
class AllRanksFrom:
    start: int

    def __post_init__(self):
        if isinstance(self.start, bool) or not isinstance(self.start, int) or self.start < 1:
            raise InvalidParameterError(f"ALL_RANKS_FROM needs a start >= 1, got {self.start!r}")

    @property
    def first(self) -> int:
        return self.start

    @property
    def step(self) -> int:
        return 1

    def contains(self, n: int) -> bool:
        return n >= self.start

    def normalized(self) -> Arithmetic:
        return Arithmetic(self.start, 1)

    def shifted(self, delta: int) -> 'AllRanksFrom':
        return AllRanksFrom(self.start + delta)

    def members_up_to(self, bound: int) -> List[int]:
        return list(range(self.start, bound + 1))

    def as_dict(self) -> Dict:
        return {'all_ranks_from': self.start}

    def __str__(self) -> str:
        return f"ALL_RANKS_FROM({self.start})"


Family = Union[AllRanksFrom, Arithmetic]


def _explicit(part: Union[Mapping[int, Count], Tuple[Tuple[int, Count], ...], None],
              floor: int, what: str) -> Tuple[Tuple[int, Count], ...]:
    items = dict(part or {})
    for key, count in items.items():
        if isinstance(key, bool) or not isinstance(key, int) or key < floor:
            raise InvalidParameterError(f"{what} keys must be integers >= {floor}, got {key!r}")
        _check_count(count, f"{what}[{key}]")
    return tuple(sorted(items.items()))


def _count_at(n: int, explicit: Tuple[Tuple[int, Count], ...], families: Tuple[Family, ...]) -> Count:
    total: Count = dict(explicit).get(n, 0)
    for family in families:
        if family.contains(n):
            total = add_counts(total, 1)
    return total


def _horizon(*parts: Tuple[Tuple[Tuple[int, Count], ...], Tuple[Family, ...]]) -> int:
    """Past this index every count function among the parts repeats with the common period"""
    keys = [k for explicit, _ in parts for k, _ in explicit]
    firsts = [f.first for _, families in parts for f in families]
    period = math.lcm(*(f.step for _, families in parts for f in families)) if firsts else 1
    return max(keys + firsts + [1]) + period


@dataclass(frozen=True)
class AtomData:
    """Orders of the atoms, each with its multiplicity"""
    explicit: Tuple[Tuple[int, Count], ...] = ()
    families: Tuple[Family, ...] = ()
    is_atomic: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'explicit', _explicit(self.explicit, 1, 'atom_orders'))
        object.__setattr__(self, 'families', tuple(self.families))

    def count(self, order: int) -> Count:
        return _count_at(order, self.explicit, self.families)

    def as_dict(self) -> Dict:
        return {
            'explicit': {str(k): count_to_json(c) for k, c in self.explicit},
            'families': [f.as_dict() for f in self.families],
            'is_atomic': self.is_atomic,
        }


@dataclass(frozen=True)
class SpectralSignature:
    finite_part: Tuple[Tuple[int, Count], ...] = ()
    infinite_rank_count: Count = 0
    families: Tuple[Family, ...] = ()
    atoms: Optional[AtomData] = None
    label: str = field(default='signature', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'finite_part', _explicit(self.finite_part, 2, 'finite_part'))
        _check_count(self.infinite_rank_count, 'infinite_rank_count', allow_zero=True)
        families = tuple(self.families)
        for family in families:
            if family.first < 2:
                raise InvalidParameterError(f"Rank family {family} must start at rank >= 2")
        object.__setattr__(self, 'families', families)

    @property
    def family(self) -> Optional[Family]:
        return self.families[0] if self.families else None

    @property
    def is_bounded(self) -> bool:
        return not self.families

    @property
    def is_trivial(self) -> bool:
        return not self.finite_part and not self.families and self.infinite_rank_count == 0

    def count(self, n: int) -> Count:
        """Number of maximal ideals of rank n"""
        return _count_at(n, self.finite_part, self.families)

    def ranks_up_to(self, bound: int) -> List[Tuple[int, Count]]:
        return [(n, c) for n in range(2, bound + 1) if (c := self.count(n)) != 0]

    def as_dict(self) -> Dict:
        return {
            'label': self.label,
            'finite_part': {str(k): count_to_json(c) for k, c in self.finite_part},
            'infinite_rank_count': count_to_json(self.infinite_rank_count),
            'families': [f.as_dict() for f in self.families],
            'atom_orders': self.atoms.as_dict() if self.atoms else None,
        }

    def __str__(self) -> str:
        parts = [f"{k}:{count_to_json(c)}" for k, c in self.finite_part]
        parts += [str(f) for f in self.families]
        if self.infinite_rank_count != 0:
            parts.append(f"∞:{count_to_json(self.infinite_rank_count)}")
        return '{' + ', '.join(parts) + '}'


# ----- Operations -----

def sig_of_finite_algebra(algebra: FiniteMvAlgebra) -> SpectralSignature:
    ranks: Dict[int, int] = {}
    for m in max_f(algebra):
        n = rank(algebra, m)
        ranks[n] = ranks.get(n, 0) + 1
    orders: Dict[int, int] = {}
    for a in atoms(algebra):
        o = element_order(algebra, a)
        orders[o] = orders.get(o, 0) + 1
    return SpectralSignature(
        finite_part=ranks,
        atoms=AtomData(explicit=orders, is_atomic=is_atomic(algebra)),
        label=f"sig({algebra.label})",
    )


def sig_profinite(signature: SpectralSignature) -> SpectralSignature:
    """Keep the finite ranks; the product of chains has one atom of order n-1 per factor Ł_n"""
    return SpectralSignature(
        finite_part=signature.finite_part,
        infinite_rank_count=0,
        families=signature.families,
        atoms=AtomData(
            explicit={n - 1: c for n, c in signature.finite_part},
            families=tuple(f.shifted(-1) for f in signature.families),
            is_atomic=True,
        ),
        label=f"profinite({signature.label})",
    )


def _require_atoms(signature: SpectralSignature) -> AtomData:
    if signature.atoms is None:
        raise PreconditionError(f"{signature.label} carries no atom data")
    return signature.atoms


def sig_macneille(signature: SpectralSignature) -> SpectralSignature:
    """∏ Ł_{o+1} over the atoms"""
    data = _require_atoms(signature)
    if not data.is_atomic:
        raise PreconditionError(f"{signature.label} is not atomic")
    return SpectralSignature(
        finite_part={o + 1: c for o, c in data.explicit},
        infinite_rank_count=0,
        families=tuple(f.shifted(1) for f in data.families),
        atoms=data,
        label=f"macneille({signature.label})",
    )


def _same_ranks(left: SpectralSignature, right: SpectralSignature) -> Optional[int]:
    """First rank whose multiplicities differ, or None"""
    bound = _horizon((left.finite_part, left.families), (right.finite_part, right.families))
    for n in range(2, bound + 1):
        if left.count(n) != right.count(n):
            return n
    return None


def sig_equal(left: SpectralSignature, right: SpectralSignature) -> bool:
    if left.infinite_rank_count != right.infinite_rank_count:
        return False
    return _same_ranks(left, right) is None


@dataclass(frozen=True)
class MacSignatureDecision:
    holds: bool
    diagnostic: str


def sig_mac_criterion(signature: SpectralSignature) -> MacSignatureDecision:
    data = _require_atoms(signature)
    if not data.is_atomic:
        return MacSignatureDecision(False, f"{signature.label} is not atomic")
    profinite = sig_profinite(signature)
    macneille = sig_macneille(signature)
    differs = _same_ranks(profinite, macneille)
    if differs is not None:
        return MacSignatureDecision(
            False,
            f"rank {differs}: {count_to_json(profinite.count(differs))} maximal ideal(s) "
            f"but {count_to_json(macneille.count(differs))} atom(s) of order {differs - 1}",
        )
    return MacSignatureDecision(True, f"ranks and atom orders + 1 agree: {profinite}")


class Verdict(enum.Enum):
    YES_BOUNDED = 'yes-bounded'
    YES_DIVISIBILITY = 'yes-divisibility'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class CompletionDecision:
    verdict: Verdict
    n0: Optional[int] = None
    exceptions: Tuple[int, ...] = ()
    strict: bool = False

    def as_dict(self) -> Dict:
        return {
            'verdict': self.verdict.name,
            'n0': self.n0,
            'exceptions': list(self.exceptions),
            'strict': self.strict,
        }


def _divides(n0: int, n: int, strict: bool) -> bool:
    return (n if strict else n - 1) % (n0 - 1) == 0


def _family_divides(n0: int, family: Family, strict: bool) -> bool:
    # Past its first member the residue of a family is constant modulo any divisor of its step
    d = n0 - 1
    return family.step % d == 0 and _divides(n0, family.first, strict)


def divisibility_decision(signature: SpectralSignature, strict: bool = False) -> CompletionDecision:
    """
    Does some rank n0 have (n0-1) | (n-1) for all but finitely many ranks n?

    With strict=True the condition reads (n0-1) | n instead. A bounded rank set
    is always YES_BOUNDED; no verdict is ever negative.
    """
    if signature.is_bounded:
        return CompletionDecision(Verdict.YES_BOUNDED, strict=strict)

    # n0 - 1 divides every step, so n0 never exceeds the largest step + 1
    bound = max(f.step for f in signature.families) + 1
    candidates = {n for n, _ in signature.finite_part}
    for family in signature.families:
        candidates.update(family.members_up_to(max(bound, family.first)))

    for n0 in sorted(candidates):
        if all(_family_divides(n0, family, strict) for family in signature.families):
            exceptions = tuple(n for n, _ in signature.finite_part if not _divides(n0, n, strict))
            logger(f"{signature.label}: divisibility holds with n0={n0}", 'debug')
            return CompletionDecision(Verdict.YES_DIVISIBILITY, n0, exceptions, strict)

    logger(f"{signature.label}: no rank satisfies the divisibility condition", 'debug')
    return CompletionDecision(Verdict.UNKNOWN, strict=strict)


def builtin_example_convergent() -> SpectralSignature:
    """Convergent sequences in ∏ Ł_{n+1}: one ideal of each rank n+1 and one of infinite rank"""
    return SpectralSignature(
        families=(AllRanksFrom(2),),
        infinite_rank_count=1,
        atoms=AtomData(families=(AllRanksFrom(1),), is_atomic=True),
        label='convergent',
    )


def sig_product(left: SpectralSignature, right: SpectralSignature) -> SpectralSignature:
    ranks = dict(left.finite_part)
    for n, c in right.finite_part:
        ranks[n] = add_counts(ranks.get(n, 0), c)

    atom_data = None
    if left.atoms is not None and right.atoms is not None:
        orders = dict(left.atoms.explicit)
        for o, c in right.atoms.explicit:
            orders[o] = add_counts(orders.get(o, 0), c)
        atom_data = AtomData(
            explicit=orders,
            families=left.atoms.families + right.atoms.families,
            is_atomic=left.atoms.is_atomic and right.atoms.is_atomic,
        )
    return SpectralSignature(
        finite_part=ranks,
        infinite_rank_count=add_counts(left.infinite_rank_count, right.infinite_rank_count),
        families=left.families + right.families,
        atoms=atom_data,
        label=f"{left.label}×{right.label}",
    )


def sig_has_trivial_completion(signature: SpectralSignature) -> bool:
    """No maximal ideal of finite rank"""
    return not signature.finite_part and not signature.families


def sig_bounded_split(signature: SpectralSignature) -> List[SpectralSignature]:
    """
    One signature per rank of a bounded rank set. Each part satisfies the
    divisibility condition with n0 equal to its rank, and the parts multiply
    back to the profinite signature of the original.
    """
    if not signature.is_bounded:
        raise PreconditionError(f"{signature.label} has an unbounded rank set")
    return [
        SpectralSignature(
            finite_part={n: c},
            atoms=AtomData(explicit={n - 1: c}, is_atomic=True),
            label=f"{signature.label}[{n}]",
        )
        for n, c in signature.finite_part
    ]
