"""
Finite MV-algebras.

An algebra is a carrier of integer ids 0..n-1 with a total ⊕ table, a ¬ table
and a distinguished 0. Łukasiewicz chains and their products additionally keep
an exact rational coordinate tuple per element. Every constructor validates the
MV axioms exhaustively before returning.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import (
    AxiomViolation,
    HomomorphismError,
    InvalidArgumentError,
    InvalidParameterError,
    InvariantViolation,
    ResourceLimitError,
    TableFormatError,
    UndefinedPartialSum,
)
from core.utils import get_settings, logger


class Infinite(enum.Enum):
    INFINITE = 'infinite'

    def __repr__(self) -> str:
        return 'INFINITE'


INFINITE = Infinite.INFINITE

ElementOrder = Union[int, Infinite]
Value = Tuple[Fraction, ...]

AXIOMS = (
    'commutativity',
    'associativity',
    'unit',
    'involution',
    'absorbing_unit',
    'lukasiewicz',
)

OPERATIONS = ('oplus', 'neg', 'leq', 'join', 'meet', 'otimes', 'partial_add', 'nfold')


@dataclass(frozen=True)
class Provenance:
    kind: str
    sizes: Tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind == 'chain':
            return f"chain({self.sizes[0]})"
        if self.kind == 'product':
            return f"product({list(self.sizes)})"
        return self.kind


TABLE = Provenance('table')


@dataclass(frozen=True)
class Element:
    id: int
    name: str
    value: Optional[Value] = None


# ----- Axiom validation -----

@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    passed: bool
    witness: Tuple[int, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    checks: Tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def first_failure(self) -> Optional[AxiomCheck]:
        return next((check for check in self.checks if not check.passed), None)

    def as_dict(self, names: Optional[Sequence[str]] = None) -> Dict[str, Dict]:
        def label(i: int) -> Union[int, str]:
            return names[i] if names is not None else i

        return {
            check.axiom: {
                'passed': check.passed,
                'witness': [label(i) for i in check.witness],
            }
            for check in self.checks
        }


def _first_hit(mask: np.ndarray) -> Tuple[int, ...]:
    hits = np.argwhere(mask)
    return tuple(int(v) for v in hits[0]) if len(hits) else ()


def _as_tables(oplus, neg, zero, size: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """Coerce tables to integer arrays and check totality over range(size)"""
    try:
        oplus_arr = np.asarray(oplus, dtype=np.int64)
        neg_arr = np.asarray(neg, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise TableFormatError(f"Tables are not integer arrays: {e}")

    if oplus_arr.shape != (size, size):
        raise TableFormatError(f"oplus table has shape {oplus_arr.shape}, expected {(size, size)}")
    if neg_arr.shape != (size,):
        raise TableFormatError(f"neg table has shape {neg_arr.shape}, expected {(size,)}")
    for name, arr in (('oplus', oplus_arr), ('neg', neg_arr)):
        if arr.size and (arr.min() < 0 or arr.max() >= size):
            raise TableFormatError(f"{name} table has entries outside the carrier")
    if isinstance(zero, bool) or not isinstance(zero, (int, np.integer)) or not 0 <= zero < size:
        raise TableFormatError(f"zero {zero!r} is not an element of the carrier")
    return oplus_arr, neg_arr, int(zero)


def validate_tables(oplus, neg, zero: int) -> ValidationReport:
    """
    Check the MV axioms on raw tables, reporting the first witness per axiom.

    Witnesses are the lexicographically first failing tuple of element ids.
    """
    size = len(neg)
    oplus, neg, zero = _as_tables(oplus, neg, zero, size)
    ids = np.arange(size)
    one = neg[zero]
    checks = []

    checks.append(_check('commutativity', oplus != oplus.T))

    assoc_witness: Tuple[int, ...] = ()
    for x in range(size):
        left = oplus[oplus[x]]          # left[y, z] = (x ⊕ y) ⊕ z
        right = oplus[x][oplus]         # right[y, z] = x ⊕ (y ⊕ z)
        hit = _first_hit(left != right)
        if hit:
            assoc_witness = (x,) + hit
            break
    checks.append(AxiomCheck('associativity', not assoc_witness, assoc_witness))

    checks.append(_check('unit', oplus[:, zero] != ids))
    checks.append(_check('involution', neg[neg] != ids))
    checks.append(_check('absorbing_unit', oplus[one] != one))

    inner = oplus[neg]                  # inner[x, y] = ¬x ⊕ y
    lhs = oplus[neg[inner], ids[None, :]]
    checks.append(_check('lukasiewicz', lhs != lhs.T))

    return ValidationReport(tuple(checks))


def _check(axiom: str, mask: np.ndarray) -> AxiomCheck:
    witness = _first_hit(mask)
    return AxiomCheck(axiom, not witness, witness)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.int64, copy=True)
    arr.setflags(write=False)
    return arr


def _guard_carrier(size: int, max_carrier: Optional[int]) -> None:
    limit = max_carrier if max_carrier is not None else get_settings().max_carrier
    if size > limit:
        raise ResourceLimitError(
            f"Carrier of size {size} exceeds the limit {limit}; raise it with --max-carrier",
            {'size': size, 'limit': limit},
        )


# ----- Algebras -----

class FiniteMvAlgebra:
    """Immutable finite MV-algebra on ids 0..size-1"""

    def __init__(
        self,
        names: Sequence[str],
        oplus,
        neg,
        zero: int,
        provenance: Provenance = TABLE,
        values: Optional[Sequence[Value]] = None,
        label: Optional[str] = None,
        check: bool = True,
        max_carrier: Optional[int] = None,
    ):
        names = tuple(str(n) for n in names)
        if not names:
            raise TableFormatError("Carrier must have at least one element")
        if len(set(names)) != len(names):
            raise TableFormatError("Element names must be unique")
        _guard_carrier(len(names), max_carrier)

        oplus_arr, neg_arr, zero = _as_tables(oplus, neg, zero, len(names))
        if check:
            report = validate_tables(oplus_arr, neg_arr, zero)
            if not report.ok:
                raise AxiomViolation(_violation_message(report, names), report)

        self.names = names
        self.oplus_table = _readonly(oplus_arr)
        self.neg_table = _readonly(neg_arr)
        self.zero = zero
        self.provenance = provenance
        self.values = tuple(tuple(v) for v in values) if values is not None else None
        self.label = label or f"table[{len(names)}]"
        self._index = {name: i for i, name in enumerate(names)}
        self._value_index = {v: i for i, v in enumerate(self.values)} if self.values else {}

    def __repr__(self) -> str:
        return f"FiniteMvAlgebra({self.label}, size={self.size})"

    def __len__(self) -> int:
        return self.size

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def one(self) -> int:
        return int(self.neg_table[self.zero])

    @property
    def is_trivial(self) -> bool:
        return self.size == 1

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """leq[x, y] iff ¬x ⊕ y = 1"""
        m = self.oplus_table[self.neg_table] == self.one
        m.setflags(write=False)
        return m

    @cached_property
    def join_table(self) -> np.ndarray:
        ids = np.arange(self.size)
        inner = self.oplus_table[self.neg_table]
        return _readonly(self.oplus_table[self.neg_table[inner], ids[None, :]])

    @cached_property
    def meet_table(self) -> np.ndarray:
        neg = self.neg_table
        return _readonly(neg[self.join_table[np.ix_(neg, neg)]])

    @cached_property
    def otimes_table(self) -> np.ndarray:
        neg = self.neg_table
        return _readonly(neg[self.oplus_table[np.ix_(neg, neg)]])

    def _id(self, x) -> int:
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or not 0 <= x < self.size:
            raise InvalidArgumentError(f"{x!r} is not an element id of {self.label}")
        return int(x)

    def oplus(self, x: int, y: int) -> int:
        return int(self.oplus_table[self._id(x), self._id(y)])

    def neg(self, x: int) -> int:
        return int(self.neg_table[self._id(x)])

    def otimes(self, x: int, y: int) -> int:
        return int(self.otimes_table[self._id(x), self._id(y)])

    def leq(self, x: int, y: int) -> bool:
        return bool(self.leq_matrix[self._id(x), self._id(y)])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[self._id(x), self._id(y)])

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[self._id(x), self._id(y)])

    def partial_add(self, x: int, y: int) -> int:
        """x + y, defined only when x ≤ ¬y"""
        if not self.leq(x, self.neg(y)):
            raise UndefinedPartialSum(
                f"{self.names[x]} + {self.names[y]} is undefined in {self.label}",
                {'x': self.names[x], 'y': self.names[y]},
            )
        return self.oplus(x, y)

    def nfold(self, a: int, n: int) -> int:
        """na = a + ... + a (n times), evaluated stepwise with partial addition"""
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise InvalidArgumentError(f"nfold needs a non-negative integer, got {n!r}")
        total = self.zero
        for step in range(1, n + 1):
            try:
                total = self.partial_add(total, a)
            except UndefinedPartialSum:
                raise UndefinedPartialSum(
                    f"{n}·{self.names[a]} is undefined in {self.label}: step {step} fails",
                    {'a': self.names[a], 'n': n, 'step': step},
                )
        return total

    def element(self, x: int) -> Element:
        x = self._id(x)
        return Element(x, self.names[x], self.values[x] if self.values else None)

    def lookup(self, key) -> int:
        """Element id by name, by rational value (chains) or by tuple of rationals"""
        if isinstance(key, str):
            if key in self._index:
                return self._index[key]
        elif isinstance(key, (int, Fraction)) and not isinstance(key, bool):
            value = (Fraction(key),)
            if value in self._value_index:
                return self._value_index[value]
        elif isinstance(key, tuple):
            value = tuple(Fraction(v) for v in key)
            if value in self._value_index:
                return self._value_index[value]
        raise InvalidArgumentError(f"No element {key!r} in {self.label}")

    @cached_property
    def is_chain(self) -> bool:
        leq = self.leq_matrix
        return bool((leq | leq.T).all())

    @cached_property
    def is_boolean(self) -> bool:
        ids = np.arange(self.size)
        return bool((self.oplus_table[ids, ids] == ids).all())


def _violation_message(report: ValidationReport, names: Sequence[str]) -> str:
    failure = report.first_failure
    witnesses = ', '.join(names[i] for i in failure.witness)
    return f"Axiom '{failure.axiom}' fails at ({witnesses})"


# ----- Constructors -----

def _step_name(k: int, top: int) -> str:
    if k == 0:
        return '0'
    if k == top:
        return '1'
    return f"{k}/{top}"


def make_chain(n: int, max_carrier: Optional[int] = None) -> FiniteMvAlgebra:
    """Łukasiewicz chain Ł_n on {0, 1/(n-1), ..., 1} with x ⊕ y = min(1, x+y), ¬x = 1-x"""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise InvalidParameterError(f"Chain size must be an integer >= 2, got {n!r}")
    _guard_carrier(n, max_carrier)
    top = n - 1
    steps = np.arange(n)
    algebra = FiniteMvAlgebra(
        names=[_step_name(k, top) for k in range(n)],
        oplus=np.minimum(steps[:, None] + steps[None, :], top),
        neg=top - steps,
        zero=0,
        provenance=Provenance('chain', (n,)),
        values=[(Fraction(k, top),) for k in range(n)],
        label=f"Ł_{n}",
        max_carrier=max_carrier,
    )
    logger(f"Built {algebra.label}", 'debug')
    return algebra


def make_trivial() -> FiniteMvAlgebra:
    """The one-element algebra, where 0 = 1"""
    return FiniteMvAlgebra(['0'], [[0]], [0], 0, label='trivial')


def product_index(coords: Sequence[int], sizes: Sequence[int]) -> int:
    """Position of a coordinate tuple in the lexicographic product carrier"""
    index = 0
    for c, s in zip(coords, sizes):
        index = index * s + int(c)
    return index


_NAME_SPECIALS = frozenset(',()"\\')


def _quoted(name: str) -> str:
    if not _NAME_SPECIALS.intersection(name):
        return name
    return '"' + name.replace('\\', '\\\\').replace('"', '\\"') + '"'


def _product_names(factors: Sequence[FiniteMvAlgebra], rows: List[List[int]]) -> List[str]:
    """Tuple names '(a, b)'; components that could run together are quoted"""
    names = ['(' + ', '.join(f.names[c] for f, c in zip(factors, row)) + ')' for row in rows]
    if len(set(names)) == len(names):
        return names
    logger("Component names collide in the product; quoting them", 'debug')
    return ['(' + ', '.join(_quoted(f.names[c]) for f, c in zip(factors, row)) + ')' for row in rows]


def direct_product(
    factors: Iterable[FiniteMvAlgebra],
    provenance: Provenance = TABLE,
    label: Optional[str] = None,
    max_carrier: Optional[int] = None,
) -> FiniteMvAlgebra:
    """Componentwise product; carrier in lexicographic order, last factor fastest"""
    factors = list(factors)
    if not factors:
        return make_trivial()
    sizes = [f.size for f in factors]
    _guard_carrier(math.prod(sizes), max_carrier)

    coords = np.array(list(itertools.product(*(range(s) for s in sizes))), dtype=np.int64)
    weights = [math.prod(sizes[i + 1:]) for i in range(len(sizes))]
    total = len(coords)

    oplus = np.zeros((total, total), dtype=np.int64)
    neg = np.zeros(total, dtype=np.int64)
    zero = 0
    for i, factor in enumerate(factors):
        c = coords[:, i]
        oplus += factor.oplus_table[c[:, None], c[None, :]] * weights[i]
        neg += factor.neg_table[c] * weights[i]
        zero += factor.zero * weights[i]

    names = _product_names(factors, coords.tolist())
    values = None
    if all(f.values is not None for f in factors):
        values = [
            tuple(itertools.chain.from_iterable(f.values[c] for f, c in zip(factors, row)))
            for row in coords.tolist()
        ]
    return FiniteMvAlgebra(
        names, oplus, neg, zero,
        provenance=provenance,
        values=values,
        label=label or '×'.join(f.label for f in factors),
        max_carrier=max_carrier,
    )


def make_product(sizes: Sequence[int], max_carrier: Optional[int] = None) -> FiniteMvAlgebra:
    """∏ Ł_{n_i} with componentwise operations"""
    sizes = list(sizes)
    if not sizes:
        raise InvalidParameterError("Product needs at least one chain; use make_trivial() for the trivial algebra")
    for n in sizes:
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise InvalidParameterError(f"Chain sizes must be integers >= 2, got {n!r}")
    _guard_carrier(math.prod(sizes), max_carrier)
    algebra = direct_product(
        [make_chain(n) for n in sizes],
        provenance=Provenance('product', tuple(sizes)),
        label='×'.join(f"Ł_{n}" for n in sizes),
        max_carrier=max_carrier,
    )
    logger(f"Built {algebra.label} with {algebra.size} elements", 'debug')
    return algebra


def make_table(
    elements: Sequence[str],
    oplus: Sequence[Sequence[str]],
    neg: Sequence[str],
    zero: str,
    label: Optional[str] = None,
    max_carrier: Optional[int] = None,
) -> FiniteMvAlgebra:
    """Algebra from named tables; rejected with the first violated axiom instance"""
    names, oplus_ids, neg_ids, zero_id = encode_tables(elements, oplus, neg, zero)
    _guard_carrier(len(names), max_carrier)
    report = validate_tables(oplus_ids, neg_ids, zero_id)
    if not report.ok:
        message = _violation_message(report, names)
        logger(f"Rejected table: {message}", 'warning')
        raise AxiomViolation(message, report)
    return FiniteMvAlgebra(
        names, oplus_ids, neg_ids, zero_id,
        label=label, check=False, max_carrier=max_carrier,
    )


def encode_tables(elements, oplus, neg, zero) -> Tuple[List[str], List[List[int]], List[int], int]:
    """Translate named tables to id tables, rejecting anything non-total"""
    names = [str(e) for e in elements]
    if not names:
        raise TableFormatError("Element list is empty")
    if len(set(names)) != len(names):
        raise TableFormatError("Element names must be unique")
    index = {name: i for i, name in enumerate(names)}

    def resolve(name, where: str) -> int:
        if name not in index:
            raise TableFormatError(f"Unknown element {name!r} in {where}")
        return index[name]

    if len(oplus) != len(names) or any(len(row) != len(names) for row in oplus):
        raise TableFormatError(f"oplus must be a {len(names)}x{len(names)} table")
    if len(neg) != len(names):
        raise TableFormatError(f"neg must list {len(names)} entries")

    oplus_ids = [
        [resolve(entry, f"oplus[{names[i]}][{names[j]}]") for j, entry in enumerate(row)]
        for i, row in enumerate(oplus)
    ]
    neg_ids = [resolve(entry, f"neg[{names[i]}]") for i, entry in enumerate(neg)]
    return names, oplus_ids, neg_ids, resolve(zero, 'zero')


def validate_axioms(algebra: FiniteMvAlgebra) -> ValidationReport:
    return validate_tables(algebra.oplus_table, algebra.neg_table, algebra.zero)


# ----- Element-level operations -----

def evaluate(algebra: FiniteMvAlgebra, op: str, args: Sequence[int]) -> Union[Element, bool]:
    """Apply a named operation; leq answers a boolean, everything else an element"""
    arity = {'neg': 1}.get(op, 2)
    if op not in OPERATIONS:
        raise InvalidArgumentError(f"Unknown operation {op!r}; expected one of {OPERATIONS}")
    if len(args) != arity:
        raise InvalidArgumentError(f"{op} takes {arity} argument(s), got {len(args)}")

    if op == 'leq':
        return algebra.leq(*args)
    if op == 'nfold':
        return algebra.element(algebra.nfold(*args))
    return algebra.element(getattr(algebra, op)(*args))


def element_order(algebra: FiniteMvAlgebra, a: int) -> ElementOrder:
    """|a| = sup{n >= 1 : na is defined}; INFINITE for a = 0"""
    if algebra._id(a) == algebra.zero:
        return INFINITE
    n, total = 1, a
    complement = algebra.neg(a)
    while algebra.leq(total, complement):
        total = algebra.oplus(total, a)
        n += 1
        if n > algebra.size:
            raise InvariantViolation(f"Order of {algebra.names[a]} does not stabilise in {algebra.label}")
    return n


def atoms(algebra: FiniteMvAlgebra) -> Tuple[int, ...]:
    """Minimal elements of the carrier without 0"""
    below = algebra.leq_matrix.sum(axis=0)   # below[x] = #{y : y <= x}
    return tuple(
        x for x in range(algebra.size)
        if x != algebra.zero and below[x] == 2
    )


def is_atomic(algebra: FiniteMvAlgebra) -> bool:
    """Every nonzero element dominates an atom"""
    found = list(atoms(algebra))
    if not found:
        return algebra.is_trivial
    dominated = algebra.leq_matrix[found].any(axis=0)
    nonzero = np.arange(algebra.size) != algebra.zero
    return bool(dominated[nonzero].all())


def subalgebra(
    algebra: FiniteMvAlgebra,
    members: Iterable[int],
    label: Optional[str] = None,
) -> Tuple[FiniteMvAlgebra, 'Homomorphism']:
    """Subalgebra on the given members with its inclusion map"""
    members = sorted(set(int(m) for m in members))
    position = {m: i for i, m in enumerate(members)}
    if algebra.zero not in position:
        raise InvalidArgumentError(f"Subalgebra of {algebra.label} must contain 0")

    try:
        oplus = [[position[algebra.oplus(x, y)] for y in members] for x in members]
        neg = [position[algebra.neg(x)] for x in members]
    except KeyError as e:
        raise InvalidArgumentError(f"Members are not closed under the operations: {algebra.names[e.args[0]]}")

    values = [algebra.values[m] for m in members] if algebra.values else None
    sub = FiniteMvAlgebra(
        [algebra.names[m] for m in members], oplus, neg, position[algebra.zero],
        values=values, label=label or f"sub({algebra.label})",
    )
    return sub, Homomorphism(sub, algebra, tuple(members)).verify()


def boolean_center(algebra: FiniteMvAlgebra) -> Tuple[FiniteMvAlgebra, 'Homomorphism']:
    """Subalgebra of idempotents x ⊕ x = x with its embedding"""
    idempotents = [x for x in range(algebra.size) if algebra.oplus(x, x) == x]
    center, embedding = subalgebra(algebra, idempotents, label=f"B({algebra.label})")
    for x in range(center.size):
        if center.join(x, center.neg(x)) != center.one or center.meet(x, center.neg(x)) != center.zero:
            raise InvariantViolation(f"¬{center.names[x]} is not a complement in {center.label}")
    logger(f"Boolean center of {algebra.label} has {center.size} elements", 'debug')
    return center, embedding


# ----- Chain multisets -----

@dataclass(frozen=True)
class ChainMultiset:
    """Multiset of chain sizes, kept sorted"""
    entries: Tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(sorted(int(n) for n in self.entries))
        if any(n < 2 for n in entries):
            raise InvalidParameterError(f"Chain sizes must be >= 2, got {entries}")
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def of(cls, sizes: Iterable[int]) -> 'ChainMultiset':
        return cls(tuple(sizes))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: 'ChainMultiset') -> 'ChainMultiset':
        return ChainMultiset(self.entries + other.entries)

    def __str__(self) -> str:
        return '{' + ','.join(str(n) for n in self.entries) + '}'

    @property
    def product_size(self) -> int:
        return math.prod(self.entries)

    def counts(self) -> Dict[int, int]:
        result: Dict[int, int] = {}
        for n in self.entries:
            result[n] = result.get(n, 0) + 1
        return result


# ----- Homomorphisms and witnesses -----

@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteMvAlgebra
    target: FiniteMvAlgebra
    mapping: Tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(v) for v in self.mapping)
        if len(mapping) != self.source.size:
            raise InvalidArgumentError(
                f"Map from {self.source.label} must have {self.source.size} entries, got {len(mapping)}")
        if any(not 0 <= v < self.target.size for v in mapping):
            raise InvalidArgumentError(f"Map leaves the carrier of {self.target.label}")
        object.__setattr__(self, 'mapping', mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    @cached_property
    def array(self) -> np.ndarray:
        return _readonly(np.array(self.mapping, dtype=np.int64))

    def failure(self) -> Optional[str]:
        """First preservation failure in fixed order (0, ¬, ⊕), or None"""
        s, t, m = self.source, self.target, self.array
        if m[s.zero] != t.zero:
            return f"0 maps to {t.names[m[s.zero]]}"
        bad = np.flatnonzero(m[s.neg_table] != t.neg_table[m])
        if bad.size:
            return f"¬ not preserved at x={s.names[bad[0]]}"
        hit = _first_hit(m[s.oplus_table] != t.oplus_table[m[:, None], m[None, :]])
        if hit:
            x, y = hit
            return f"⊕ not preserved at x={s.names[x]}, y={s.names[y]}"
        return None

    def verify(self) -> 'Homomorphism':
        problem = self.failure()
        if problem:
            raise HomomorphismError(f"{self.source.label} -> {self.target.label}: {problem}")
        return self

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.size

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def kernel(self) -> frozenset:
        return frozenset(x for x, v in enumerate(self.mapping) if v == self.target.zero)

    def then(self, other: 'Homomorphism') -> 'Homomorphism':
        """Composite: apply self first, then other"""
        if other.source is not self.target:
            raise InvalidArgumentError(f"Cannot compose into {other.source.label} from {self.target.label}")
        return Homomorphism(self.source, other.target, tuple(other.mapping[v] for v in self.mapping))

    def inverse(self) -> 'Homomorphism':
        if not self.is_bijective:
            raise InvalidArgumentError(f"Map {self.source.label} -> {self.target.label} is not bijective")
        inverse = [0] * self.target.size
        for x, v in enumerate(self.mapping):
            inverse[v] = x
        return Homomorphism(self.target, self.source, tuple(inverse))

    def pairs(self) -> List[Tuple[str, str]]:
        return [(self.source.names[x], self.target.names[v]) for x, v in enumerate(self.mapping)]


def identity_map(algebra: FiniteMvAlgebra) -> Homomorphism:
    return Homomorphism(algebra, algebra, tuple(range(algebra.size)))


@dataclass(frozen=True, eq=False)
class IsoWitness:
    forward: Homomorphism
    backward: Homomorphism

    @property
    def source(self) -> FiniteMvAlgebra:
        return self.forward.source

    @property
    def target(self) -> FiniteMvAlgebra:
        return self.forward.target

    @classmethod
    def from_bijection(cls, forward: Homomorphism) -> 'IsoWitness':
        return cls(forward, forward.inverse()).verify()

    @classmethod
    def identity(cls, algebra: FiniteMvAlgebra) -> 'IsoWitness':
        return cls(identity_map(algebra), identity_map(algebra)).verify()

    def verify(self) -> 'IsoWitness':
        """Both maps preserve the operations and compose to identities"""
        if self.backward.source is not self.target or self.backward.target is not self.source:
            raise HomomorphismError("Witness maps do not run between the same two algebras")
        self.forward.verify()
        self.backward.verify()
        there_and_back = self.backward.array[self.forward.array]
        back_and_there = self.forward.array[self.backward.array]
        if not (np.array_equal(there_and_back, np.arange(self.source.size))
                and np.array_equal(back_and_there, np.arange(self.target.size))):
            raise HomomorphismError(f"Witness {self.source.label} ≅ {self.target.label} is not mutually inverse")
        return self

    def then(self, other: 'IsoWitness') -> 'IsoWitness':
        return IsoWitness(self.forward.then(other.forward), other.backward.then(self.backward))

    def inverse(self) -> 'IsoWitness':
        return IsoWitness(self.backward, self.forward)

    def pairs(self) -> List[Tuple[str, str]]:
        return self.forward.pairs()
