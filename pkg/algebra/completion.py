"""
Profinite and MacNeille completions of finite MV-algebras, and exhaustive
checks of the structure theorems relating them.

Two independent routes to the profinite completion are kept side by side:
the inverse limit of all finite quotients, and the product of the quotients
by maximal ideals of finite rank. Every isomorphism returned here has been
verified element by element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from algebra.ideals import (
    Ideal,
    Quotient,
    all_ideals,
    ideal_generated,
    is_prime,
    is_principal,
    is_semisimple,
    max_f,
    max_ideals,
    prime_ideals,
    quotient,
    radical,
    rank,
)
from algebra.isomorphism import canonical_decomposition, is_isomorphic
from algebra.lattice import FinitePoset, dedekind_macneille
from algebra.mv_core import (
    ChainMultiset,
    FiniteMvAlgebra,
    Homomorphism,
    IsoWitness,
    atoms,
    boolean_center,
    direct_product,
    element_order,
    is_atomic,
    make_product,
    make_trivial,
    product_index,
)
from core.errors import HomomorphismError, PreconditionError, TheoremViolation
from core.utils import logger

METHODS = ('inverse-limit', 'maxf-product', 'macneille')


@dataclass(frozen=True, eq=False)
class CompletionReport:
    subject: FiniteMvAlgebra
    method: str
    multiset: ChainMultiset
    witness: Optional[IsoWitness] = None
    diagnostics: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"Unknown completion method {self.method!r}")
        if self.witness is not None:
            self.witness.verify()


def _as_theorem(check: str, error: Exception) -> TheoremViolation:
    logger(f"{check} failed: {error}", 'warning')
    return TheoremViolation(f"{check}: {error}")


# ----- Inverse system of finite quotients -----

@dataclass(frozen=True, eq=False)
class InverseSystemInstance:
    """
    Ideals ordered by reverse inclusion, their quotients, and the transition
    maps A/I -> A/J for every I ⊆ J, keyed by (index of I, index of J).
    """
    algebra: FiniteMvAlgebra
    ideals: Tuple[Ideal, ...]
    nodes: Tuple[Quotient, ...]
    transitions: Dict[Tuple[int, int], Homomorphism] = field(repr=False)

    def transition(self, smaller: int, larger: int) -> Homomorphism:
        try:
            return self.transitions[smaller, larger]
        except KeyError:
            raise PreconditionError(
                f"No transition: {self.ideals[smaller]!r} is not contained in {self.ideals[larger]!r}")

    def index_of(self, ideal: Ideal) -> int:
        for i, candidate in enumerate(self.ideals):
            if candidate.members == ideal.members:
                return i
        raise PreconditionError(f"{ideal!r} is not an index of the inverse system of {self.algebra.label}")

    def check_coherence(self) -> None:
        """Identity on each node and φ_KJ ∘ φ_JI = φ_KI along every chain I ⊆ J ⊆ K"""
        count = len(self.ideals)
        for i in range(count):
            own = self.transitions[i, i].array
            if not np.array_equal(own, np.arange(self.nodes[i].algebra.size)):
                raise TheoremViolation(f"Transition at {self.ideals[i]!r} is not the identity")
        for (i, j), inner in self.transitions.items():
            for k in range(count):
                outer = self.transitions.get((j, k))
                if outer is None:
                    continue
                if not np.array_equal(outer.array[inner.array], self.transitions[i, k].array):
                    raise TheoremViolation(
                        f"Transitions do not commute along {self.ideals[i]!r} ⊆ "
                        f"{self.ideals[j]!r} ⊆ {self.ideals[k]!r}")
        logger(f"Inverse system of {self.algebra.label}: {len(self.transitions)} coherent transitions", 'debug')


def _transition(algebra: FiniteMvAlgebra, source: Quotient, target: Quotient) -> Homomorphism:
    representative: Dict[int, int] = {}
    for a, c in enumerate(source.projection.mapping):
        representative.setdefault(c, a)
    mapping = tuple(target.projection(representative[c]) for c in range(source.algebra.size))
    through = np.array(mapping)[source.projection.array]
    if not np.array_equal(through, target.projection.array):
        raise TheoremViolation(f"Transition {source.algebra.label} -> {target.algebra.label} is not well defined")
    return Homomorphism(source.algebra, target.algebra, mapping).verify()


@lru_cache(maxsize=128)
def build_inverse_system(algebra: FiniteMvAlgebra) -> InverseSystemInstance:
    ideals = all_ideals(algebra)
    nodes = tuple(quotient(algebra, ideal) for ideal in ideals)
    transitions = {}
    for i, small in enumerate(ideals):
        for j, large in enumerate(ideals):
            if small.members <= large.members:
                transitions[i, j] = _transition(algebra, nodes[i], nodes[j])
    return InverseSystemInstance(algebra, ideals, nodes, transitions)


class _InverseLimit(NamedTuple):
    algebra: FiniteMvAlgebra
    system: InverseSystemInstance
    tuples: np.ndarray          # tuples[q, k]: coordinate at ideal k of the q-th compatible family
    witness: IsoWitness


@lru_cache(maxsize=128)
def _inverse_limit(algebra: FiniteMvAlgebra) -> _InverseLimit:
    system = build_inverse_system(algebra)
    system.check_coherence()
    ideals = system.ideals
    count = len(ideals)

    least = system.index_of(ideal_generated(algebra, ()))
    if any((least, k) not in system.transitions for k in range(count)):
        raise TheoremViolation(f"{{0}} is not below every ideal of {algebra.label}")
    base = system.nodes[least].algebra

    # A compatible family is fixed by its value at {0}: α(I) = φ_{I,{0}}(α({0}))
    tuples = np.stack([system.transitions[least, k].array for k in range(count)], axis=1)
    for (i, j), phi in system.transitions.items():
        if not np.array_equal(phi.array[tuples[:, i]], tuples[:, j]):
            raise TheoremViolation(f"Forced family is not compatible on {ideals[i]!r} ⊆ {ideals[j]!r}")
    if len({tuple(row) for row in tuples.tolist()}) != base.size:
        raise TheoremViolation("Distinct values at {0} give equal families")

    oplus = base.oplus_table.copy()
    neg = base.neg_table.copy()
    for k, node in enumerate(system.nodes):
        column = tuples[:, k]
        summed = node.algebra.oplus_table[column[:, None], column[None, :]]
        if not np.array_equal(column[oplus], summed):
            raise TheoremViolation(f"Families are not closed under ⊕ at {ideals[k]!r}")
        if not np.array_equal(column[neg], node.algebra.neg_table[column]):
            raise TheoremViolation(f"Families are not closed under ¬ at {ideals[k]!r}")

    # Each family is named by its coordinate at {0}
    names = [f"lim{name}" for name in base.names]
    limit = FiniteMvAlgebra(names, oplus, neg, base.zero, label=f"lim {algebra.label}")
    canonical = Homomorphism(algebra, limit, system.nodes[least].projection.mapping)
    try:
        witness = IsoWitness.from_bijection(canonical)
    except (HomomorphismError, ValueError) as e:
        raise _as_theorem(f"{algebra.label} ≅ its inverse limit", e)
    logger(f"Inverse limit of {algebra.label}: {count} nodes, {limit.size} families", 'debug')
    return _InverseLimit(limit, system, tuples, witness)


def inverse_limit_profinite(algebra: FiniteMvAlgebra) -> Tuple[FiniteMvAlgebra, CompletionReport]:
    """Compatible families over all finite quotients, with operations taken coordinatewise"""
    built = _inverse_limit(algebra)
    report = CompletionReport(
        subject=algebra,
        method='inverse-limit',
        multiset=canonical_decomposition(built.algebra).multiset,
        witness=built.witness,
        diagnostics=(
            f"{len(built.system.ideals)} ideals in the index set",
            f"{len(built.system.transitions)} transition maps",
        ),
    )
    return built.algebra, report


# ----- Product over maximal ideals of finite rank -----

class _MaxfProduct(NamedTuple):
    algebra: FiniteMvAlgebra
    factors: Tuple[Ideal, ...]
    quotients: Tuple[Quotient, ...]
    witness: IsoWitness


@lru_cache(maxsize=256)
def _maxf_product(algebra: FiniteMvAlgebra) -> _MaxfProduct:
    ranked = sorted((rank(algebra, m), i, m) for i, m in enumerate(max_f(algebra)))
    factors = tuple(m for _, _, m in ranked)
    quotients = tuple(quotient(algebra, m) for m in factors)
    product = direct_product(
        [q.algebra for q in quotients],
        label='∏ ' + '×'.join(q.algebra.label for q in quotients) if quotients else None,
    )
    sizes = [q.algebra.size for q in quotients]
    mapping = tuple(
        product_index([q.projection(a) for q in quotients], sizes)
        for a in range(algebra.size)
    )
    try:
        witness = IsoWitness.from_bijection(Homomorphism(algebra, product, mapping))
    except (HomomorphismError, ValueError) as e:
        raise TheoremViolation(f"{algebra.label} is not the product of its maximal quotients: {e}")
    logger(f"Max_f product of {algebra.label}: {len(factors)} factor(s)", 'debug')
    return _MaxfProduct(product, factors, quotients, witness)


def profinite_product(algebra: FiniteMvAlgebra) -> Tuple[FiniteMvAlgebra, CompletionReport]:
    """∏ A/M over the maximal ideals of finite rank, factors sorted by rank"""
    built = _maxf_product(algebra)
    report = CompletionReport(
        subject=algebra,
        method='maxf-product',
        multiset=ChainMultiset.of(q.algebra.size for q in built.quotients),
        witness=built.witness,
        diagnostics=tuple(f"{m!r} has rank {q.algebra.size}" for m, q in zip(built.factors, built.quotients)),
    )
    return built.algebra, report


def verify_main_theorem(algebra: FiniteMvAlgebra) -> IsoWitness:
    """
    Inverse limit ≅ Max_f product, by keeping only the coordinates of each
    compatible family that sit at maximal ideals.
    """
    limit = _inverse_limit(algebra)
    product = _maxf_product(algebra)
    columns = [limit.system.index_of(m) for m in product.factors]
    sizes = [q.algebra.size for q in product.quotients]
    mapping = tuple(
        product_index([row[k] for k in columns], sizes)
        for row in limit.tuples.tolist()
    )
    try:
        witness = IsoWitness.from_bijection(Homomorphism(limit.algebra, product.algebra, mapping))
    except (HomomorphismError, ValueError) as e:
        raise TheoremViolation(f"Inverse limit of {algebra.label} is not its Max_f product: {e}")

    through_limit = limit.witness.forward.then(witness.forward)
    if through_limit.mapping != product.witness.forward.mapping:
        raise TheoremViolation(f"Completion maps of {algebra.label} do not commute")
    logger(f"Main theorem holds for {algebra.label} ({algebra.size} elements)", 'debug')
    return witness


@dataclass(frozen=True, eq=False)
class SelfIsoDecision:
    holds: bool
    witness: Optional[IsoWitness]
    generators: Tuple[Tuple[Ideal, Optional[int]], ...]

    @property
    def all_principal(self) -> bool:
        return all(g is not None for _, g in self.generators)


def check_self_iso(algebra: FiniteMvAlgebra) -> SelfIsoDecision:
    """A ≅ Â iff A is profinite and every finite-rank maximal ideal is principal"""
    built = _maxf_product(algebra)
    generators = tuple((m, is_principal(algebra, m)) for m in built.factors)
    decision = SelfIsoDecision(True, built.witness, generators)
    if decision.holds != decision.all_principal:
        raise TheoremViolation(f"Self-isomorphism and principality disagree on {algebra.label}")
    return decision


# ----- Boolean center and regularity -----

def regularity_violations(algebra: FiniteMvAlgebra) -> List[Tuple[Ideal, Ideal]]:
    """Primes N of B(A) whose generated ideal in A is not prime, paired with that ideal"""
    center, embedding = boolean_center(algebra)
    violations = []
    for prime in prime_ideals(center):
        generated = ideal_generated(algebra, [embedding(x) for x in prime.members])
        if not generated.is_proper or not is_prime(algebra, generated):
            violations.append((prime, generated))
    return violations


def is_regular(algebra: FiniteMvAlgebra) -> bool:
    return not regularity_violations(algebra)


def check_boolean_center_preservation(algebra: FiniteMvAlgebra) -> IsoWitness:
    """B(Â) ≅ the profinite completion of B(A), for regular A"""
    violations = regularity_violations(algebra)
    if violations:
        prime, generated = violations[0]
        raise PreconditionError(
            f"{algebra.label} is not regular: prime {prime!r} of the Boolean center generates {generated!r}",
            {'prime': prime.names(), 'generated': generated.names()},
        )
    center_of_completion, _ = boolean_center(_maxf_product(algebra).algebra)
    center, _ = boolean_center(algebra)
    completion_of_center = _maxf_product(center).algebra
    witness = is_isomorphic(center_of_completion, completion_of_center)
    if witness is None:
        raise TheoremViolation(f"Boolean center of the completion of {algebra.label} is not preserved")
    return witness


def check_product_preservation(first: FiniteMvAlgebra, second: FiniteMvAlgebra) -> IsoWitness:
    """(A1 × A2)^ ≅ Â1 × Â2; maximal ideals of A1 × A2 are M1 × A2 and A1 × M2"""
    joint = direct_product([first, second])
    sizes = (first.size, second.size)
    expected = set()
    for m in max_ideals(first):
        expected.add(frozenset(product_index((x, y), sizes) for x in m.members for y in range(second.size)))
    for m in max_ideals(second):
        expected.add(frozenset(product_index((x, y), sizes) for x in range(first.size) for y in m.members))
    found = {m.members for m in max_ideals(joint)}
    if found != expected:
        raise TheoremViolation(f"Maximal ideals of {joint.label} are not M1×A2 and A1×M2")

    split = direct_product([_maxf_product(first).algebra, _maxf_product(second).algebra])
    witness = is_isomorphic(_maxf_product(joint).algebra, split)
    if witness is None:
        raise TheoremViolation(f"Completion of {joint.label} is not the product of the completions")
    logger(f"Product preservation holds for {first.label} and {second.label}", 'debug')
    return witness


def check_radical_quotient(algebra: FiniteMvAlgebra) -> IsoWitness:
    """A/Rad(A) and A have isomorphic profinite completions"""
    reduced = quotient(algebra, radical(algebra)).algebra
    witness = is_isomorphic(_maxf_product(reduced).algebra, _maxf_product(algebra).algebra)
    if witness is None:
        raise TheoremViolation(f"Radical quotient of {algebra.label} changes the completion")
    return witness


# ----- MacNeille completion -----

def _require_semisimple(algebra: FiniteMvAlgebra) -> None:
    if not is_semisimple(algebra):
        raise PreconditionError(
            f"{algebra.label} is not semisimple; radical {radical(algebra)!r}",
            {'radical': radical(algebra).names()},
        )


def macneille_mv(algebra: FiniteMvAlgebra) -> Tuple[FiniteMvAlgebra, CompletionReport]:
    """
    ∏ Ł_{|a|+1} over the atoms of a semisimple atomic algebra.

    The result's lattice order is checked against the Dedekind–MacNeille
    completion of the algebra's order.
    """
    _require_semisimple(algebra)
    if not is_atomic(algebra):
        raise PreconditionError(f"{algebra.label} is not atomic")

    sizes = sorted(element_order(algebra, a) + 1 for a in atoms(algebra))
    completion = make_product(sizes) if sizes else make_trivial()
    witness = is_isomorphic(algebra, completion)
    if witness is None:
        raise TheoremViolation(f"{algebra.label} is not isomorphic to ∏ Ł_(|a|+1) over its atoms")

    cuts = dedekind_macneille(FinitePoset.of_algebra(algebra))
    mapping = [cuts.embedding[witness.backward(r)] for r in range(completion.size)]
    if not FinitePoset.of_algebra(completion).is_order_isomorphism(cuts.lattice, mapping):
        raise TheoremViolation(f"MacNeille product and cut lattice of {algebra.label} differ")

    report = CompletionReport(
        subject=algebra,
        method='macneille',
        multiset=ChainMultiset.of(sizes),
        witness=witness,
        diagnostics=(f"{len(sizes)} atom(s)", f"{len(cuts.lattice)} cuts"),
    )
    logger(f"MacNeille completion of {algebra.label} is {completion.label}", 'debug')
    return completion, report


@dataclass(frozen=True, eq=False)
class MacCriterionDecision:
    holds: bool
    tau: Tuple[Tuple[int, Ideal], ...] = ()
    witness: Optional[IsoWitness] = None
    diagnostics: Tuple[str, ...] = ()


def _rank_respecting(pairs: Sequence[Tuple[int, Ideal]], orders: Dict[int, int], ranks: Dict[Ideal, int]) -> bool:
    distinct = len({m.members for _, m in pairs}) == len(pairs)
    return distinct and all(ranks[m] == orders[a] + 1 for a, m in pairs)


def check_mac_criterion(algebra: FiniteMvAlgebra) -> MacCriterionDecision:
    """
    Â ≅ Ā iff A is atomic and some bijection τ from atoms to Max_f(A) has
    rank(τ(a)) = |a| + 1.
    """
    _require_semisimple(algebra)
    if not is_atomic(algebra):
        return MacCriterionDecision(False, diagnostics=(f"{algebra.label} is not atomic",))

    found = atoms(algebra)
    maximal = max_f(algebra)
    orders = {a: element_order(algebra, a) for a in found}
    ranks = {m: rank(algebra, m) for m in maximal}
    from_atoms = ChainMultiset.of(orders[a] + 1 for a in found)
    from_ideals = ChainMultiset.of(ranks.values())
    if from_atoms != from_ideals:
        return MacCriterionDecision(False, diagnostics=(
            f"atom orders + 1 give {from_atoms}", f"maximal ranks give {from_ideals}"))

    # τ(a) is the maximal ideal missing a; fall back to pairing by sorted rank
    tau = []
    for a in found:
        missing = [m for m in maximal if a not in m.members]
        if len(missing) != 1:
            break
        tau.append((a, missing[0]))
    if len(tau) != len(found) or not _rank_respecting(tau, orders, ranks):
        by_rank = sorted(maximal, key=lambda m: (ranks[m], m.sorted_members))
        tau = list(zip(sorted(found, key=lambda a: (orders[a], a)), by_rank))
    if not _rank_respecting(tau, orders, ranks):
        raise TheoremViolation(f"No rank-respecting bijection for {algebra.label} despite equal multisets")

    witness = is_isomorphic(_maxf_product(algebra).algebra, macneille_mv(algebra)[0])
    if witness is None:
        raise TheoremViolation(f"Profinite and MacNeille completions of {algebra.label} differ")
    return MacCriterionDecision(True, tuple(tau), witness, (f"multiset {from_atoms}",))


# ----- Boolean algebras -----

def powerset_algebra(points: Sequence[str]) -> FiniteMvAlgebra:
    """Subsets of the points; ⊕ is union, ¬ is complement. Subset ids are bitmasks."""
    points = [str(p) for p in points]
    if len(set(points)) != len(points):
        raise PreconditionError("Power-set points must be distinct")
    size = 1 << len(points)
    ids = np.arange(size)
    names = [
        '{' + ','.join(p for i, p in enumerate(points) if mask >> i & 1) + '}' if mask else '∅'
        for mask in range(size)
    ]
    return FiniteMvAlgebra(
        names, ids[:, None] | ids[None, :], (size - 1) ^ ids, 0,
        label=f"P({len(points)})",
    )


def _require_boolean(algebra: FiniteMvAlgebra) -> None:
    if not algebra.is_boolean:
        x = next(x for x in range(algebra.size) if algebra.oplus(x, x) != x)
        raise PreconditionError(
            f"{algebra.label} is not Boolean: {algebra.names[x]} ⊕ {algebra.names[x]} ≠ {algebra.names[x]}",
            {'witness': algebra.names[x]},
        )


def boolean_profinite_powerset(algebra: FiniteMvAlgebra) -> IsoWitness:
    """Completion of a finite Boolean algebra ≅ power set of its maximal ideals"""
    _require_boolean(algebra)
    built = _maxf_product(algebra)
    powerset = powerset_algebra([f"M{i}" for i in range(len(built.factors))])
    mapping = [0] * built.algebra.size
    for b in range(algebra.size):
        support = sum(1 << i for i, q in enumerate(built.quotients) if q.projection(b) != q.algebra.zero)
        mapping[built.witness.forward(b)] = support
    try:
        witness = IsoWitness.from_bijection(Homomorphism(built.algebra, powerset, tuple(mapping)))
    except (HomomorphismError, ValueError) as e:
        raise _as_theorem(f"Completion of {algebra.label} ≅ {powerset.label}", e)
    return witness


def boolean_atoms_match_ultrafilters(algebra: FiniteMvAlgebra) -> bool:
    _require_boolean(algebra)
    return len(atoms(algebra)) == len(max_ideals(algebra))
