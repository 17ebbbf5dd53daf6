import math

import pytest

from algebra.ideals import (
    Ideal,
    all_ideals,
    ideal_generated,
    is_ideal,
    is_maximal,
    is_maximal_by_inclusion,
    is_prime,
    is_principal,
    is_semisimple,
    max_ideals,
    prime_ideals,
    prime_violation,
    quotient,
    radical,
    rank,
    s_decomposition,
)
from algebra.mv_core import make_chain, make_product
from core.errors import InvalidArgumentError, ResourceLimitError
from core.utils import apply_overrides
from tests.corpus import CORPUS, corpus_id


def by_names(algebra, *names):
    return Ideal(algebra, frozenset(algebra.lookup(n) for n in names))


# ----- Generation and Enumeration Tests -----
class TestEnumeration:
    def test_generated_ideal(self, l2xl3):
        ideal = ideal_generated(l2xl3, [l2xl3.lookup('(0, 1/2)')])
        assert ideal.names() == ['(0, 0)', '(0, 1/2)', '(0, 1)']

    def test_empty_generators_give_zero_ideal(self, l2xl3):
        assert ideal_generated(l2xl3, []).members == frozenset({l2xl3.zero})

    def test_ideal_membership_check(self, l2xl3):
        assert is_ideal(l2xl3, [0, 3])
        assert not is_ideal(l2xl3, [0, 4])
        with pytest.raises(InvalidArgumentError):
            Ideal(l2xl3, frozenset({0, 4}))

    @pytest.mark.parametrize('sizes', [[3], [2, 3], [2, 2, 2], [4, 5], [2, 3, 4]])
    def test_ideal_count_is_power_of_two(self, sizes):
        assert len(all_ideals(make_product(sizes))) == 2 ** len(sizes)

    def test_enumeration_order_is_fixed(self, l2xl3):
        keys = [ideal.sorted_members for ideal in all_ideals(l2xl3)]
        assert keys == sorted(keys)

    def test_ideal_limit(self, restore_settings):
        apply_overrides(max_ideals=3)
        with pytest.raises(ResourceLimitError):
            all_ideals(make_product([2, 2, 3]))


# ----- Prime and Maximal Ideal Tests -----
class TestClassification:
    def test_maximal_ideals_of_product(self, l2xl3):
        found = [m.names() for m in max_ideals(l2xl3)]
        assert found == [['(0, 0)', '(0, 1/2)', '(0, 1)'], ['(0, 0)', '(1, 0)']]

    def test_ranks(self, l2xl3):
        assert [rank(l2xl3, m) for m in max_ideals(l2xl3)] == [2, 3]

    def test_rank_needs_maximal(self, l2xl3):
        with pytest.raises(InvalidArgumentError):
            rank(l2xl3, by_names(l2xl3, '(0, 0)'))

    def test_zero_ideal_is_not_prime_in_product(self, l2xl3):
        zero = by_names(l2xl3, '(0, 0)')
        x, y = prime_violation(l2xl3, zero)
        assert l2xl3.meet(x, y) == l2xl3.zero
        assert not is_prime(l2xl3, zero)

    def test_zero_ideal_is_prime_in_chain(self, chain3):
        assert is_prime(chain3, ideal_generated(chain3, []))

    def test_improper_ideal_is_rejected(self, chain3):
        whole = Ideal(chain3, frozenset(range(3)))
        with pytest.raises(InvalidArgumentError):
            is_prime(chain3, whole)
        with pytest.raises(InvalidArgumentError):
            is_maximal(chain3, whole)
        assert not is_maximal_by_inclusion(chain3, whole)

    def test_primes_of_product(self, l2xl3):
        assert prime_ideals(l2xl3) == max_ideals(l2xl3)

    def test_foreign_ideal(self, l2xl3):
        other = make_product([2, 3])
        with pytest.raises(InvalidArgumentError):
            is_maximal(other, max_ideals(l2xl3)[0])

    def test_principal_generators(self, l2xl3):
        generators = [l2xl3.names[is_principal(l2xl3, m)] for m in max_ideals(l2xl3)]
        assert generators == ['(0, 1)', '(1, 0)']


# ----- Quotient Tests -----
class TestQuotients:
    def test_quotient_by_maximal_is_chain(self, l2xl3):
        _, second = max_ideals(l2xl3)
        q = quotient(l2xl3, second)
        assert q.algebra.size == 3 and q.algebra.is_chain
        assert q.algebra.label == 'Ł_2×Ł_3/⟨(1, 0)⟩'
        assert q.projection.kernel() == second.members

    def test_quotient_by_zero_is_isomorphic_copy(self, l2xl3):
        q = quotient(l2xl3, ideal_generated(l2xl3, []))
        assert q.algebra.size == 6 and q.projection.is_bijective

    def test_radical_and_semisimplicity(self, l2xl3, trivial):
        assert radical(l2xl3).names() == ['(0, 0)']
        assert is_semisimple(l2xl3)
        assert is_semisimple(trivial)


# ----- Decomposition over Maximal Ideals -----
class TestSDecomposition:
    def test_zero_ideal(self, l2xl3):
        decomposition = s_decomposition(l2xl3, ideal_generated(l2xl3, []))
        assert decomposition.ranks.entries == (2, 3)
        assert decomposition.iso.source.size == 6

    def test_improper_ideal_has_no_factors(self, chain3):
        decomposition = s_decomposition(chain3, Ideal(chain3, frozenset(range(3))))
        assert decomposition.factors == ()
        assert decomposition.iso.target.size == 1

    @pytest.mark.corpus
    @pytest.mark.parametrize('sizes', CORPUS, ids=corpus_id)
    def test_every_ideal_decomposes(self, sizes):
        algebra = make_product(sizes)
        ideals = all_ideals(algebra)
        found = {ideal.members: s_decomposition(algebra, ideal) for ideal in ideals}
        for ideal in ideals:
            decomposition = found[ideal.members]
            if decomposition.factors:
                assert frozenset.intersection(*(m.members for m in decomposition.factors)) == ideal.members
            sizes_product = math.prod(quotient(algebra, m).algebra.size for m in decomposition.factors)
            assert quotient(algebra, ideal).algebra.size == sizes_product
            assert decomposition.iso.forward.is_bijective
            for larger in ideals:
                if ideal.members <= larger.members:
                    above_larger = {m.members for m in found[larger.members].factors}
                    above_ideal = {m.members for m in decomposition.factors}
                    assert above_larger <= above_ideal


def test_chain_has_two_ideals():
    assert len(all_ideals(make_chain(6))) == 2


@pytest.mark.corpus
@pytest.mark.parametrize('sizes', CORPUS, ids=corpus_id)
def test_finite_algebras_are_semisimple_with_principal_ideals(sizes):
    algebra = make_product(sizes)
    assert radical(algebra).members == frozenset({algebra.zero})
    for ideal in all_ideals(algebra):
        generator = is_principal(algebra, ideal)
        assert generator is not None
        assert ideal_generated(algebra, [generator]).members == ideal.members
