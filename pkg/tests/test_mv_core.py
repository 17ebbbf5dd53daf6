import pytest
from fractions import Fraction

import numpy as np

from algebra.isomorphism import canonical_decomposition, is_isomorphic
from algebra.mv_core import (
    AXIOMS,
    INFINITE,
    ChainMultiset,
    Homomorphism,
    IsoWitness,
    atoms,
    boolean_center,
    direct_product,
    element_order,
    evaluate,
    is_atomic,
    make_chain,
    make_product,
    make_table,
    make_trivial,
    subalgebra,
    validate_axioms,
)
from core.errors import (
    AxiomViolation,
    HomomorphismError,
    InvalidArgumentError,
    InvalidParameterError,
    ResourceLimitError,
    TableFormatError,
    UndefinedPartialSum,
)
from tests.corpus import L3_TABLE


# ----- Constructor Tests -----
class TestConstructors:
    def test_chain_carrier(self, chain3):
        assert chain3.size == 3
        assert chain3.names == ('0', '1/2', '1')
        assert chain3.values == ((Fraction(0),), (Fraction(1, 2),), (Fraction(1),))
        assert chain3.label == 'Ł_3'
        assert chain3.is_chain

    def test_chain_names_keep_denominator(self):
        assert make_chain(5).names == ('0', '1/4', '2/4', '3/4', '1')

    def test_chain_truncated_addition(self):
        l5 = make_chain(5)
        assert l5.names[l5.oplus(1, 2)] == '3/4'
        assert l5.names[l5.oplus(3, 2)] == '1'
        assert l5.names[l5.neg(1)] == '3/4'

    @pytest.mark.parametrize('n', [1, 0, -3, 2.5, True])
    def test_chain_rejects_bad_size(self, n):
        with pytest.raises(InvalidParameterError):
            make_chain(n)

    def test_chain_size_guard(self):
        with pytest.raises(ResourceLimitError) as excinfo:
            make_chain(10_000)
        assert excinfo.value.exit_code == 3

    def test_product_order_and_names(self, l2xl3):
        assert l2xl3.size == 6
        assert l2xl3.label == 'Ł_2×Ł_3'
        assert l2xl3.names == ('(0, 0)', '(0, 1/2)', '(0, 1)', '(1, 0)', '(1, 1/2)', '(1, 1)')
        assert l2xl3.lookup((1, Fraction(1, 2))) == 4

    def test_product_is_componentwise(self, l2xl3):
        x = l2xl3.lookup('(1, 1/2)')
        y = l2xl3.lookup('(0, 1/2)')
        assert l2xl3.names[l2xl3.oplus(x, y)] == '(1, 1)'
        assert l2xl3.names[l2xl3.otimes(x, y)] == '(0, 0)'
        assert l2xl3.names[l2xl3.meet(x, y)] == '(0, 1/2)'

    def test_empty_product_is_rejected(self):
        with pytest.raises(InvalidParameterError):
            make_product([])

    def test_trivial_algebra(self, trivial):
        assert trivial.size == 1
        assert trivial.is_trivial
        assert trivial.zero == trivial.one
        assert direct_product([]).size == 1

    def test_product_quotes_colliding_names(self):
        left = make_table(['x', 'x, y'], [['x', 'x, y'], ['x, y', 'x, y']], ['x, y', 'x'], 'x')
        right = make_table(['y, z', 'z'], [['y, z', 'z'], ['z', 'z']], ['z', 'y, z'], 'y, z')
        product = direct_product([left, right])
        assert product.names == ('(x, "y, z")', '(x, z)', '("x, y", "y, z")', '("x, y", z)')
        assert product.names[product.zero] == '(x, "y, z")'
        assert is_isomorphic(product, make_product([2, 2])) is not None

    def test_tables_are_read_only(self, chain3):
        assert not chain3.oplus_table.flags.writeable
        with pytest.raises(ValueError):
            chain3.neg_table[0] = 1

    def test_table_copy_of_l3(self, chain3):
        copy = make_table(**L3_TABLE, label='L3 copy')
        assert copy.label == 'L3 copy'
        assert validate_axioms(copy).ok
        assert is_isomorphic(copy, chain3) is not None

    def test_table_names_first_violation(self):
        broken = dict(L3_TABLE, oplus=[['z', 'u', 'u'], ['h', 'u', 'u'], ['u', 'u', 'u']])
        with pytest.raises(AxiomViolation) as excinfo:
            make_table(**broken)
        assert str(excinfo.value) == "Axiom 'commutativity' fails at (z, h)"
        assert excinfo.value.report.first_failure.axiom == 'commutativity'
        assert excinfo.value.exit_code == 1

    def test_table_rejects_unknown_names(self):
        with pytest.raises(TableFormatError):
            make_table(**dict(L3_TABLE, neg=['u', 'h', 'q']))

    def test_table_rejects_non_square(self):
        with pytest.raises(TableFormatError):
            make_table(**dict(L3_TABLE, oplus=[['z', 'h', 'u'], ['h', 'u', 'u']]))

    def test_report_lists_every_axiom(self, l2xl3):
        report = validate_axioms(l2xl3)
        assert [c.axiom for c in report.checks] == list(AXIOMS)
        assert report.ok and report.first_failure is None


# ----- Element Operation Tests -----
class TestElementOperations:
    def test_order_relation(self, chain3):
        assert chain3.leq(0, 1) and chain3.leq(1, 2)
        assert not chain3.leq(2, 1)

    def test_partial_addition(self, chain3):
        half = chain3.lookup('1/2')
        assert chain3.partial_add(half, half) == chain3.one
        with pytest.raises(UndefinedPartialSum):
            chain3.partial_add(chain3.one, half)

    def test_nfold_stepwise(self):
        l5 = make_chain(5)
        quarter = l5.lookup('1/4')
        assert l5.nfold(quarter, 0) == l5.zero
        assert l5.nfold(quarter, 4) == l5.one
        with pytest.raises(UndefinedPartialSum) as excinfo:
            l5.nfold(quarter, 5)
        assert excinfo.value.payload['step'] == 5

    def test_element_order(self):
        l7 = make_chain(7)
        assert element_order(l7, l7.zero) is INFINITE
        assert [element_order(l7, k) for k in range(1, 7)] == [6, 3, 2, 1, 1, 1]

    def test_evaluate_dispatch(self, chain3):
        assert evaluate(chain3, 'leq', [0, 1]) is True
        element = evaluate(chain3, 'neg', [1])
        assert element.name == '1/2' and element.value == (Fraction(1, 2),)
        assert evaluate(chain3, 'nfold', [1, 2]).name == '1'

    def test_evaluate_rejects_misuse(self, chain3):
        with pytest.raises(InvalidArgumentError):
            evaluate(chain3, 'neg', [0, 1])
        with pytest.raises(InvalidArgumentError):
            evaluate(chain3, 'implies', [0, 1])
        with pytest.raises(InvalidArgumentError):
            chain3.oplus(0, 7)

    def test_lookup_by_value(self):
        l5 = make_chain(5)
        assert l5.lookup(Fraction(1, 2)) == 2
        assert l5.lookup(1) == 4
        with pytest.raises(InvalidArgumentError):
            l5.lookup(Fraction(1, 3))

    def test_atoms(self, l2xl3):
        assert [l2xl3.names[a] for a in atoms(l2xl3)] == ['(0, 1/2)', '(1, 0)']
        assert is_atomic(l2xl3)

    def test_boolean_center(self, l2xl3, chain3):
        center, embedding = boolean_center(l2xl3)
        assert center.size == 4 and center.is_boolean
        assert [l2xl3.names[v] for v in embedding.mapping] == ['(0, 0)', '(0, 1)', '(1, 0)', '(1, 1)']
        assert boolean_center(chain3)[0].size == 2

    def test_subalgebra_closure(self):
        l5 = make_chain(5)
        sub, inclusion = subalgebra(l5, [0, 2, 4])
        assert sub.size == 3 and inclusion.is_injective
        assert is_isomorphic(sub, make_chain(3)) is not None
        with pytest.raises(InvalidArgumentError):
            subalgebra(l5, [0, 1, 4])


# ----- Homomorphism Tests -----
class TestHomomorphisms:
    def test_projection_is_homomorphism(self, l2xl3, chain3):
        projection = Homomorphism(l2xl3, chain3, (0, 1, 2, 0, 1, 2)).verify()
        assert projection.is_surjective and not projection.is_injective
        assert projection.kernel() == frozenset({0, 3})

    def test_failure_is_described(self, l2xl3, chain3):
        constant = Homomorphism(l2xl3, chain3, (0,) * 6)
        assert constant.failure() == '¬ not preserved at x=(0, 0)'
        with pytest.raises(HomomorphismError):
            constant.verify()

    def test_wrong_length(self, l2xl3, chain3):
        with pytest.raises(InvalidArgumentError):
            Homomorphism(l2xl3, chain3, (0, 1))

    def test_witness_requires_bijection(self, l2xl3, chain3):
        with pytest.raises(InvalidArgumentError):
            IsoWitness.from_bijection(Homomorphism(l2xl3, chain3, (0, 1, 2, 0, 1, 2)))

    def test_witness_composition(self):
        a, b, c = make_product([2, 3]), make_product([3, 2]), make_product([2, 3])
        first, second = is_isomorphic(a, b), is_isomorphic(b, c)
        composite = first.then(second).verify()
        assert composite.source is a and composite.target is c
        assert composite.inverse().verify().source is c


# ----- Canonical Decomposition Tests -----
class TestCanonicalDecomposition:
    def test_multiset(self):
        assert canonical_decomposition(make_product([3, 2])).multiset == ChainMultiset.of([2, 3])
        assert canonical_decomposition(make_trivial()).multiset == ChainMultiset()

    def test_non_isomorphic_same_size(self):
        assert is_isomorphic(make_product([2, 3]), make_chain(6)) is None

    def test_isomorphism_witness_is_explicit(self):
        left, right = make_product([2, 3]), make_product([3, 2])
        witness = is_isomorphic(left, right)
        assert witness.forward(left.lookup('(1, 1/2)')) == right.lookup('(1/2, 1)')
        assert np.array_equal(witness.backward.array[witness.forward.array], np.arange(6))

    def test_chain_multiset_helpers(self):
        ms = ChainMultiset.of([3, 2]) + ChainMultiset.of([2])
        assert str(ms) == '{2,2,3}'
        assert ms.product_size == 12
        assert ms.counts() == {2: 2, 3: 1}
        with pytest.raises(InvalidParameterError):
            ChainMultiset((1,))
