"""Law checks on random instances, and brute-force oracles for the vectorised checkers"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from algebra.lattice import FinitePoset, dedekind_macneille
from algebra.mv_core import INFINITE, element_order, make_chain, make_product, validate_tables
from tests.corpus import CORPUS, PRESENTATIONS, corpus_id, presentation_id, shuffled_table

sizes_lists = st.lists(st.integers(min_value=2, max_value=5), min_size=1, max_size=3)


def brute_force_ok(oplus, neg, zero):
    """The MV axioms checked one tuple at a time"""
    size = len(neg)
    one = neg[zero]
    for x in range(size):
        if oplus[x][zero] != x or neg[neg[x]] != x or oplus[one][x] != one:
            return False
        for y in range(size):
            if oplus[x][y] != oplus[y][x]:
                return False
            if oplus[neg[oplus[neg[x]][y]]][y] != oplus[neg[oplus[neg[y]][x]]][x]:
                return False
            for z in range(size):
                if oplus[oplus[x][y]][z] != oplus[x][oplus[y][z]]:
                    return False
    return True


# ----- MV Law Tests -----
class TestMvLaws:
    @settings(max_examples=60, deadline=None)
    @given(sizes=sizes_lists, data=st.data())
    def test_laws_on_random_elements(self, sizes, data):
        algebra = make_product(sizes)
        element = st.integers(min_value=0, max_value=algebra.size - 1)
        x, y, z = data.draw(element), data.draw(element), data.draw(element)
        oplus, neg = algebra.oplus, algebra.neg

        assert oplus(x, oplus(y, z)) == oplus(oplus(x, y), z)
        assert oplus(x, neg(x)) == algebra.one
        assert neg(neg(x)) == x
        assert oplus(neg(oplus(neg(x), y)), y) == algebra.join(x, y)
        assert algebra.meet(x, y) == neg(algebra.join(neg(x), neg(y)))
        assert algebra.leq(x, y) == (algebra.join(x, y) == y)
        assert algebra.otimes(x, y) == neg(oplus(neg(x), neg(y)))

    @settings(max_examples=40, deadline=None)
    @given(sizes=sizes_lists, data=st.data())
    def test_partial_sum_agrees_with_oplus(self, sizes, data):
        algebra = make_product(sizes)
        element = st.integers(min_value=0, max_value=algebra.size - 1)
        x, y = data.draw(element), data.draw(element)
        if algebra.leq(x, algebra.neg(y)):
            assert algebra.partial_add(x, y) == algebra.oplus(x, y)


# ----- Axiom Checker Oracle Tests -----
class TestAxiomOracle:
    @pytest.mark.parametrize('sizes', [[3], [4], [2, 3]])
    def test_single_entry_mutations(self, sizes):
        base = make_product(sizes)
        size = base.size
        rng = np.random.default_rng(sum(sizes))
        for _ in range(100):
            oplus = base.oplus_table.copy()
            neg = base.neg_table.copy()
            if rng.random() < 0.7:
                i, j = (int(v) for v in rng.integers(0, size, 2))
                oplus[i, j] = (oplus[i, j] + int(rng.integers(1, size))) % size
            else:
                i = int(rng.integers(0, size))
                neg[i] = (neg[i] + int(rng.integers(1, size))) % size
            expected = brute_force_ok(oplus.tolist(), neg.tolist(), base.zero)
            assert validate_tables(oplus, neg, base.zero).ok == expected

    def test_unmutated_tables_pass(self):
        algebra = make_product([2, 3])
        assert brute_force_ok(algebra.oplus_table.tolist(), algebra.neg_table.tolist(), algebra.zero)


# ----- Element Order Oracle -----
@pytest.mark.parametrize('n', range(2, 13))
def test_element_order_matches_formula(n):
    chain = make_chain(n)
    assert element_order(chain, 0) is INFINITE
    for k in range(1, n):
        assert element_order(chain, k) == (n - 1) // k


# ----- Dedekind–MacNeille Properties -----
@st.composite
def random_posets(draw):
    size = draw(st.integers(min_value=1, max_value=8))
    candidates = [(i, j) for i in range(size) for j in range(i + 1, size)]
    pairs = draw(st.lists(st.sampled_from(candidates), unique=True)) if candidates else []
    return FinitePoset.from_pairs([f'p{i}' for i in range(size)], pairs)


class TestMacNeilleProperties:
    @settings(max_examples=50, deadline=None)
    @given(poset=random_posets())
    def test_completion_is_idempotent(self, poset):
        once = dedekind_macneille(poset)
        twice = dedekind_macneille(once.lattice)
        assert len(twice.lattice) == len(once.lattice)
        assert poset.is_order_isomorphism(
            FinitePoset(poset.names, once.lattice.leq[np.ix_(once.embedding, once.embedding)]),
            list(range(len(poset))),
        )

    @settings(max_examples=50, deadline=None)
    @given(poset=random_posets())
    def test_completion_is_a_bounded_lattice(self, poset):
        lattice = dedekind_macneille(poset).lattice
        assert lattice.bottom() is not None and lattice.top() is not None
        leq = lattice.leq
        for x in range(len(lattice)):
            for y in range(len(lattice)):
                upper = np.flatnonzero(leq[x] & leq[y])
                least = [u for u in upper if leq[u, upper].all()]
                assert len(least) == 1
        assert len(lattice) <= 2 ** len(poset)


# ----- Lattice Bound Tests -----
def assert_bounds_match_order(algebra):
    """join is the least upper bound and meet the greatest lower bound of the induced order, for every pair"""
    leq = algebra.leq_matrix
    upper = leq[:, None, :] & leq[None, :, :]
    lower = leq.T[:, None, :] & leq.T[None, :, :]
    join, meet = algebra.join_table, algebra.meet_table
    ids = np.arange(algebra.size)

    assert upper[ids[:, None], ids[None, :], join].all()
    assert (~upper | leq[join]).all()
    assert lower[ids[:, None], ids[None, :], meet].all()
    assert (~lower | leq.T[meet]).all()


@pytest.mark.corpus
@pytest.mark.parametrize('sizes', CORPUS, ids=corpus_id)
def test_join_and_meet_are_order_bounds(sizes):
    assert_bounds_match_order(make_product(sizes))


@pytest.mark.parametrize('sizes, seed', PRESENTATIONS, ids=[presentation_id(c) for c in PRESENTATIONS])
def test_join_and_meet_are_order_bounds_on_tables(sizes, seed):
    assert_bounds_match_order(shuffled_table(sizes, seed))
