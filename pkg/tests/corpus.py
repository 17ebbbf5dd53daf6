"""Chain-product corpora shared by the exhaustive suites"""

import itertools
import math

import numpy as np

from algebra.mv_core import make_product, make_table

CHAIN_SIZES = range(2, 7)

# Every product of chains with sizes 2..6 and at most three factors, up to isomorphism
CORPUS = [
    list(sizes)
    for count in range(1, 4)
    for sizes in itertools.combinations_with_replacement(CHAIN_SIZES, count)
]

# The same products with the factor order kept, so Ł_2×Ł_3 and Ł_3×Ł_2 both appear
ORDERED_CORPUS = [
    list(sizes)
    for count in range(1, 4)
    for sizes in itertools.product(CHAIN_SIZES, repeat=count)
]

# Lighter subset for the suites that pair algebras or run the inverse system twice
SMALL_CORPUS = [sizes for sizes in CORPUS if math.prod(sizes) <= 36]

# (sizes, seed) for shuffled table presentations, carriers up to 120
PRESENTATIONS = [
    (sizes, seed)
    for sizes in ([4], [2, 3], [3, 4], [2, 2, 3], [2, 3, 5], [4, 5, 6])
    for seed in range(3)
]

L3_TABLE = {
    'elements': ['z', 'h', 'u'],
    'oplus': [['z', 'h', 'u'], ['h', 'u', 'u'], ['u', 'u', 'u']],
    'neg': ['u', 'h', 'z'],
    'zero': 'z',
}


def corpus_id(sizes):
    return 'x'.join(str(n) for n in sizes)


def presentation_id(case):
    sizes, seed = case
    return f"{corpus_id(sizes)}-seed{seed}"


def shuffled_table(sizes, seed):
    """make_product(sizes) re-presented as a named table with its carrier permuted"""
    base = make_product(sizes)
    position = [int(p) for p in np.random.default_rng(seed).permutation(base.size)]
    names = [f"e{k}" for k in range(base.size)]
    oplus = [[''] * base.size for _ in range(base.size)]
    neg = [''] * base.size
    for x in range(base.size):
        neg[position[x]] = names[position[base.neg(x)]]
        for y in range(base.size):
            oplus[position[x]][position[y]] = names[position[base.oplus(x, y)]]
    return make_table(names, oplus, neg, names[position[base.zero]], label=f"shuffled {corpus_id(sizes)}")
