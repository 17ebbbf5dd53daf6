"""
MV Completion Lab - Algebra Package

Finite MV-algebras, their ideals and quotients, the profinite and MacNeille
completions, and the symbolic signature layer for infinite examples.
"""

__all__ = [
    'FiniteMvAlgebra',
    'make_chain',
    'make_product',
    'make_table',
    'make_trivial',
    'direct_product',
    'IsoWitness',
    'Homomorphism',
    'ChainMultiset',
    'Ideal',
    'all_ideals',
    'max_ideals',
    'canonical_decomposition',
    'is_isomorphic',
    'FinitePoset',
    'dedekind_macneille',
    'inverse_limit_profinite',
    'profinite_product',
    'macneille_mv',
    'SpectralSignature',
    'builtin_example_convergent',
]

__version__ = "1.0.0"

from .mv_core import (
    FiniteMvAlgebra,
    make_chain,
    make_product,
    make_table,
    make_trivial,
    direct_product,
    IsoWitness,
    Homomorphism,
    ChainMultiset,
)
from .ideals import Ideal, all_ideals, max_ideals
from .isomorphism import canonical_decomposition, is_isomorphic
from .lattice import FinitePoset, dedekind_macneille
from .completion import inverse_limit_profinite, profinite_product, macneille_mv
from .signatures import SpectralSignature, builtin_example_convergent

from core.utils import logger
logger("Algebra package initialized", "debug")
