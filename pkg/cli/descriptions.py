"""
Description files: JSON objects naming an algebra or a spectral signature.

    {"kind": "chain", "n": 3}
    {"kind": "product", "chains": [2, 3]}
    {"kind": "table", "elements": [...], "oplus": [[...]], "neg": [...], "zero": "..."}
    {"kind": "signature", "finite_part": {"2": 1}, "family": {"all_ranks_from": 2}, ...}
"""

import json
from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, TypeAdapter, ValidationError, model_validator

from algebra.mv_core import FiniteMvAlgebra, encode_tables, make_chain, make_product, make_table
from algebra.signatures import (
    COUNTABLE,
    AllRanksFrom,
    Arithmetic,
    AtomData,
    Count,
    Family,
    SpectralSignature,
    builtin_example_convergent,
    sig_of_finite_algebra,
)
from core.errors import DescriptionError, InvalidParameterError
from core.utils import logger

CountValue = Union[StrictInt, Literal['countable']]


class _Strict(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)


class ChainDescription(_Strict):
    kind: Literal['chain']
    n: StrictInt = Field(ge=2)
    name: Optional[str] = None


class ProductDescription(_Strict):
    kind: Literal['product']
    chains: List[Annotated[StrictInt, Field(ge=2)]] = Field(min_length=1)
    name: Optional[str] = None


class TableDescription(_Strict):
    kind: Literal['table']
    elements: List[str] = Field(min_length=1)
    oplus: List[List[str]]
    neg: List[str]
    zero: str
    name: Optional[str] = None

    @model_validator(mode='after')
    def check_shape(self):
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("element names must be unique")
        size = len(self.elements)
        if len(self.oplus) != size or any(len(row) != size for row in self.oplus):
            raise ValueError(f"oplus must be a {size}x{size} table")
        if len(self.neg) != size:
            raise ValueError(f"neg must list {size} entries")
        known = set(self.elements)
        for entry in [e for row in self.oplus for e in row] + list(self.neg) + [self.zero]:
            if entry not in known:
                raise ValueError(f"unknown element {entry!r}")
        return self


class ArithmeticSpec(_Strict):
    first: StrictInt = Field(ge=1)
    step: StrictInt = Field(ge=1)


class FamilyDescription(_Strict):
    all_ranks_from: Optional[StrictInt] = Field(default=None, ge=1)
    arithmetic: Optional[ArithmeticSpec] = None

    @model_validator(mode='after')
    def exactly_one(self):
        if (self.all_ranks_from is None) == (self.arithmetic is None):
            raise ValueError("family must be exactly one of all_ranks_from or arithmetic")
        return self

    def to_family(self) -> Family:
        if self.arithmetic is not None:
            return Arithmetic(self.arithmetic.first, self.arithmetic.step)
        return AllRanksFrom(self.all_ranks_from)


def _keyed(part: Dict[str, CountValue], what: str) -> Dict[int, Count]:
    result = {}
    for key, count in part.items():
        if not key.strip().isdigit():
            raise DescriptionError(f"{what}: key {key!r} is not an integer", {'field': what})
        result[int(key)] = COUNTABLE if count == 'countable' else count
    return result


class AtomOrdersDescription(_Strict):
    explicit: Dict[str, CountValue] = Field(default_factory=dict)
    family: Optional[FamilyDescription] = None
    families: List[FamilyDescription] = Field(default_factory=list)


class SignatureDescription(_Strict):
    kind: Literal['signature']
    name: Optional[str] = None
    builtin: Optional[Literal['convergent']] = None
    finite_part: Dict[str, CountValue] = Field(default_factory=dict)
    infinite_rank_count: Union[Annotated[StrictInt, Field(ge=0)], Literal['countable']] = 0
    family: Optional[FamilyDescription] = None
    families: List[FamilyDescription] = Field(default_factory=list)
    atom_orders: Optional[AtomOrdersDescription] = None
    is_atomic: Optional[bool] = None

    @model_validator(mode='after')
    def builtin_alone(self):
        if self.builtin is not None and (
                self.finite_part or self.family or self.families or self.atom_orders
                or self.infinite_rank_count != 0 or self.is_atomic is not None):
            raise ValueError("builtin signatures take no further fields")
        return self


AlgebraDescription = Annotated[
    Union[ChainDescription, ProductDescription, TableDescription, SignatureDescription],
    Field(discriminator='kind'),
]

_adapter = TypeAdapter(AlgebraDescription)


# ----- Parsing -----

def _line_of(text: str, key: str) -> Optional[int]:
    needle = f'"{key}"'
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def parse_description(text: str) -> AlgebraDescription:
    """Validated description, or DescriptionError with line and field context"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        logger(f"Invalid JSON: {e}", 'error')
        raise DescriptionError(
            f"Invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}",
            {'line': e.lineno, 'column': e.colno},
        )
    if not isinstance(data, dict):
        raise DescriptionError("Description must be a JSON object", {'line': 1})

    try:
        return _adapter.validate_python(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = '.'.join(str(part) for part in first['loc']) or 'kind'
        keys = [part for part in first['loc'] if isinstance(part, str) and part not in
                ('chain', 'product', 'table', 'signature')]
        line = _line_of(text, keys[-1]) if keys else None
        where = f" (line {line})" if line else ''
        logger(f"Schema violation at {field}: {first['msg']}", 'error')
        raise DescriptionError(
            f"{field}: {first['msg']}{where}",
            {'field': field, 'line': line, 'errors': len(e.errors())},
        )


def load_description(path: Union[str, Path]) -> AlgebraDescription:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except FileNotFoundError:
        raise DescriptionError(f"Description file not found: {path}", {'file': str(path)})
    except UnicodeDecodeError as e:
        raise DescriptionError(f"{path} is not UTF-8: {e.reason}", {'file': str(path)})
    return parse_description(text)


# ----- Builders -----

def is_signature(description: AlgebraDescription) -> bool:
    return isinstance(description, SignatureDescription)


def build_algebra(description: AlgebraDescription) -> FiniteMvAlgebra:
    if isinstance(description, ChainDescription):
        return make_chain(description.n)
    if isinstance(description, ProductDescription):
        return make_product(description.chains)
    if isinstance(description, TableDescription):
        return make_table(
            description.elements, description.oplus, description.neg, description.zero,
            label=description.name,
        )
    raise DescriptionError("A signature describes no concrete algebra", {'field': 'kind'})


def raw_tables(description: AlgebraDescription) -> Tuple[List[str], List[List[int]], List[int], int]:
    """Id tables for the axiom validator, without constructing (and rejecting) the algebra"""
    if isinstance(description, TableDescription):
        return encode_tables(description.elements, description.oplus, description.neg, description.zero)
    algebra = build_algebra(description)
    return list(algebra.names), algebra.oplus_table.tolist(), algebra.neg_table.tolist(), algebra.zero


def _families(single: Optional[FamilyDescription], many: List[FamilyDescription]) -> Tuple[Family, ...]:
    return tuple(f.to_family() for f in ([single] if single else []) + list(many))


def build_signature(description: AlgebraDescription) -> SpectralSignature:
    """Signature from its description; algebra descriptions give the signature of the algebra"""
    if not isinstance(description, SignatureDescription):
        return sig_of_finite_algebra(build_algebra(description))
    if description.builtin == 'convergent':
        return builtin_example_convergent()

    infinite = description.infinite_rank_count
    try:
        atom_data = None
        if description.atom_orders is not None:
            orders = description.atom_orders
            atom_data = AtomData(
                explicit=_keyed(orders.explicit, 'atom_orders.explicit'),
                families=_families(orders.family, orders.families),
                is_atomic=True if description.is_atomic is None else description.is_atomic,
            )
        elif description.is_atomic is not None:
            atom_data = AtomData(is_atomic=description.is_atomic)
        return SpectralSignature(
            finite_part=_keyed(description.finite_part, 'finite_part'),
            infinite_rank_count=COUNTABLE if infinite == 'countable' else infinite,
            families=_families(description.family, description.families),
            atoms=atom_data,
            label=description.name or 'signature',
        )
    except InvalidParameterError as e:
        raise DescriptionError(str(e), {'field': 'signature'})


def subject_echo(description: AlgebraDescription) -> Dict:
    return description.model_dump(mode='json', exclude_none=True)
