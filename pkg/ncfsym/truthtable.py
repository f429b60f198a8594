"""
Truth Table Engine
Explicit Boolean functions, restrictions, variable permutations and partitions.

Assignment encoding: bit j-1 of an assignment index holds the value of
variable x_j (x_1 is the least significant bit). Variable indices are
1-based everywhere in the public API.
"""

import logging
import re
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .config import Limits, resolve
from .errors import CapacityError, DegenerateRestrictionError, DimensionError, ParseError, RangeError

logger = logging.getLogger(__name__)

# index maps are cached only up to this many variables (2^16 int64 = 512 KiB each)
_CACHED_INDEX_VARS = 16

TABLE_LINE = re.compile(r'^\s*n\s*=\s*(\d+)\s+tt\s*=\s*([0-9a-fA-F]+)\s*$')


class TruthTable:
    """
    Explicit 2^n-entry Boolean function

    The bit vector is a read-only numpy bool array indexed by assignment.
    Instances are immutable and hashable.
    """

    __slots__ = ('num_vars', 'bits', '_key')

    def __init__(self, num_vars: int, bits, limits: Optional[Limits] = None):
        limits = resolve(limits)
        if num_vars < 1:
            raise DimensionError(f"A truth table needs at least one variable, got n={num_vars}")
        if num_vars > limits.max_table_vars:
            raise CapacityError(f"Explicit tables support n <= {limits.max_table_vars}, got n={num_vars}")
        array = np.array(bits, dtype=bool).reshape(-1)
        if array.size != 1 << num_vars:
            raise DimensionError(f"Expected {1 << num_vars} bits for n={num_vars}, got {array.size}")
        array.flags.writeable = False
        self.num_vars = num_vars
        self.bits = array
        self._key = None

    @classmethod
    def from_int(cls, num_vars: int, value: int, limits: Optional[Limits] = None) -> 'TruthTable':
        """Build a table whose bit i is bit i of ``value``"""
        size = 1 << num_vars
        if value < 0 or value >> size:
            raise RangeError(f"Value does not fit in {size} bits")
        raw = value.to_bytes(max(1, (size + 7) // 8), 'little')
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder='little')[:size]
        return cls(num_vars, bits, limits)

    @classmethod
    def from_function(cls, num_vars: int, func: Callable[..., bool],
                      limits: Optional[Limits] = None) -> 'TruthTable':
        """
        Tabulate a Python predicate

        Args:
            num_vars: number of variables
            func: called as ``func(x1, ..., xn)`` with 0/1 ints

        Returns:
            TruthTable
        """
        columns = assignment_matrix(num_vars)
        return cls(num_vars, [bool(func(*row)) for row in columns.tolist()], limits)

    @classmethod
    def constant(cls, num_vars: int, value: bool) -> 'TruthTable':
        return cls(num_vars, np.full(1 << num_vars, bool(value)))

    def to_int(self) -> int:
        packed = np.packbits(self.bits, bitorder='little')
        return int.from_bytes(packed.tobytes(), 'little')

    def hex(self) -> str:
        digits = max(1, (len(self.bits) + 3) // 4)
        return format(self.to_int(), f'0{digits}x')

    def key(self) -> bytes:
        """Compact hashable key of the bit vector"""
        if self._key is None:
            self._key = np.packbits(self.bits, bitorder='little').tobytes()
        return self._key

    def __len__(self):
        return len(self.bits)

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.num_vars == other.num_vars and self.key() == other.key()

    def __hash__(self):
        return hash((self.num_vars, self.key()))

    def __repr__(self):
        if self.num_vars <= 6:
            return f"TruthTable(n={self.num_vars}, tt={self.hex()})"
        return f"TruthTable(n={self.num_vars}, ones={int(self.bits.sum())})"


class Permutation(BaseModel):
    """Bijection on {1,...,n}; position i (1-based) holds pi(i)"""

    model_config = ConfigDict(frozen=True)

    mapping: Tuple[int, ...]

    @field_validator('mapping')
    @classmethod
    def _is_bijection(cls, v):
        if sorted(v) != list(range(1, len(v) + 1)):
            raise ValueError(f"{list(v)} is not a permutation of 1..{len(v)}")
        return v

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(mapping=tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> 'Permutation':
        mapping = list(range(1, n + 1))
        mapping[i - 1], mapping[j - 1] = j, i
        return cls(mapping=tuple(mapping))

    @property
    def size(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.mapping, 1))

    def inverse(self) -> 'Permutation':
        inv = [0] * self.size
        for i, p in enumerate(self.mapping, 1):
            inv[p - 1] = i
        return Permutation(mapping=tuple(inv))

    def __str__(self):
        return ' '.join(str(p) for p in self.mapping)


class SymmetryPartition(BaseModel):
    """
    Partition of {1,...,n} into symmetry groups

    Groups are stored canonically: each group sorted, groups ordered by
    their smallest member, so equality is equality of set partitions.
    """

    model_config = ConfigDict(frozen=True)

    groups: Tuple[Tuple[int, ...], ...]

    @model_validator(mode='before')
    @classmethod
    def _canonical_order(cls, data):
        if isinstance(data, dict) and 'groups' in data:
            groups = [tuple(sorted(int(v) for v in g)) for g in data['groups']]
            groups.sort(key=lambda g: g[0] if g else 0)
            data = {**data, 'groups': tuple(groups)}
        return data

    @field_validator('groups')
    @classmethod
    def _covers_exactly(cls, v):
        if not v:
            raise ValueError("a partition needs at least one group")
        members = [x for g in v for x in g]
        if any(len(g) == 0 for g in v):
            raise ValueError("symmetry groups must be nonempty")
        if sorted(members) != list(range(1, len(members) + 1)):
            raise ValueError(f"groups must be disjoint and cover 1..{len(members)}")
        return v

    @classmethod
    def contiguous(cls, sizes: Sequence[int]) -> 'SymmetryPartition':
        """Blocks of consecutive variables: x1..x_m1, then the next m2, ..."""
        groups, start = [], 1
        for m in sizes:
            if m < 1:
                raise DimensionError(f"Group sizes must be positive, got {list(sizes)}")
            groups.append(tuple(range(start, start + m)))
            start += m
        return cls(groups=tuple(groups))

    @classmethod
    def singletons(cls, n: int) -> 'SymmetryPartition':
        return cls(groups=tuple((i,) for i in range(1, n + 1)))

    @property
    def level(self) -> int:
        return len(self.groups)

    @property
    def num_vars(self) -> int:
        return sum(len(g) for g in self.groups)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(g) for g in self.groups)

    def group_of(self, var: int) -> int:
        """1-based index of the group containing ``var``"""
        for index, group in enumerate(self.groups, 1):
            if var in group:
                return index
        raise RangeError(f"Variable x{var} is not in the partition")

    def as_sets(self) -> frozenset:
        return frozenset(frozenset(g) for g in self.groups)

    def __str__(self):
        return ' '.join('{' + ','.join(f"x{v}" for v in g) + '}' for g in self.groups)


@lru_cache(maxsize=32)
def assignment_matrix(num_vars: int) -> np.ndarray:
    """(2^n, n) uint8 matrix; column j holds x_{j+1} for every assignment"""
    idx = np.arange(1 << num_vars, dtype=np.int64)
    matrix = ((idx[:, None] >> np.arange(num_vars, dtype=np.int64)) & 1).astype(np.uint8)
    matrix.flags.writeable = False
    return matrix


def _permutation_index_uncached(num_vars: int, mapping: Tuple[int, ...]) -> np.ndarray:
    idx = np.arange(1 << num_vars, dtype=np.int64)
    source = np.zeros_like(idx)
    for k, p in enumerate(mapping):
        source |= ((idx >> (p - 1)) & 1) << k
    source.flags.writeable = False
    return source


_permutation_index_cached = lru_cache(maxsize=8192)(_permutation_index_uncached)


def permutation_index(num_vars: int, mapping: Tuple[int, ...]) -> np.ndarray:
    """
    Index map for g = f o pi

    Entry i is the assignment index at which f must be read so that
    g(a_1..a_n) = f(a_pi(1)..a_pi(n)): bit k-1 of the source index is
    bit pi(k)-1 of i.
    """
    if num_vars <= _CACHED_INDEX_VARS:
        return _permutation_index_cached(num_vars, tuple(mapping))
    return _permutation_index_uncached(num_vars, tuple(mapping))


@lru_cache(maxsize=1024)
def cofactor_index(num_vars: int, var: int, value: bool) -> np.ndarray:
    """Assignment indices with x_var = value, in order of the remaining variables"""
    rest = np.arange(1 << (num_vars - 1), dtype=np.int64)
    low_mask = (1 << (var - 1)) - 1
    index = (rest & low_mask) | (int(value) << (var - 1)) | ((rest >> (var - 1)) << var)
    index.flags.writeable = False
    return index


def _check_var(tt: TruthTable, var: int) -> None:
    if not 1 <= var <= tt.num_vars:
        raise RangeError(f"Variable x{var} out of range 1..{tt.num_vars}")


def evaluate(tt: TruthTable, assignment: int) -> bool:
    """Value of the function at an assignment index"""
    if not 0 <= assignment < len(tt.bits):
        raise RangeError(f"Assignment {assignment} out of range 0..{len(tt.bits) - 1}")
    return bool(tt.bits[assignment])


def cofactor_bits(tt: TruthTable, var: int, value: bool) -> np.ndarray:
    """Bits of the subfunction with x_var fixed, without building a table"""
    _check_var(tt, var)
    return tt.bits[cofactor_index(tt.num_vars, var, bool(value))]


def restrict(tt: TruthTable, var: int, value: bool) -> TruthTable:
    """
    Fix x_var = value

    Args:
        tt: function of n >= 2 variables
        var: 1-based variable index
        value: fixed value

    Returns:
        (n-1)-variable table; the remaining variables keep their relative
        order and are renumbered densely (see ``renumbering``)
    """
    if tt.num_vars == 1:
        raise DegenerateRestrictionError("Cannot restrict a 1-variable function")
    return TruthTable(tt.num_vars - 1, cofactor_bits(tt, var, value))


def renumbering(num_vars: int, var: int) -> Dict[int, int]:
    """Old -> new variable indices after restricting ``var`` away"""
    return {old: (old if old < var else old - 1) for old in range(1, num_vars + 1) if old != var}


def restrict_with_mapping(tt: TruthTable, var: int, value: bool) -> Tuple[TruthTable, Dict[int, int]]:
    """``restrict`` together with the old -> new variable renumbering"""
    return restrict(tt, var, value), renumbering(tt.num_vars, var)


def apply_permutation(tt: TruthTable, perm: Permutation) -> TruthTable:
    """Return g with g(a_1..a_n) = f(a_pi(1)..a_pi(n))"""
    if perm.size != tt.num_vars:
        raise DimensionError(f"Permutation of size {perm.size} applied to {tt.num_vars} variables")
    if perm.is_identity():
        return tt
    return TruthTable(tt.num_vars, tt.bits[permutation_index(tt.num_vars, perm.mapping)])


def swap_variables(tt: TruthTable, i: int, j: int) -> TruthTable:
    """Interchange the values of x_i and x_j"""
    _check_var(tt, i)
    _check_var(tt, j)
    return apply_permutation(tt, Permutation.transposition(tt.num_vars, i, j))


def is_constant(tt: TruthTable) -> Optional[bool]:
    """The constant value, or None when the function is not constant"""
    first = bool(tt.bits[0])
    if np.all(tt.bits == first):
        return first
    return None


def depends_on(tt: TruthTable, var: int) -> bool:
    return bool(np.any(cofactor_bits(tt, var, False) != cofactor_bits(tt, var, True)))


def essential_variables(tt: TruthTable) -> List[int]:
    return [v for v in range(1, tt.num_vars + 1) if depends_on(tt, v)]


def format_truth_table(tt: TruthTable) -> str:
    return f"n={tt.num_vars} tt={tt.hex()}"


def parse_truth_table(text: str, limits: Optional[Limits] = None) -> TruthTable:
    """
    Parse the ``n=<k> tt=<hex>`` format

    Blank lines and ``#`` comments are ignored; exactly one table line is
    expected and the hex string must have exactly ceil(2^k/4) digits.
    """
    found = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if found is not None:
            raise ParseError("more than one truth table line", lineno)
        match = TABLE_LINE.match(line)
        if not match:
            raise ParseError(f"expected 'n=<k> tt=<hex>', got {line!r}", lineno)
        n, digits = int(match.group(1)), match.group(2)
        if n < 1:
            raise ParseError("n must be at least 1", lineno)
        if n > resolve(limits).max_table_vars:
            raise CapacityError(f"Explicit tables support n <= {resolve(limits).max_table_vars}, got n={n}")
        expected = max(1, ((1 << n) + 3) // 4)
        if len(digits) != expected:
            raise ParseError(f"n={n} needs exactly {expected} hex digits, got {len(digits)}", lineno)
        value = int(digits, 16)
        if value >> (1 << n):
            raise ParseError(f"hex value has bits beyond the {1 << n} table entries", lineno)
        found = TruthTable.from_int(n, value, limits)
    if found is None:
        raise ParseError("no truth table line found")
    return found


def iter_all_tables(num_vars: int) -> Iterable[TruthTable]:
    """Every function of ``num_vars`` variables, in increasing integer order"""
    for value in range(1 << (1 << num_vars)):
        yield TruthTable.from_int(num_vars, value)
