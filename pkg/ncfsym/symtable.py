"""
Count-Table Representation
r-symmetric functions as tables over per-group 1-counts, and the
table-driven recognizer deciding whether such a function is an NCF.

Tables are dense numpy arrays of shape (m_1+1, ..., m_r+1); rows are
ordered in mixed-radix ascending order with c_r varying fastest.
"""

import itertools
import logging
import re
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from .config import Limits, resolve
from .errors import CapacityError, DimensionError, InvariantViolation, NotSymmetricError, ParseError
from .monitoring import monitor_performance
from .ncf import NcfRepr, Rule
from .truthtable import SymmetryPartition, TruthTable

logger = logging.getLogger(__name__)

HEADER_LINE = re.compile(r'^groups\s*:\s*(\d+(?:\s*,\s*\d+)*)$', re.IGNORECASE)
ROW_LINE = re.compile(r'^(\d+(?:\s*,\s*\d+)*)\s*:\s*([01])$')


class SymTable:
    """Value of an r-symmetric function for every count tuple (c_1, ..., c_r)"""

    __slots__ = ('group_sizes', 'values')

    def __init__(self, group_sizes: Sequence[int], values):
        sizes = tuple(int(m) for m in group_sizes)
        if not sizes:
            raise DimensionError("A count table needs at least one group")
        if any(m < 1 for m in sizes):
            raise DimensionError(f"Group sizes must be positive, got {list(sizes)}")
        shape = tuple(m + 1 for m in sizes)
        array = np.array(values, dtype=bool)
        if array.size != int(np.prod(shape)):
            raise DimensionError(f"Expected {int(np.prod(shape))} rows for groups {list(sizes)}, got {array.size}")
        array = array.reshape(shape)
        array.flags.writeable = False
        self.group_sizes = sizes
        self.values = array

    @property
    def r(self) -> int:
        return len(self.group_sizes)

    @property
    def num_vars(self) -> int:
        return sum(self.group_sizes)

    @property
    def row_count(self) -> int:
        return self.values.size

    def value(self, counts: Sequence[int]) -> bool:
        return bool(self.values[tuple(counts)])

    def rows(self) -> Iterator[Tuple[Tuple[int, ...], bool]]:
        for counts in np.ndindex(self.values.shape):
            yield tuple(int(c) for c in counts), bool(self.values[counts])

    def __eq__(self, other):
        if not isinstance(other, SymTable):
            return NotImplemented
        return self.group_sizes == other.group_sizes and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"SymTable(groups={list(self.group_sizes)}, rows={self.row_count})"


class CanalyzingFinding(BaseModel):
    """A group whose variables are canalyzing; group_index is 1-based"""

    model_config = ConfigDict(frozen=True)

    group_index: int
    canalyzing: bool
    canalyzed: bool


class NotNcf(BaseModel):
    """Negative verdict of the recognizer"""

    model_config = ConfigDict(frozen=True)

    reason: str

    def __str__(self):
        return f"NOT-NCF {self.reason}"


class RecognitionStats:
    """Work counters filled in by ``recognize_ncf``"""

    def __init__(self):
        self.row_visits = 0
        self.mu_history: List[int] = []

    @property
    def iterations(self) -> int:
        return max(0, len(self.mu_history) - 1)


def _count_index(num_vars: int, partition: SymmetryPartition) -> np.ndarray:
    """Flat count-table row of every assignment"""
    idx = np.arange(1 << num_vars, dtype=np.int64)
    counts = []
    for group in partition.groups:
        c = np.zeros_like(idx)
        for v in group:
            c += (idx >> (v - 1)) & 1
        counts.append(c)
    shape = tuple(m + 1 for m in partition.sizes)
    return np.ravel_multi_index(tuple(counts), shape)


def from_truth_table(tt: TruthTable, partition: SymmetryPartition) -> SymTable:
    """
    Build the count table of ``tt`` under ``partition``

    Raises:
        NotSymmetricError: two assignments with the same count tuple have
            different values; ``witness`` holds their indices
    """
    if partition.num_vars != tt.num_vars:
        raise DimensionError(f"Partition covers {partition.num_vars} variables, table has {tt.num_vars}")
    flat = _count_index(tt.num_vars, partition)
    table = np.zeros(int(np.prod([m + 1 for m in partition.sizes])), dtype=bool)
    table[flat] = tt.bits
    mismatch = np.nonzero(table[flat] != tt.bits)[0]
    if mismatch.size:
        i = int(mismatch[0])
        j = int(np.nonzero((flat == flat[i]) & (tt.bits != tt.bits[i]))[0][0])
        first, second = min(i, j), max(i, j)
        raise NotSymmetricError(
            f"assignments {first} and {second} have equal group counts but different values",
            witness=(first, second))
    return SymTable(partition.sizes, table)


def to_truth_table(st: SymTable, partition: SymmetryPartition) -> TruthTable:
    """Expand a count table back to the full truth table"""
    if partition.sizes != st.group_sizes:
        raise DimensionError(f"Partition sizes {list(partition.sizes)} do not match table groups {list(st.group_sizes)}")
    flat = _count_index(partition.num_vars, partition)
    return TruthTable(partition.num_vars, st.values.reshape(-1)[flat])


def _scan_canalyzing(values: np.ndarray) -> Tuple[Optional[Tuple[int, bool, bool]], int]:
    """
    First (axis, alpha, beta) such that the rows with count >= 1 (alpha = 1)
    or count < m (alpha = 0) on that axis all hold beta

    Returns:
        (finding or None, number of rows examined)
    """
    visits = 0
    for axis, length in enumerate(values.shape):
        m = length - 1
        for alpha, counts in ((True, range(1, m + 1)), (False, range(0, m))):
            rows = np.take(values, counts, axis=axis)
            visits += rows.size
            if rows.min() == rows.max():
                return (axis, alpha, bool(rows.flat[0])), visits
    return None, visits


def find_canalyzing(st: SymTable) -> Optional[CanalyzingFinding]:
    """Lowest group with a canalyzing variable; value 1 is tried before 0"""
    found, _ = _scan_canalyzing(st.values)
    if found is None:
        return None
    axis, alpha, beta = found
    return CanalyzingFinding(group_index=axis + 1, canalyzing=alpha, canalyzed=beta)


@monitor_performance("recognize_ncf")
def recognize_ncf(st: SymTable, partition: SymmetryPartition,
                  stats: Optional[RecognitionStats] = None) -> Union[NcfRepr, NotNcf]:
    """
    Decide whether the function of a count table is an NCF

    Each iteration finds a canalyzing group, appends one rule per variable
    of that group (ascending variable index), keeps only the rows where the
    whole group holds the complement of the canalyzing value and drops the
    group. Every iteration at least halves the number of rows.

    Args:
        st: count table
        partition: the symmetry groups of ``st`` in table order
        stats: optional counters for rows examined and table sizes

    Returns:
        the simplified NcfRepr, or NotNcf with a reason
    """
    if partition.sizes != st.group_sizes:
        raise DimensionError(f"Partition sizes {list(partition.sizes)} do not match table groups {list(st.group_sizes)}")
    stats = stats if stats is not None else RecognitionStats()

    values = st.values
    remaining = list(range(partition.level))
    rules: List[Rule] = []
    last_canalyzed = None
    stats.mu_history.append(values.size)

    while remaining:
        found, visits = _scan_canalyzing(values)
        stats.row_visits += visits
        if found is None:
            groups = ', '.join(str(g + 1) for g in remaining)
            logger.debug(f"No canalyzing group among {groups}")
            return NotNcf(reason=f"no canalyzing variable among remaining groups {groups}")

        axis, alpha, beta = found
        for var in partition.groups[remaining[axis]]:
            rules.append(Rule(variable=var, canalyzing=alpha, canalyzed=beta))

        mu_before = values.size
        fixed = 0 if alpha else values.shape[axis] - 1
        values = np.take(values, fixed, axis=axis)
        stats.row_visits += values.size
        stats.mu_history.append(values.size)
        if 2 * values.size > mu_before:
            raise InvariantViolation(f"count table shrank from {mu_before} to {values.size} rows, expected at most half")

        del remaining[axis]
        last_canalyzed = beta

    final = bool(values)
    if final == last_canalyzed:
        return NotNcf(reason="does not depend on all variables")
    return NcfRepr(rules=tuple(rules), default_value=final)


def parse_symtable(text: str, limits: Optional[Limits] = None) -> SymTable:
    """
    Parse the count-table format

    Header ``groups: m1,...,mr`` followed by one ``c1,...,cr: v`` line per
    row. Every count tuple must appear exactly once, with rows in
    ascending order of their count tuples (last group varying fastest).
    """
    sizes = None
    values = None
    seen = {}
    previous = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if sizes is None:
            header = HEADER_LINE.match(line)
            if not header:
                raise ParseError(f"expected 'groups: m1,...,mr' header, got {line!r}", lineno)
            sizes = tuple(int(m) for m in header.group(1).split(','))
            if any(m < 1 for m in sizes):
                raise ParseError("group sizes must be positive", lineno)
            if sum(sizes) > resolve(limits).max_table_vars:
                raise CapacityError(f"Count tables support at most {resolve(limits).max_table_vars} variables")
            values = np.zeros(tuple(m + 1 for m in sizes), dtype=bool)
            continue

        row = ROW_LINE.match(line)
        if not row:
            raise ParseError(f"expected 'c1,...,cr: <0|1>', got {line!r}", lineno)
        counts = tuple(int(c) for c in row.group(1).split(','))
        if len(counts) != len(sizes):
            raise ParseError(f"row has {len(counts)} counts, header declares {len(sizes)} groups", lineno)
        for c, m in zip(counts, sizes):
            if c > m:
                raise ParseError(f"count {c} exceeds group size {m}", lineno)
        if counts in seen:
            raise ParseError(f"duplicate row {','.join(map(str, counts))} (first on line {seen[counts]})", lineno)
        if previous is not None and counts < previous:
            raise ParseError(f"row {','.join(map(str, counts))} is out of order, "
                             f"it must come before {','.join(map(str, previous))}", lineno)
        previous = counts
        seen[counts] = lineno
        values[counts] = row.group(2) == '1'

    if sizes is None:
        raise ParseError("missing 'groups:' header")
    if len(seen) != values.size:
        missing = next(c for c in itertools.product(*(range(m + 1) for m in sizes)) if c not in seen)
        raise ParseError(f"missing row {','.join(map(str, missing))} ({values.size - len(seen)} rows missing)")
    return SymTable(sizes, values)


def render_symtable(st: SymTable) -> str:
    lines = [f"groups: {','.join(str(m) for m in st.group_sizes)}"]
    for counts, value in st.rows():
        lines.append(f"{','.join(str(c) for c in counts)}: {int(value)}")
    return '\n'.join(lines) + '\n'
