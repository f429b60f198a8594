"""
Brute-Force Oracle
Ground truth computed directly from truth tables: pairwise symmetry,
symmetry partitions and levels, canalyzing variables, recursive NCF
recognition, strong asymmetry by permutation search and exhaustive NCF
enumeration.
"""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from .config import Limits, resolve
from .errors import DomainError, RangeError
from .monitoring import monitor_performance
from .ncf import NcfRepr, Rule, normalize, symmetry_level_ncf, truth_table_int
from .truthtable import (
    Permutation,
    SymmetryPartition,
    TruthTable,
    assignment_matrix,
    cofactor_index,
    permutation_index,
    restrict_with_mapping,
)

logger = logging.getLogger(__name__)

CanalyzingTriple = Tuple[int, bool, bool]


class SymmetricCanalyzingKind(str, Enum):
    """The only symmetric functions that are canalyzing"""
    OR = "OR"
    AND = "AND"
    NOR = "NOR"
    NAND = "NAND"
    CONST0 = "CONST0"
    CONST1 = "CONST1"


class AsymmetryVerdict(BaseModel):
    """Result of the permutation search; truthy iff strongly asymmetric"""

    model_config = ConfigDict(frozen=True)

    strongly_asymmetric: bool
    witness: Optional[Permutation] = None
    permutations_checked: int = 0

    @model_validator(mode='after')
    def _witness_iff_symmetric(self):
        if self.strongly_asymmetric == (self.witness is not None):
            raise ValueError("a witness is required exactly when the function is not strongly asymmetric")
        return self

    def __bool__(self):
        return self.strongly_asymmetric


class EnumerationReport(BaseModel):
    """Outcome of enumerating every simplified representation for one n"""

    model_config = ConfigDict(frozen=True)

    n: int
    distinct_ncf_count: int
    strongly_asymmetric_count: int
    level_histogram: Dict[int, int]
    representations_scanned: int = 0

    @model_validator(mode='after')
    def _consistent_counts(self):
        if self.strongly_asymmetric_count > self.distinct_ncf_count:
            raise ValueError("strongly asymmetric count exceeds the number of distinct NCFs")
        if sum(self.level_histogram.values()) != self.distinct_ncf_count:
            raise ValueError("level histogram does not sum to the number of distinct NCFs")
        return self

    def machine_line(self) -> str:
        levels = ','.join(f"{level}:{count}" for level, count in sorted(self.level_histogram.items()))
        return f"n={self.n} ncfs={self.distinct_ncf_count} strong={self.strongly_asymmetric_count} levels={levels}"

    def render_text(self) -> str:
        lines = [
            f"NCF enumeration for n={self.n}",
            f"  representations scanned: {self.representations_scanned}",
            f"  distinct NCFs:           {self.distinct_ncf_count}",
            f"  strongly asymmetric:     {self.strongly_asymmetric_count}",
            "  symmetry levels:",
        ]
        for level, count in sorted(self.level_histogram.items()):
            lines.append(f"    level {level}: {count}")
        return '\n'.join(lines)


def _check_pair(tt: TruthTable, i: int, j: int) -> None:
    for var in (i, j):
        if not 1 <= var <= tt.num_vars:
            raise RangeError(f"Variable x{var} out of range 1..{tt.num_vars}")
    if i == j:
        raise DomainError("pairwise symmetry needs two distinct variables")


def _swap_invariant(bits: np.ndarray, i: int, j: int) -> bool:
    """f(.., x_i=1, .., x_j=0, ..) == f(.., x_i=0, .., x_j=1, ..) everywhere"""
    idx = np.arange(bits.size, dtype=np.int64)
    mask_i, mask_j = 1 << (i - 1), 1 << (j - 1)
    mixed = idx[((idx & mask_i) != 0) & ((idx & mask_j) == 0)]
    return bool(np.array_equal(bits[mixed], bits[mixed ^ (mask_i | mask_j)]))


def pairwise_symmetric_bf(tt: TruthTable, i: int, j: int, limits: Optional[Limits] = None) -> bool:
    """True iff interchanging x_i and x_j never changes the value"""
    resolve(limits).check('max_oracle_vars', tt.num_vars, 'pairwise_symmetric_bf')
    _check_pair(tt, i, j)
    return _swap_invariant(tt.bits, i, j)


def symmetry_partition_bf(tt: TruthTable, limits: Optional[Limits] = None) -> SymmetryPartition:
    """
    Proper symmetry partition of an explicit table

    The pairwise relation is an equivalence, so each variable only needs
    comparing against one representative per existing group.
    """
    resolve(limits).check('max_oracle_vars', tt.num_vars, 'symmetry_partition_bf')
    groups: List[List[int]] = []
    for var in range(1, tt.num_vars + 1):
        for group in groups:
            if _swap_invariant(tt.bits, group[0], var):
                group.append(var)
                break
        else:
            groups.append([var])
    return SymmetryPartition(groups=tuple(tuple(g) for g in groups))


def symmetry_level_bf(tt: TruthTable, limits: Optional[Limits] = None) -> int:
    return symmetry_partition_bf(tt, limits).level


def is_r_symmetric_bf(tt: TruthTable, r: int, limits: Optional[Limits] = None) -> bool:
    """True iff the variables split into at most r symmetry groups"""
    if r < 1:
        raise DomainError(f"r must be at least 1, got {r}")
    return symmetry_level_bf(tt, limits) <= r


def _canalyzing_triples(bits: np.ndarray, num_vars: int) -> Iterator[CanalyzingTriple]:
    """Ascending variable, canalyzing value 1 before 0"""
    for var in range(1, num_vars + 1):
        for value in (True, False):
            sub = bits[cofactor_index(num_vars, var, value)]
            if sub.min() == sub.max():
                yield var, value, bool(sub[0])


def is_canalyzing_bf(tt: TruthTable, limits: Optional[Limits] = None) -> List[CanalyzingTriple]:
    """
    Every (variable, a, b) with f constant b once x_variable = a

    Returns:
        triples in ascending variable order, a = 1 listed before a = 0;
        empty when the function is not canalyzing
    """
    resolve(limits).check('max_oracle_vars', tt.num_vars, 'is_canalyzing_bf')
    return list(_canalyzing_triples(tt.bits, tt.num_vars))


def is_ncf_bf(tt: TruthTable, limits: Optional[Limits] = None) -> Optional[NcfRepr]:
    """
    Recursive NCF recognition on an explicit table

    Picks the first canalyzing (x, a, b), records the rule and continues on
    the restriction x = not a. Constant functions and functions that ignore
    a variable end with a final value equal to the last canalyzed value and
    are rejected.

    Args:
        tt: function of n <= max_ncf_bf_vars variables
        limits: capacity caps

    Returns:
        an NcfRepr computing ``tt``, or None
    """
    resolve(limits).check('max_ncf_bf_vars', tt.num_vars, 'is_ncf_bf')
    current = tt
    original = list(range(1, tt.num_vars + 1))
    rules: List[Rule] = []

    while True:
        found = next(_canalyzing_triples(current.bits, current.num_vars), None)
        if found is None:
            return None
        var, a, b = found
        rules.append(Rule(variable=original[var - 1], canalyzing=a, canalyzed=b))
        if current.num_vars == 1:
            final = bool(current.bits[int(not a)])
            break
        current, mapping = restrict_with_mapping(current, var, not a)
        original = [original[old - 1] for old in sorted(mapping, key=mapping.get)]

    if final == rules[-1].canalyzed:
        return None
    return NcfRepr(rules=tuple(rules), default_value=final)


def _unit_signature(tt: TruthTable) -> List[Tuple[bool, bool]]:
    """Per variable: f at the unit vector e_k and at its complement"""
    full = (1 << tt.num_vars) - 1
    return [(bool(tt.bits[1 << k]), bool(tt.bits[full ^ (1 << k)])) for k in range(tt.num_vars)]


@monitor_performance("is_strongly_asymmetric_bf")
def is_strongly_asymmetric_bf(tt: TruthTable, limits: Optional[Limits] = None) -> AsymmetryVerdict:
    """
    Search every non-identity permutation in lexicographic order

    An invariant permutation has to map each variable to one with the same
    unit signature, so others are skipped without touching the table.

    Returns:
        AsymmetryVerdict; the witness is the lexicographically first
        non-identity permutation pi with f = f o pi
    """
    resolve(limits).check('max_permutation_vars', tt.num_vars, 'is_strongly_asymmetric_bf')
    n = tt.num_vars
    signature = _unit_signature(tt)
    checked = 0
    permutations = itertools.permutations(range(1, n + 1))
    next(permutations)
    for mapping in permutations:
        if any(signature[p - 1] != signature[k] for k, p in enumerate(mapping)):
            continue
        checked += 1
        if np.array_equal(tt.bits, tt.bits[permutation_index(n, mapping)]):
            logger.debug(f"Invariant permutation {mapping} after {checked} table comparisons")
            return AsymmetryVerdict(strongly_asymmetric=False,
                                    witness=Permutation(mapping=mapping),
                                    permutations_checked=checked)
    return AsymmetryVerdict(strongly_asymmetric=True, permutations_checked=checked)


def classify_symmetric_canalyzing(tt: TruthTable, limits: Optional[Limits] = None) -> Optional[SymmetricCanalyzingKind]:
    """Name a symmetric canalyzing function; None for anything else"""
    if symmetry_level_bf(tt, limits) != 1:
        return None
    n = tt.num_vars
    weight = assignment_matrix(n).sum(axis=1)
    candidates = (
        (SymmetricCanalyzingKind.CONST0, np.zeros(len(tt), dtype=bool)),
        (SymmetricCanalyzingKind.CONST1, np.ones(len(tt), dtype=bool)),
        (SymmetricCanalyzingKind.OR, weight >= 1),
        (SymmetricCanalyzingKind.AND, weight == n),
        (SymmetricCanalyzingKind.NOR, weight == 0),
        (SymmetricCanalyzingKind.NAND, weight < n),
    )
    for kind, bits in candidates:
        if np.array_equal(tt.bits, bits):
            return kind
    return None


def _enumerate_shard(n: int, first_var: int) -> Dict[int, Tuple[CanalyzingTriple, ...]]:
    """
    Every representation whose first rule tests ``first_var``

    Returns:
        packed truth table -> first representation producing it
    """
    seen: Dict[int, Tuple[CanalyzingTriple, ...]] = {}
    others = [v for v in range(1, n + 1) if v != first_var]
    value_vectors = list(itertools.product((False, True), repeat=n))
    for rest in itertools.permutations(others):
        order = (first_var,) + rest
        for canalyzing in value_vectors:
            for canalyzed in value_vectors:
                triples = tuple(zip(order, canalyzing, canalyzed))
                key = truth_table_int(triples, not canalyzed[-1], n)
                if key not in seen:
                    seen[key] = triples
    return seen


@monitor_performance("enumerate_ncfs")
def enumerate_ncfs(n: int, jobs: int = 1, limits: Optional[Limits] = None) -> EnumerationReport:
    """
    Enumerate all n! 2^n 2^n simplified representations

    Representations are deduplicated by truth table; each distinct function
    is normalized and its level read from the layer structure.

    Args:
        n: number of variables, 2 <= n <= max_enumeration_vars
        jobs: worker processes; the space is sharded by first variable and
            merged in shard order, so the report does not depend on jobs
        limits: capacity caps

    Returns:
        EnumerationReport
    """
    if n < 2:
        raise DomainError(f"enumerate_ncfs needs n >= 2, got {n}")
    resolve(limits).check('max_enumeration_vars', n, 'enumerate_ncfs')

    shards = range(1, n + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_enumerate_shard, [n] * n, shards))
    else:
        results = [_enumerate_shard(n, first) for first in shards]

    merged: Dict[int, Tuple[CanalyzingTriple, ...]] = {}
    for shard in results:
        for key, triples in shard.items():
            merged.setdefault(key, triples)

    histogram: Dict[int, int] = {}
    for triples in merged.values():
        level = symmetry_level_ncf(normalize(NcfRepr.from_triples(triples)))
        histogram[level] = histogram.get(level, 0) + 1

    scanned = math.factorial(n) * 4 ** n
    logger.info(f"Enumerated {scanned} representations for n={n}: {len(merged)} distinct NCFs")
    return EnumerationReport(n=n,
                             distinct_ncf_count=len(merged),
                             strongly_asymmetric_count=histogram.get(n, 0),
                             level_histogram=dict(sorted(histogram.items())),
                             representations_scanned=scanned)
