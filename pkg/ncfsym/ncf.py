"""
Nested Canalyzing Functions
Rule-list representation, parsing, evaluation, normalization, layer
decomposition and the symmetry structure of NCFs.

A representation is an ordered list of rules ``x_i: a -> b`` followed by a
default value equal to the complement of the last canalyzed value. Rules
are scanned top-down and the first rule whose variable equals its
canalyzing value decides the output.
"""

import itertools
import logging
import math
import re
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from .errors import (
    DimensionError,
    DomainError,
    DuplicateVariableError,
    InconsistentDefaultError,
    NormalizationRequiredError,
    ParseError,
    RangeError,
)
from .truthtable import Permutation, SymmetryPartition, TruthTable, assignment_matrix

logger = logging.getLogger(__name__)

RULE_LINE = re.compile(r'^x\s*(\d+)\s*:\s*([01])\s*->\s*([01])$', re.IGNORECASE)
DEFAULT_LINE = re.compile(r'^default\s*:\s*([01])$', re.IGNORECASE)


class Rule(BaseModel):
    """One line ``x_variable: canalyzing -> canalyzed``"""

    model_config = ConfigDict(frozen=True)

    variable: int = Field(..., ge=1)
    canalyzing: bool
    canalyzed: bool

    def complemented(self) -> 'Rule':
        return Rule(variable=self.variable, canalyzing=not self.canalyzing, canalyzed=not self.canalyzed)

    def __str__(self):
        return f"x{self.variable}: {int(self.canalyzing)} -> {int(self.canalyzed)}"


class NcfRepr(BaseModel):
    """Simplified representation: n rules, one per variable, plus the default"""

    model_config = ConfigDict(frozen=True)

    rules: Tuple[Rule, ...]
    default_value: bool

    @model_validator(mode='after')
    def _check_invariants(self):
        if not self.rules:
            raise ValueError("an NCF needs at least one rule")
        variables = sorted(rule.variable for rule in self.rules)
        if variables != list(range(1, len(self.rules) + 1)):
            raise ValueError(f"rules must test each of x1..x{len(self.rules)} exactly once")
        if self.default_value == self.rules[-1].canalyzed:
            raise ValueError("default value must complement the last canalyzed value")
        return self

    @classmethod
    def from_triples(cls, triples: Sequence[Tuple[int, int, int]]) -> 'NcfRepr':
        """Build from ``(variable, a, b)`` triples; the default is derived"""
        rules = tuple(Rule(variable=v, canalyzing=bool(a), canalyzed=bool(b)) for v, a, b in triples)
        return cls(rules=rules, default_value=not rules[-1].canalyzed)

    @property
    def num_vars(self) -> int:
        return len(self.rules)

    def triples(self) -> Tuple[Tuple[int, bool, bool], ...]:
        return tuple((r.variable, r.canalyzing, r.canalyzed) for r in self.rules)

    def __str__(self):
        return render_ncf(self)


class Layer(BaseModel):
    """Maximal run of rules sharing one canalyzed value (rule positions are 1-based, inclusive)"""

    model_config = ConfigDict(frozen=True)

    start: int
    stop: int
    canalyzed: bool
    variables: Tuple[int, ...]
    canalyzing_values: Tuple[bool, ...]

    @property
    def size(self) -> int:
        return self.stop - self.start + 1

    @property
    def distinct_values(self) -> int:
        return len(set(self.canalyzing_values))


class LayerDecomposition(BaseModel):
    model_config = ConfigDict(frozen=True)

    layers: Tuple[Layer, ...]

    @computed_field
    @property
    def r1(self) -> int:
        return sum(1 for layer in self.layers if layer.distinct_values == 1)

    @computed_field
    @property
    def r2(self) -> int:
        return sum(1 for layer in self.layers if layer.distinct_values == 2)

    @computed_field
    @property
    def q(self) -> int:
        return len(self.layers)

    def layer_of(self, var: int) -> int:
        """1-based index of the layer whose rules test ``var``"""
        for index, layer in enumerate(self.layers, 1):
            if var in layer.variables:
                return index
        raise RangeError(f"Variable x{var} does not occur in the representation")


def parse_ncf(text: str) -> NcfRepr:
    """
    Parse the NCF text format

    One rule per line ``x<i>: <0|1> -> <0|1>``, then ``default: <0|1>``.
    ``#`` starts a comment and blank lines are ignored.

    Args:
        text: file contents

    Returns:
        validated NcfRepr
    """
    rules: List[Rule] = []
    seen = {}
    default_value = None
    default_line = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if default_value is not None:
            raise ParseError("nothing may follow the default line", lineno)

        rule_match = RULE_LINE.match(line)
        if rule_match:
            var = int(rule_match.group(1))
            if var < 1:
                raise ParseError(f"variable indices start at x1, got x{var}", lineno)
            if var in seen:
                raise DuplicateVariableError(f"x{var} already tested on line {seen[var]}", lineno)
            seen[var] = lineno
            rules.append(Rule(variable=var,
                              canalyzing=rule_match.group(2) == '1',
                              canalyzed=rule_match.group(3) == '1'))
            continue

        default_match = DEFAULT_LINE.match(line)
        if default_match:
            default_value = default_match.group(1) == '1'
            default_line = lineno
            continue

        raise ParseError(f"expected 'x<i>: <0|1> -> <0|1>' or 'default: <0|1>', got {line!r}", lineno)

    if not rules:
        raise ParseError("no rules found")
    if default_value is None:
        raise ParseError("missing 'default: <0|1>' line")

    n = len(rules)
    for var, lineno in seen.items():
        if var > n:
            raise ParseError(f"x{var} out of range for {n} rules (variables must be x1..x{n})", lineno)
    if default_value == rules[-1].canalyzed:
        raise InconsistentDefaultError(
            f"default {int(default_value)} must complement the last canalyzed value "
            f"{int(rules[-1].canalyzed)}", default_line)

    return NcfRepr(rules=tuple(rules), default_value=default_value)


def render_ncf(ncf: NcfRepr) -> str:
    lines = [str(rule) for rule in ncf.rules]
    lines.append(f"default: {int(ncf.default_value)}")
    return '\n'.join(lines) + '\n'


def evaluate_ncf(ncf: NcfRepr, assignment: int) -> bool:
    """Scan the rules top-down; the first matching rule decides"""
    if not 0 <= assignment < (1 << ncf.num_vars):
        raise RangeError(f"Assignment {assignment} out of range for n={ncf.num_vars}")
    for rule in ncf.rules:
        if bool((assignment >> (rule.variable - 1)) & 1) == rule.canalyzing:
            return rule.canalyzed
    return ncf.default_value


@lru_cache(maxsize=32)
def variable_masks(num_vars: int) -> Tuple[int, ...]:
    """For each variable, the truth table of x_j packed into an int"""
    columns = assignment_matrix(num_vars)
    masks = []
    for j in range(num_vars):
        packed = np.packbits(columns[:, j].astype(bool), bitorder='little')
        masks.append(int.from_bytes(packed.tobytes(), 'little'))
    return tuple(masks)


def truth_table_int(triples: Sequence[Tuple[int, bool, bool]], default_value: bool, num_vars: int) -> int:
    """
    Truth table of a rule list as a packed int

    Works on plain triples so the enumerator can skip model construction.
    """
    masks = variable_masks(num_vars)
    full = (1 << (1 << num_vars)) - 1
    remaining = full
    value = 0
    for var, a, b in triples:
        match = masks[var - 1] if a else full ^ masks[var - 1]
        if b:
            value |= remaining & match
        remaining &= ~match
    if default_value:
        value |= remaining
    return value


def to_truth_table(ncf: NcfRepr) -> TruthTable:
    return TruthTable.from_int(ncf.num_vars, truth_table_int(ncf.triples(), ncf.default_value, ncf.num_vars))


def is_default_normalized(ncf: NcfRepr) -> bool:
    if ncf.num_vars == 1:
        return True
    return ncf.rules[-1].canalyzed == ncf.rules[-2].canalyzed


def layers(ncf: NcfRepr) -> LayerDecomposition:
    """Maximal runs of equal canalyzed value, in rule order"""
    result = []
    start = 0
    for stop in range(1, ncf.num_vars + 1):
        if stop == ncf.num_vars or ncf.rules[stop].canalyzed != ncf.rules[start].canalyzed:
            run = ncf.rules[start:stop]
            result.append(Layer(start=start + 1,
                                stop=stop,
                                canalyzed=run[0].canalyzed,
                                variables=tuple(r.variable for r in run),
                                canalyzing_values=tuple(r.canalyzing for r in run)))
            start = stop
    return LayerDecomposition(layers=tuple(result))


def canonicalize(ncf: NcfRepr) -> NcfRepr:
    """Sort the rules of every layer by variable index"""
    rules = []
    for layer in layers(ncf).layers:
        rules.extend(sorted(ncf.rules[layer.start - 1:layer.stop], key=lambda r: r.variable))
    return NcfRepr(rules=tuple(rules), default_value=ncf.default_value)


def normalize(ncf: NcfRepr, canonical: bool = False) -> NcfRepr:
    """
    Default-normalized representation of the same function

    If the last two rules have complementary canalyzed values, both values
    of the last rule and the default are complemented; otherwise the input
    is already normalized. n = 1 is returned unchanged.

    Args:
        ncf: any representation
        canonical: additionally sort rules within each layer by variable

    Returns:
        equivalent default-normalized NcfRepr
    """
    result = ncf
    if not is_default_normalized(ncf):
        rules = ncf.rules[:-1] + (ncf.rules[-1].complemented(),)
        result = NcfRepr(rules=rules, default_value=not ncf.default_value)
        logger.debug(f"Complemented last rule of {ncf.num_vars}-variable NCF")
    if canonical:
        result = canonicalize(result)
    return result


def permute_within_layer(ncf: NcfRepr, layer_index: int, perm: Permutation) -> NcfRepr:
    """
    Reorder the rules of one layer

    Position i of the layer receives the rule that was at position perm(i).

    Args:
        ncf: representation
        layer_index: 1-based layer index
        perm: permutation sized to the layer

    Returns:
        NcfRepr computing the same function
    """
    decomposition = layers(ncf)
    if not 1 <= layer_index <= decomposition.q:
        raise RangeError(f"Layer {layer_index} out of range 1..{decomposition.q}")
    layer = decomposition.layers[layer_index - 1]
    if perm.size != layer.size:
        raise DimensionError(f"Layer {layer_index} has {layer.size} rules, permutation has size {perm.size}")
    block = ncf.rules[layer.start - 1:layer.stop]
    reordered = tuple(block[perm(i) - 1] for i in range(1, layer.size + 1))
    rules = ncf.rules[:layer.start - 1] + reordered + ncf.rules[layer.stop:]
    return NcfRepr(rules=rules, default_value=ncf.default_value)


def _require_normalized(ncf: NcfRepr) -> None:
    if not is_default_normalized(ncf):
        raise NormalizationRequiredError(
            "symmetry operations need a default-normalized representation; call normalize() first")


def symmetric_pair(ncf_normalized: NcfRepr, i: int, j: int) -> bool:
    """True iff x_i and x_j share a layer and a canalyzing value"""
    _require_normalized(ncf_normalized)
    n = ncf_normalized.num_vars
    for var in (i, j):
        if not 1 <= var <= n:
            raise RangeError(f"Variable x{var} out of range 1..{n}")
    if i == j:
        raise DomainError("symmetric_pair needs two distinct variables")
    decomposition = layers(ncf_normalized)
    if decomposition.layer_of(i) != decomposition.layer_of(j):
        return False
    value = {r.variable: r.canalyzing for r in ncf_normalized.rules}
    return value[i] == value[j]


def symmetry_partition_ncf(ncf_normalized: NcfRepr) -> SymmetryPartition:
    """
    Proper symmetry partition: within each layer, the variables sharing a
    canalyzing value form one group, so the level is r1 + 2*r2
    """
    _require_normalized(ncf_normalized)
    groups = []
    for layer in layers(ncf_normalized).layers:
        for value in (True, False):
            group = [v for v, a in zip(layer.variables, layer.canalyzing_values) if a == value]
            if group:
                groups.append(tuple(group))
    return SymmetryPartition(groups=tuple(groups))


def symmetry_level_ncf(ncf_normalized: NcfRepr) -> int:
    return symmetry_partition_ncf(ncf_normalized).level


def is_strongly_asymmetric_ncf(ncf_normalized: NcfRepr) -> bool:
    return symmetry_level_ncf(ncf_normalized) == ncf_normalized.num_vars


def count_strongly_asymmetric(n: int) -> int:
    """
    Closed form n! 2^(n-1)

    Counts the strongly asymmetric NCFs whose normalized layers are n-2
    single rules followed by one two-rule layer. For n >= 4 other layer
    patterns reach level n too; ``count_strongly_asymmetric_layered``
    counts all of them.
    """
    if n < 2:
        raise DomainError(f"count_strongly_asymmetric needs n >= 2, got {n}")
    return math.factorial(n) * 2 ** (n - 1)


def count_strongly_asymmetric_layered(n: int) -> int:
    """
    Number of n-variable NCFs of symmetry level n

    Normalized layers hold one rule, or two rules with different canalyzing
    values, and the last layer holds two. With k two-rule layers there are
    C(n-k-1, k-1) layer patterns, n!/2^k variable placements, 2^(n-k)
    canalyzing values and 2 choices of the first canalyzed value.
    """
    if n < 2:
        raise DomainError(f"count_strongly_asymmetric_layered needs n >= 2, got {n}")
    patterns = sum(math.comb(n - k - 1, k - 1) * 2 ** (n - 2 * k) for k in range(1, n // 2 + 1))
    return 2 * math.factorial(n) * patterns


def make_fn_example(n: int) -> NcfRepr:
    """
    x1 or (not x2 and (x3 or (not x4 and ...))) as a rule list

    Every canalyzing value is 1 and canalyzed values alternate 1, 0, 1, ...
    The result is not default-normalized.
    """
    if n < 2:
        raise DomainError(f"make_fn_example needs n >= 2, got {n}")
    return NcfRepr.from_triples([(i, 1, i % 2) for i in range(1, n + 1)])


def _strong_layer_sizes(n: int) -> Iterator[Tuple[int, ...]]:
    """Layer sizes of 1 and 2 summing to n, ending with a 2"""
    def compositions(total):
        if total == 0:
            yield ()
            return
        for size in (1, 2):
            if size <= total:
                for rest in compositions(total - size):
                    yield (size,) + rest

    for head in compositions(n - 2):
        yield head + (2,)


def iter_strongly_asymmetric(n: int) -> Iterator[NcfRepr]:
    """
    Yield one default-normalized representation per strongly asymmetric NCF

    Every layer is a single rule or two rules with different canalyzing
    values, the last layer has two rules and canalyzed values alternate
    between layers. The two variables of a two-rule layer are taken in
    increasing order, so each function appears exactly once.
    """
    if n < 2:
        raise DomainError(f"iter_strongly_asymmetric needs n >= 2, got {n}")
    for sizes in _strong_layer_sizes(n):
        starts = list(itertools.accumulate((0,) + sizes[:-1]))
        pairs = [start for start, size in zip(starts, sizes) if size == 2]
        for order in itertools.permutations(range(1, n + 1)):
            if any(order[start] > order[start + 1] for start in pairs):
                continue
            for first in (False, True):
                canalyzed = [first ^ bool(k % 2) for k, size in enumerate(sizes) for _ in range(size)]
                for choice in itertools.product((False, True), repeat=len(sizes)):
                    values = []
                    for size, a in zip(sizes, choice):
                        values.extend((a,) if size == 1 else (a, not a))
                    rules = tuple(Rule(variable=v, canalyzing=a, canalyzed=b)
                                  for v, a, b in zip(order, values, canalyzed))
                    yield NcfRepr(rules=rules, default_value=not canalyzed[-1])


def random_ncf(n: int, rng: Optional[np.random.Generator] = None) -> NcfRepr:
    """Uniformly random rule list over n variables"""
    rng = rng if rng is not None else np.random.default_rng()
    order = rng.permutation(n) + 1
    values = rng.integers(0, 2, size=(n, 2))
    return NcfRepr.from_triples([(int(v), int(a), int(b)) for v, (a, b) in zip(order, values)])
