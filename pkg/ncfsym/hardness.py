"""
Symmetry-Level Gap Instances
CNF formulas in DIMACS form and the reduction that turns a formula g into a
function f whose symmetry level is 1 when g is unsatisfiable and at least
rho + 1 when g is satisfiable.

Variable layout of the reduced formula over n + 2*rho + 2 variables:
X = 1..n (the variables of g), Y = n+1..n+rho+1, Z = n+rho+2..n+2*rho+2,
with one clause (y_i or not z_i) per i appended after the clauses of g.
"""

import logging
import re
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import Limits, resolve
from .errors import DimensionError, DomainError, ParseError, RangeError
from .monitoring import monitor_performance
from .oracle import symmetry_partition_bf
from .truthtable import SymmetryPartition, TruthTable, assignment_matrix

logger = logging.getLogger(__name__)

HEADER_LINE = re.compile(r'^p\s+cnf\s+(\d+)\s+(\d+)$')


class CnfFormula(BaseModel):
    """Clauses are tuples of nonzero literals; -v is the complement of x_v"""

    model_config = ConfigDict(frozen=True)

    num_vars: int = Field(..., ge=1)
    clauses: Tuple[Tuple[int, ...], ...]

    @model_validator(mode='after')
    def _literals_in_range(self):
        for clause in self.clauses:
            for literal in clause:
                if literal == 0 or abs(literal) > self.num_vars:
                    raise ValueError(f"literal {literal} out of range for {self.num_vars} variables")
        return self

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


class ReductionInstance(BaseModel):
    model_config = ConfigDict(frozen=True)

    base: CnfFormula
    rho: int = Field(..., ge=1)
    result: CnfFormula

    @model_validator(mode='after')
    def _block_layout(self):
        if self.result.num_vars != self.base.num_vars + 2 * self.rho + 2:
            raise ValueError("reduced formula must have n + 2*rho + 2 variables")
        if self.result.num_clauses != self.base.num_clauses + self.rho + 1:
            raise ValueError("reduced formula must add rho + 1 clauses")
        return self

    @property
    def x_block(self) -> range:
        return range(1, self.base.num_vars + 1)

    @property
    def y_block(self) -> range:
        start = self.base.num_vars + 1
        return range(start, start + self.rho + 1)

    @property
    def z_block(self) -> range:
        start = self.base.num_vars + self.rho + 2
        return range(start, start + self.rho + 1)


class ClaimsVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    g_satisfiable: bool
    level_of_f: int
    rho: int
    claims_hold: bool
    partition: Optional[SymmetryPartition] = None

    def machine_line(self) -> str:
        return (f"sat={int(self.g_satisfiable)} level={self.level_of_f} "
                f"rho={self.rho} ok={int(self.claims_hold)}")


def parse_dimacs(text: str) -> CnfFormula:
    """
    Parse DIMACS CNF

    ``c`` lines are comments, ``p cnf <vars> <clauses>`` is the header and
    clauses are whitespace-separated literals terminated by ``0`` (a clause
    may span lines). A ``%`` line ends the input.
    """
    num_vars = num_clauses = None
    header_line = None
    clauses: List[Tuple[int, ...]] = []
    pending: List[int] = []
    pending_line = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith('c'):
            continue
        if line.startswith('%'):
            break
        if line.startswith('p'):
            if num_vars is not None:
                raise ParseError("duplicate 'p cnf' header", lineno)
            header = HEADER_LINE.match(line)
            if not header:
                raise ParseError(f"expected 'p cnf <vars> <clauses>', got {line!r}", lineno)
            num_vars, num_clauses = int(header.group(1)), int(header.group(2))
            if num_vars < 1:
                raise ParseError("formula needs at least one variable", lineno)
            header_line = lineno
            continue
        if num_vars is None:
            raise ParseError("clause before 'p cnf' header", lineno)

        for token in line.split():
            try:
                literal = int(token)
            except ValueError:
                raise ParseError(f"invalid literal {token!r}", lineno) from None
            if literal == 0:
                clauses.append(tuple(pending))
                pending, pending_line = [], None
                continue
            if abs(literal) > num_vars:
                raise ParseError(f"literal {literal} out of range 1..{num_vars}", lineno)
            if pending_line is None:
                pending_line = lineno
            pending.append(literal)

    if num_vars is None:
        raise ParseError("missing 'p cnf' header")
    if pending:
        raise ParseError("clause is missing its terminating 0", pending_line)
    if len(clauses) != num_clauses:
        raise ParseError(f"header declares {num_clauses} clauses, found {len(clauses)}", header_line)
    return CnfFormula(num_vars=num_vars, clauses=tuple(clauses))


def render_dimacs(g: CnfFormula, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {part}" for part in comment.splitlines())
    lines.append(f"p cnf {g.num_vars} {g.num_clauses}")
    for clause in g.clauses:
        lines.append(' '.join(str(literal) for literal in clause + (0,)))
    return '\n'.join(lines) + '\n'


def evaluate_cnf(g: CnfFormula, assignment: int) -> bool:
    """Assignment bits follow the truth table encoding (x1 is bit 0)"""
    if not 0 <= assignment < (1 << g.num_vars):
        raise RangeError(f"Assignment {assignment} out of range for {g.num_vars} variables")
    return all(
        any(bool((assignment >> (abs(lit) - 1)) & 1) == (lit > 0) for lit in clause)
        for clause in g.clauses
    )


def truth_table_of_cnf(g: CnfFormula, limits: Optional[Limits] = None) -> TruthTable:
    resolve(limits).check('max_table_vars', g.num_vars, 'truth_table_of_cnf')
    columns = assignment_matrix(g.num_vars).astype(bool)
    value = np.ones(1 << g.num_vars, dtype=bool)
    for clause in g.clauses:
        satisfied = np.zeros_like(value)
        for literal in clause:
            column = columns[:, abs(literal) - 1]
            satisfied |= column if literal > 0 else ~column
        value &= satisfied
    return TruthTable(g.num_vars, value, limits)


def is_satisfiable(g: CnfFormula, limits: Optional[Limits] = None) -> bool:
    """Exhaustive check over all 2^n assignments"""
    return bool(truth_table_of_cnf(g, limits).bits.any())


def reduce(g: CnfFormula, rho: int) -> ReductionInstance:
    """
    Append (y_i or not z_i) for i = 1..rho+1 over fresh Y and Z blocks

    Args:
        g: formula over n variables
        rho: gap parameter, at least 1

    Returns:
        ReductionInstance over n + 2*rho + 2 variables
    """
    if rho < 1:
        raise DomainError(f"rho must be at least 1, got {rho}")
    n = g.num_vars
    extra = tuple((n + i, -(n + rho + 1 + i)) for i in range(1, rho + 2))
    result = CnfFormula(num_vars=n + 2 * rho + 2, clauses=g.clauses + extra)
    logger.debug(f"Reduced {n}-variable formula with rho={rho} to {result.num_vars} variables")
    return ReductionInstance(base=g, rho=rho, result=result)


@monitor_performance("verify_claims")
def verify_claims(inst: ReductionInstance, limits: Optional[Limits] = None) -> ClaimsVerdict:
    """
    Check the gap behaviour of one instance

    Unsatisfiable g must give level 1 and satisfiable g level >= rho + 1.
    """
    limits = resolve(limits)
    limits.check('max_oracle_vars', inst.result.num_vars, 'verify_claims')
    satisfiable = is_satisfiable(inst.base, limits)
    partition = symmetry_partition_bf(truth_table_of_cnf(inst.result, limits), limits)
    level = partition.level
    claims_hold = level >= inst.rho + 1 if satisfiable else level == 1
    if not claims_hold:
        logger.warning(f"Gap claim violated: sat={satisfiable} level={level} rho={inst.rho}")
    return ClaimsVerdict(g_satisfiable=satisfiable, level_of_f=level, rho=inst.rho,
                         claims_hold=claims_hold, partition=partition)


def random_cnf(rng: np.random.Generator, max_vars: int = 4, max_clauses: int = 5,
               max_width: int = 3) -> CnfFormula:
    """Random formula with 1..max_vars variables and 1..max_clauses clauses"""
    if max_vars < 1 or max_clauses < 1 or max_width < 1:
        raise DimensionError("random_cnf needs positive bounds")
    n = int(rng.integers(1, max_vars + 1))
    clauses = []
    for _ in range(int(rng.integers(1, max_clauses + 1))):
        width = int(rng.integers(1, min(max_width, n) + 1))
        variables = rng.choice(np.arange(1, n + 1), size=width, replace=False)
        signs = rng.choice((-1, 1), size=width)
        clauses.append(tuple(int(v * s) for v, s in zip(sorted(variables), signs)))
    return CnfFormula(num_vars=n, clauses=tuple(clauses))
