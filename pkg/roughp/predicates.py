"""
Built-in core predicates
Description: the decidable properties shipped with the toolkit. Each factory
returns a CorePredicate; wrap_core() turns it into a paddable language.

Structured predicates read their core as a record: the aligned pair (1,0)
followed by a list of blocks, each block a base-k number (most significant
digit first, empty block = 0). The (1,0) pair is never a valid leading pair,
so strip() leaves a record intact. Anything that does not parse is a
non-member.
"""

from itertools import product
import logging
import math

from .languages import CorePredicate
from .sigma import (
    SymString,
    decode_blocks,
    encode_blocks,
    from_digits,
    to_digits,
    weight,
)

logger = logging.getLogger(__name__)

RECORD_MARK = (1, 0)
DEFAULT_MAX_SUBSETS = 2**20
DEFAULT_MAX_VARIABLES = 20


def parse_record(core):
    """Numbers carried by a record core, or None when core is not a record"""
    if core.symbols[:2] != RECORD_MARK:
        return None
    blocks = decode_blocks(core[2:])
    if blocks is None:
        return None
    return [from_digits(block.symbols, core.k) for block in blocks]


def encode_record(numbers, k=2):
    """Inverse of parse_record for non-negative integers"""
    blocks = [SymString.raw(to_digits(value, k), k) for value in numbers]
    return SymString.raw(RECORD_MARK, k) + encode_blocks(blocks, k)


def parity_odd(k=2):
    return CorePredicate(
        name="parity-odd",
        k=k,
        eval=lambda core: weight(core) % 2 == 1,
        suggested_w0=SymString((0,), k),
        suggested_w1=SymString((1,), k),
        description="weight of the core is odd",
    )


def _has_adjacent_ones(core):
    symbols = core.symbols
    return any(a == 1 and b == 1 for a, b in zip(symbols, symbols[1:]))


def substring_11(k=2):
    return CorePredicate(
        name="substring-11",
        k=k,
        eval=_has_adjacent_ones,
        suggested_w0=SymString((0,), k),
        suggested_w1=SymString((1, 1), k),
        description="core contains two adjacent 1 symbols",
    )


def edge_endpoints(index):
    """Edge index -> (i, j), i < j, enumerating (0,1), (0,2), (1,2), (0,3), ..."""
    j = (1 + math.isqrt(1 + 8 * index)) // 2
    return index - j * (j - 1) // 2, j


def edge_index(i, j):
    i, j = min(i, j), max(i, j)
    return j * (j - 1) // 2 + i


def _has_triangle(core):
    indices = parse_record(core)
    if not indices:
        return False
    vertices = math.isqrt(2 * len(indices) - 1) + 1  # ceil(sqrt(2 * count))
    neighbours = [set() for _ in range(vertices)]
    edges = []
    for index in indices:
        i, j = edge_endpoints(index)
        if j >= vertices:
            return False
        neighbours[i].add(j)
        neighbours[j].add(i)
        edges.append((i, j))
    return any(neighbours[i] & neighbours[j] for i, j in edges)


def triangle(k=2):
    return CorePredicate(
        name="triangle",
        k=k,
        eval=_has_triangle,
        suggested_w0=SymString((0,), k),
        suggested_w1=encode_record([edge_index(0, 1), edge_index(0, 2), edge_index(1, 2)], k),
        description="graph given by an edge-index list contains a triangle",
    )


def _subset_sum(max_subsets, core):
    numbers = parse_record(core)
    if not numbers:
        return False
    *items, target = numbers
    if 2 ** len(items) > max_subsets:
        logger.warning(
            f"subset-sum budget exceeded: {len(items)} items > {max_subsets} subsets; answering false"
        )
        return False
    reachable = {0}
    for item in items:
        reachable |= {total + item for total in reachable if total + item <= target}
        if target in reachable:
            return True
    return target in reachable


def subset_sum(k=2, max_subsets=DEFAULT_MAX_SUBSETS):
    return CorePredicate(
        name="subset-sum",
        k=k,
        eval=lambda core: _subset_sum(max_subsets, core),
        suggested_w0=SymString((0,), k),
        suggested_w1=encode_record([1, 1], k),
        description="some sub-multiset of the items sums to the last number",
    )


def parse_cnf(numbers):
    """0 separates clauses, 2v+1 is literal v, 2v+2 is literal not-v"""
    clauses = [[]]
    for value in numbers:
        if value == 0:
            clauses.append([])
        else:
            clauses[-1].append(((value - 1) // 2, value % 2 == 1))
    if numbers and numbers[-1] == 0:
        clauses.pop()
    if not numbers:
        clauses = []
    return clauses


def _cnf_satisfiable(max_variables, core):
    numbers = parse_record(core)
    if numbers is None:
        return False
    clauses = parse_cnf(numbers)
    variables = 1 + max((v for clause in clauses for v, _ in clause), default=-1)
    if variables > max_variables:
        logger.warning(
            f"cnf-sat budget exceeded: {variables} variables > {max_variables}; answering false"
        )
        return False
    for assignment in product((False, True), repeat=variables):
        if all(any(assignment[v] == positive for v, positive in clause) for clause in clauses):
            return True
    return False


def cnf_sat(k=2, max_variables=DEFAULT_MAX_VARIABLES):
    return CorePredicate(
        name="cnf-sat",
        k=k,
        eval=lambda core: _cnf_satisfiable(max_variables, core),
        # x0 and (not x0)
        suggested_w0=encode_record([1, 0, 2], k),
        suggested_w1=encode_record([1], k),
        description="CNF formula over numbered variables is satisfiable",
    )
