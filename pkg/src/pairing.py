"""
Pairing Module
Pairs a twisted complex with the test curves W0/W1 to get bigraded chain complexes,
computes their cohomology, reduces them and extracts the Jones polynomial
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

import sympy

import config
from src.errors import ChainComplexError, GradingModeError, PairingAuditError
from src.f2linalg import Bidegree, F2Matrix, P_A, RankTable, rank, tensor_basis, translate
from src.pillowcase_cat import MODULE_GENERATORS, TABLES, StructureTables, module_generators
from src.twisted import TwistedComplex

logger = logging.getLogger(__name__)

Q = sympy.Symbol('q')


@dataclass(frozen=True)
class BigradedChainComplex:
    """
    Finite complex over F2 with bigraded generators.

    Generators are (object index, tensor word, module generator) triples;
    the differential column j lists the image of generator j.
    """

    generators: Tuple[Tuple, ...]
    bidegrees: Tuple[Bidegree, ...]
    differential: F2Matrix
    mode: str = 'absolute'
    name: str = ''

    def __post_init__(self):
        n = len(self.generators)
        if len(self.bidegrees) != n or self.differential.shape != (n, n):
            raise ValueError("Generators, bidegrees and differential disagree in size")

    @property
    def dimension(self) -> int:
        return len(self.generators)

    def by_bidegree(self) -> Dict[Bidegree, List[int]]:
        groups: Dict[Bidegree, List[int]] = defaultdict(list)
        for i, bd in enumerate(self.bidegrees):
            groups[bd].append(i)
        return dict(groups)

    def check(self):
        """
        Raises:
            ChainComplexError: if the differential has a bidegree other than (1, 1) or does not square to zero
        """
        for r, c in self.differential.entries:
            (r0, s0), (r1, s1) = self.bidegrees[c], self.bidegrees[r]
            if (r1 - r0, s1 - s0) != (1, 1):
                raise ChainComplexError(
                    f"Differential entry {self.generators[c]} -> {self.generators[r]} has bidegree "
                    f"{(r1 - r0, s1 - s0)}",
                    {'source': list(map(str, self.generators[c])), 'target': list(map(str, self.generators[r]))},
                )
        if not (self.differential @ self.differential).is_zero():
            raise ChainComplexError("Differential does not square to zero", {'complex': self.name})

    def __repr__(self):
        return f"BigradedChainComplex({self.name!r}, dim={self.dimension}, mode={self.mode})"


def pair(tc: TwistedComplex, k: int, audit: Optional[bool] = None,
         tables: StructureTables = TABLES) -> BigradedChainComplex:
    """
    Apply the module functor of W_k to a twisted complex.

    Args:
        tc: Twisted complex
        k: Test curve index
        audit: Require the quadratic term to vanish (default from config)
        tables: Structure tables

    Returns:
        BigradedChainComplex: differential = linear term + quadratic term

    Raises:
        PairingAuditError: if auditing and some module mu3 on a composable entry pair is non-zero
    """
    if k not in (0, 1):
        raise ValueError(f"Test curve index must be 0 or 1, got {k!r}")
    if audit is None:
        audit = config.VERIFICATION['PAIRING_AUDIT']

    generators: List[Tuple] = []
    bidegrees: List[Bidegree] = []
    base: List[int] = []
    module_at: List[List[str]] = []
    for i, obj in enumerate(tc.objects):
        base.append(len(generators))
        names = module_generators(k, obj.lagrangian)
        module_at.append(names)
        for word in tensor_basis(obj.m):
            degree = sum(P_A[c] for c in word)
            for w in names:
                generators.append((i, word, w))
                bidegrees.append((degree - obj.sigma + MODULE_GENERATORS[w].degree, obj.h))

    def index(i: int, word_index: int, w: str) -> int:
        names = module_at[i]
        return base[i] + word_index * len(names) + names.index(w)

    entries: Set[Tuple[int, int]] = set()

    def add(target: int, t_word: int, t_w: str, source: int, s_word: int, s_w: str):
        entries.symmetric_difference_update({(index(target, t_word, t_w), index(source, s_word, s_w))})

    for (s, t), entry in tc.delta.items():
        for g, psi in entry.parts.items():
            columns = psi.columns()
            for w in module_at[s]:
                outputs = tables.act2(k, frozenset([g]), frozenset([w]))
                if not outputs:
                    continue
                for b, rows in columns.items():
                    for r in rows:
                        for out in outputs:
                            add(t, r, out, s, b, w)

    out_edges = tc.outgoing()
    quadratic = 0
    for s in sorted(out_edges):
        for m in out_edges[s]:
            for t in out_edges.get(m, ()):
                first, second = tc.delta[(s, m)], tc.delta[(m, t)]
                for g1, psi1 in first.parts.items():
                    for g2, psi2 in second.parts.items():
                        for w in module_at[s]:
                            outputs = tables.act3(k, frozenset([g2]), frozenset([g1]), frozenset([w]))
                            if not outputs:
                                continue
                            if audit:
                                raise PairingAuditError(
                                    f"Module mu3({g2}, {g1}, {w}) is non-zero on entries {s}->{m}->{t}",
                                    {'entries': [s, m, t], 'generators': [g2, g1, w], 'curve': k},
                                )
                            composite = psi2 @ psi1
                            for b, rows in composite.columns().items():
                                for r in rows:
                                    for out in outputs:
                                        add(t, r, out, s, b, w)
                                        quadratic += 1

    n = len(generators)
    complex_ = BigradedChainComplex(
        tuple(generators), tuple(bidegrees), F2Matrix(n, n, frozenset(entries)), tc.mode,
        f"{tc.name or 'tangle'}[W{k}]",
    )
    complex_.check()
    logger.info(f"Paired {tc!r} with W{k}: {complex_!r}"
                + (f", {quadratic} quadratic contributions" if quadratic else ''))
    return complex_


def _diagonal_blocks(c: BigradedChainComplex) -> Dict[int, Dict[int, List[int]]]:
    blocks: Dict[int, Dict[int, List[int]]] = defaultdict(lambda: defaultdict(list))
    for i, (r, s) in enumerate(c.bidegrees):
        blocks[r - s][s].append(i)
    return blocks


def _block(c: BigradedChainComplex, rows: List[int], cols: List[int]) -> F2Matrix:
    row_pos = {g: i for i, g in enumerate(rows)}
    col_pos = {g: j for j, g in enumerate(cols)}
    entries = frozenset(
        (row_pos[r], col_pos[col]) for r, col in c.differential.entries
        if r in row_pos and col in col_pos
    )
    return F2Matrix(len(rows), len(cols), entries)


def cohomology(c: BigradedChainComplex) -> RankTable:
    """
    Bigraded cohomology ranks, one (r - s)-diagonal at a time.

    Raises:
        ChainComplexError: if the differential does not square to zero
    """
    if not (c.differential @ c.differential).is_zero():
        raise ChainComplexError("Differential does not square to zero", {'complex': c.name})
    ranks: Dict[Bidegree, int] = {}
    for diagonal, columns in _diagonal_blocks(c).items():
        out_rank: Dict[int, int] = {}
        for s, gens in columns.items():
            targets = columns.get(s + 1, [])
            out_rank[s] = rank(_block(c, targets, gens)) if targets else 0
        for s, gens in columns.items():
            dim = len(gens) - out_rank[s] - out_rank.get(s - 1, 0)
            if dim:
                ranks[(diagonal + s, s)] = dim
    return RankTable(ranks, c.mode)


def reduce(c: BigradedChainComplex) -> BigradedChainComplex:
    """
    Gaussian elimination: cancel differential entries until the differential vanishes.

    Over F2 every non-zero entry is invertible, so the result has zero
    differential and one generator per unit of cohomology.
    """
    out: Dict[int, Set[int]] = defaultdict(set)
    into: Dict[int, Set[int]] = defaultdict(set)
    for r, col in c.differential.entries:
        out[col].add(r)
        into[r].add(col)
    alive = set(range(c.dimension))

    for source in range(c.dimension):
        if source not in alive or not out[source]:
            continue
        target = min(out[source])
        sources = into[target] - {source}
        targets = out[source] - {target}
        for x in sources:
            for y in targets:
                # zig-zag x -> target <- source -> y
                if y in out[x]:
                    out[x].discard(y)
                    into[y].discard(x)
                else:
                    out[x].add(y)
                    into[y].add(x)
        for gen in (source, target):
            for y in out.pop(gen, set()):
                into[y].discard(gen)
            for x in into.pop(gen, set()):
                out[x].discard(gen)
            alive.discard(gen)

    keep = sorted(alive)
    position = {g: i for i, g in enumerate(keep)}
    entries = frozenset((position[y], position[x]) for x in keep for y in out.get(x, ()) if y in position)
    reduced = BigradedChainComplex(
        tuple(c.generators[g] for g in keep),
        tuple(c.bidegrees[g] for g in keep),
        F2Matrix(len(keep), len(keep), entries),
        c.mode,
        c.name,
    )
    logger.debug(f"Reduced {c!r} to {reduced!r}")
    return reduced


def jones(rt: RankTable) -> sympy.Expr:
    """
    Graded Euler characteristic sum (-1)^s rank(r, s) q^(r - s).

    Raises:
        GradingModeError: for relative-mode tables
    """
    if rt.mode != 'absolute':
        raise GradingModeError("The Jones polynomial needs absolute gradings (supply an orientation)")
    return sympy.expand(sum(((-1) ** s) * v * Q ** (r - s) for (r, s), v in rt.ranks.items()))
