"""
Dotted Algebras Module
Dotted cobordisms between the crossingless tangles T0 and T1, and the endomorphism
algebras they form with and without the relation killing dots on the earring
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DottedCobordism:
    """
    Basis cobordism between crossingless tangles without circles.

    A product T_l x I has two disks: the earringed one ('e') and the other
    ('u'), each carrying at most one dot. A saddle T_source -> T_target is a
    single disk with 0 or 1 dot.
    """

    kind: str  # 'product' or 'saddle'
    source: int
    target: int
    dots: FrozenSet[str] = frozenset()
    saddle_dots: int = 0

    @property
    def degree(self) -> int:
        # -2 + Euler characteristic - 2 * dots
        if self.kind == 'product':
            return -2 * len(self.dots)
        return -1 - 2 * self.saddle_dots

    @property
    def earring_dotted(self) -> bool:
        if self.kind == 'product':
            return 'e' in self.dots
        return self.saddle_dots > 0


def _product(ell: int, dots=()) -> DottedCobordism:
    return DottedCobordism('product', ell, ell, frozenset(dots))


def _saddle(source: int, target: int, dots: int = 0) -> DottedCobordism:
    return DottedCobordism('saddle', source, target, frozenset(), dots)


BASIS: Dict[str, DottedCobordism] = {}
for _ell in (0, 1):
    BASIS[f'A{_ell}'] = _product(_ell)
    BASIS[f'B{_ell}'] = _product(_ell, 'e')
    BASIS[f'C{_ell}'] = _product(_ell, 'u')
    BASIS[f'D{_ell}'] = _product(_ell, 'eu')
# S_{target source}
BASIS['S10'] = _saddle(0, 1)
BASIS['S01'] = _saddle(1, 0)
BASIS["S10'"] = _saddle(0, 1, 1)
BASIS["S01'"] = _saddle(1, 0, 1)

_NAMES = {cobordism: name for name, cobordism in BASIS.items()}


def compose(x: DottedCobordism, y: DottedCobordism) -> FrozenSet[DottedCobordism]:
    """
    Stack y then x and reduce by the local relations.

    Dots on one disk square to zero; a saddle followed by a saddle is an
    annulus, cut along its neck into (dot on earringed disk) + (dot on the
    other disk). Non-composable pairs give 0.
    """
    if y.target != x.source:
        return frozenset()
    if x.kind == 'product' and y.kind == 'product':
        if x.dots & y.dots:
            return frozenset()
        return frozenset([_product(x.source, x.dots | y.dots)])
    if x.kind == 'saddle' and y.kind == 'saddle':
        dots = x.saddle_dots + y.saddle_dots
        ell = y.source
        if dots == 0:
            return frozenset([_product(ell, 'e'), _product(ell, 'u')])
        if dots == 1:
            return frozenset([_product(ell, 'eu')])
        return frozenset()
    # a saddle with a product on one side is still one disk
    saddle = x if x.kind == 'saddle' else y
    product = y if x.kind == 'saddle' else x
    dots = saddle.saddle_dots + len(product.dots)
    if dots > 1:
        return frozenset()
    return frozenset([_saddle(saddle.source, saddle.target, dots)])


@dataclass(frozen=True)
class DottedAlgebra:
    """Endomorphism algebra of T0 + T1 with product "x after y" and its gradings"""

    name: str
    basis: Tuple[str, ...]
    degrees: Dict[str, int]
    table: Dict[Tuple[str, str], FrozenSet[str]]

    def product(self, x: str, y: str) -> FrozenSet[str]:
        return self.table.get((x, y), frozenset())

    def graded_dimensions(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for b in self.basis:
            counts[self.degrees[b]] = counts.get(self.degrees[b], 0) + 1
        return dict(sorted(counts.items(), reverse=True))


def _build(name: str, reduced: bool) -> DottedAlgebra:
    def keep(c: DottedCobordism) -> bool:
        return not (reduced and c.earring_dotted)

    basis = tuple(n for n, c in BASIS.items() if keep(c))
    table: Dict[Tuple[str, str], FrozenSet[str]] = {}
    for x in basis:
        for y in basis:
            terms: set = set()
            for c in compose(BASIS[x], BASIS[y]):
                if keep(c):
                    terms ^= {_NAMES[c]}
            if terms:
                table[(x, y)] = frozenset(terms)
    degrees = {b: BASIS[b].degree for b in basis}
    logger.debug(f"Built {name} dotted algebra of dimension {len(basis)}")
    return DottedAlgebra(name, basis, degrees, table)


def reduced_algebra() -> DottedAlgebra:
    """The 6-dimensional algebra on A_l, C_l, S10, S01 (earring dots are zero)."""
    return _build('reduced', reduced=True)


def unreduced_algebra() -> DottedAlgebra:
    """The 12-dimensional algebra with dots allowed on the earring."""
    return _build('unreduced', reduced=False)


# Assignments into the pillowcase algebra
REDUCED_TO_PILLOWCASE: Dict[str, Tuple[str, ...]] = {
    'A0': ('a0',), 'A1': ('a1',),
    'C0': ('c0',), 'C1': ('c1',),
    'S10': ('q10',), 'S01': ('p01',),
}

UNREDUCED_TO_PILLOWCASE: Dict[str, Tuple[str, ...]] = {
    'A0': ('a0',), 'A1': ('a1',),
    'B0': ('b0',), 'B1': ('b1',),
    'C0': ('b0', 'c0'), 'C1': ('b1', 'c1'),
    'D0': ('d0',), 'D1': ('d1',),
    'S10': ('q10',), 'S01': ('p01',),
    "S10'": ('p10',), "S01'": ('q01',),
}


def element_name(c: DottedCobordism) -> Optional[str]:
    return _NAMES.get(c)
