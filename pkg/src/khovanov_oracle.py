"""
Khovanov Oracle Module
Reduced Khovanov complex of a closed link diagram, built directly from the cube of
resolutions with the merge/split maps, plus the Kauffman-bracket Jones polynomial.
Shares only the F2 linear algebra, the diagram record and the check report with the pillowcase pipeline.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Tuple

import sympy

import config
from src.errors import ChainComplexError, GradingModeError, OrientationError
from src.f2linalg import F2Matrix, P_A, RankTable, rank
from src.reports import CheckReport
from src.tangle import LinkDiagram

logger = logging.getLogger(__name__)

A = sympy.Symbol('A')
Q = sympy.Symbol('q')

Circle = FrozenSet


def _link_labels(link: LinkDiagram) -> set:
    labels = set(link.loops)
    for crossing in link.crossings:
        labels.update(crossing)
    return labels


def _label_order(label) -> Tuple:
    return (isinstance(label, str), label if isinstance(label, int) else 0, str(label))


def _join(labels: set, joined: List[Tuple]) -> List[Circle]:
    parent = {label: label for label in labels}

    def root(label):
        while parent[label] != label:
            parent[label] = parent[parent[label]]
            label = parent[label]
        return label

    for a, b in joined:
        parent[root(a)] = root(b)
    classes: Dict = defaultdict(set)
    for label in labels:
        classes[root(label)].add(label)
    return [frozenset(members) for members in classes.values()]


def state_circles(link: LinkDiagram, state: str) -> Tuple[Circle, ...]:
    """Circles of a complete resolution, basepoint circle last, others by smallest label."""
    zero_pairs, one_pairs = config.resolution_pairs()
    joined = [(crossing[a], crossing[b])
              for crossing, bit in zip(link.crossings, state)
              for a, b in (zero_pairs if bit == '0' else one_pairs)]
    circles = _join(_link_labels(link), joined)
    based = [c for c in circles if link.basepoint in c]
    others = sorted((c for c in circles if link.basepoint not in c),
                    key=lambda c: min(_label_order(label) for label in c))
    return tuple(others + based)


def _merge(a: str, b: str) -> Optional[str]:
    if a == 'x' and b == 'x':
        return None
    return 'x' if 'x' in (a, b) else '1'


def _split(a: str) -> List[Tuple[str, str]]:
    return [('x', 'x')] if a == 'x' else [('1', 'x'), ('x', '1')]


def edge_images(source: Tuple[Circle, ...], target: Tuple[Circle, ...], word: str) -> List[str]:
    """
    Image of a labelled resolution under the merge or split along one edge.

    Raises:
        ChainComplexError: if the edge neither merges two circles nor splits one
    """
    kept = {c: i for i, c in enumerate(source) if c in target}
    gone = [i for i, c in enumerate(source) if c not in target]
    new = [j for j, c in enumerate(target) if c not in source]
    letters = [None] * len(target)
    for j, circle in enumerate(target):
        if circle in kept:
            letters[j] = word[kept[circle]]

    if len(gone) == 2 and len(new) == 1:
        merged = _merge(word[gone[0]], word[gone[1]])
        if merged is None:
            return []
        letters[new[0]] = merged
        return [''.join(letters)]
    if len(gone) == 1 and len(new) == 2:
        images = []
        for u, v in _split(word[gone[0]]):
            letters[new[0]], letters[new[1]] = u, v
            images.append(''.join(letters))
        return images
    raise ChainComplexError(
        f"Edge changes {len(gone)} circle(s) into {len(new)}; diagram is not a planar link",
        {'source_circles': len(source), 'target_circles': len(target)},
    )


@dataclass(frozen=True)
class ReducedKhovanovComplex:
    """
    Subcomplex of the Khovanov cube where the basepoint circle carries x.

    Generators are (state, word) with one letter per circle of the state,
    basepoint circle last; bidegrees are (q + h, h).
    """

    link: LinkDiagram
    circles: Dict[str, Tuple[Circle, ...]]
    generators: Tuple[Tuple[str, str], ...]
    bidegrees: Tuple[Tuple[int, int], ...]
    differential: F2Matrix
    mode: str

    @property
    def dimension(self) -> int:
        return len(self.generators)

    def index(self) -> Dict[Tuple[str, str], int]:
        return {g: i for i, g in enumerate(self.generators)}

    def __repr__(self):
        return f"ReducedKhovanovComplex({self.link.name!r}, dim={self.dimension}, mode={self.mode})"


def _counts(link: LinkDiagram, relative: bool) -> Tuple[int, int]:
    if relative:
        return (0, 0)
    if not link.is_oriented:
        raise OrientationError(
            f"Link {link.name or ''} has no orientation; request relative gradings instead",
            {'link': link.name},
        )
    return link.writhe_counts()


def reduced_khovanov_complex(link: LinkDiagram, relative: bool = False) -> ReducedKhovanovComplex:
    """
    Build the reduced Khovanov complex of a closed diagram.

    Args:
        link: Closed link diagram with basepoint
        relative: Ignore the orientation (n+ = n- = 0)

    Returns:
        ReducedKhovanovComplex: generators, bigradings and differential

    Raises:
        OrientationError: for unoriented links in absolute mode
    """
    n_plus, n_minus = _counts(link, relative)
    n = link.n_crossings
    states = sorted((''.join(bits) for bits in product('01', repeat=n)), key=lambda s: (s.count('1'), s))
    circles = {state: state_circles(link, state) for state in states}

    generators: List[Tuple[str, str]] = []
    bidegrees: List[Tuple[int, int]] = []
    for state in states:
        h = state.count('1') - n_minus
        for head in product('1x', repeat=len(circles[state]) - 1):
            word = ''.join(head) + 'x'
            q = sum(P_A[c] for c in word) + h + n_plus - n_minus
            generators.append((state, word))
            bidegrees.append((q + h, h))
    position = {g: i for i, g in enumerate(generators)}

    entries = set()
    for state, word in generators:
        for c, bit in enumerate(state):
            if bit != '0':
                continue
            target = state[:c] + '1' + state[c + 1:]
            for image in edge_images(circles[state], circles[target], word):
                if image[-1] != 'x':
                    raise ChainComplexError("Differential leaves the reduced subcomplex",
                                            {'state': state, 'word': word})
                entries ^= {(position[(target, image)], position[(state, word)])}

    complex_ = ReducedKhovanovComplex(
        link, circles, tuple(generators), tuple(bidegrees),
        F2Matrix(len(generators), len(generators), frozenset(entries)),
        'relative' if relative else 'absolute',
    )
    if not (complex_.differential @ complex_.differential).is_zero():
        raise ChainComplexError("Oracle differential does not square to zero", {'link': link.name})
    logger.debug(f"Built {complex_!r} over {len(states)} resolutions")
    return complex_


def _homology(c: ReducedKhovanovComplex) -> Dict[Tuple[int, int], int]:
    diagonals: Dict[int, Dict[int, List[int]]] = defaultdict(lambda: defaultdict(list))
    for i, (r, s) in enumerate(c.bidegrees):
        diagonals[r - s][s].append(i)

    def block(rows: List[int], cols: List[int]) -> F2Matrix:
        rpos = {g: i for i, g in enumerate(rows)}
        cpos = {g: j for j, g in enumerate(cols)}
        return F2Matrix(len(rows), len(cols), frozenset(
            (rpos[r], cpos[col]) for r, col in c.differential.entries if r in rpos and col in cpos
        ))

    ranks: Dict[Tuple[int, int], int] = {}
    for diagonal, by_s in diagonals.items():
        d_rank = {s: rank(block(by_s[s + 1], gens)) if s + 1 in by_s else 0 for s, gens in by_s.items()}
        for s, gens in by_s.items():
            dim = len(gens) - d_rank[s] - d_rank.get(s - 1, 0)
            if dim:
                ranks[(diagonal + s, s)] = dim
    return ranks


def reduced_khovanov(link: LinkDiagram, relative: bool = False) -> RankTable:
    """Reduced Khovanov homology ranks in (q + h, h) coordinates."""
    complex_ = reduced_khovanov_complex(link, relative)
    table = RankTable(_homology(complex_), complex_.mode)
    logger.info(f"Oracle homology of {link.name or 'link'}: total rank {table.total_rank}")
    return table


def compare(ours: RankTable, oracle: RankTable, name: str = 'oracle comparison') -> CheckReport:
    """
    Entry-by-entry comparison of two absolute rank tables.

    Raises:
        GradingModeError: if either table is relative
    """
    if ours.mode != 'absolute' or oracle.mode != 'absolute':
        raise GradingModeError("Comparison with the oracle needs absolute gradings on both sides",
                               {'ours': ours.mode, 'oracle': oracle.mode})
    report = CheckReport(name)
    for key in sorted(set(ours.ranks) | set(oracle.ranks)):
        report.checked += 1
        mine, theirs = ours.ranks.get(key, 0), oracle.ranks.get(key, 0)
        if mine != theirs:
            report.record(bidegree=list(key), ours=mine, oracle=theirs)
    return report


# Kauffman bracket

def kauffman_bracket(link: LinkDiagram) -> sympy.Expr:
    """State sum <D> = sum over states of A^(#0 - #1) (-A^2 - A^-2)^(circles - 1)."""
    loop = -A ** 2 - A ** -2
    total = sympy.Integer(0)
    for bits in product('01', repeat=link.n_crossings):
        state = ''.join(bits)
        ones = state.count('1')
        total += A ** (len(state) - 2 * ones) * loop ** (len(state_circles(link, state)) - 1)
    return sympy.expand(total)


def jones_from_bracket(link: LinkDiagram) -> sympy.Expr:
    """
    Jones polynomial normalized like the reduced Khovanov Euler characteristic.

    Substitutes A^-2 = -q in A^-n <D> and multiplies by (-1)^n- q^(n+ - 2n- - 1),
    so the unknot gives q^-1.
    """
    n_plus, n_minus = _counts(link, relative=False)
    shifted = sympy.expand(kauffman_bracket(link) * A ** (-link.n_crossings))
    result = sympy.Integer(0)
    for term in sympy.Add.make_args(shifted):
        coeff, exponent = term.as_coeff_exponent(A)
        if exponent % 2:
            raise ChainComplexError(f"Odd power A^{exponent} in normalized bracket",
                                    {'link': link.name, 'exponent': int(exponent)})
        result += coeff * (-Q) ** (-exponent // 2)
    return sympy.expand(((-1) ** n_minus) * Q ** (n_plus - 2 * n_minus - 1) * result)
