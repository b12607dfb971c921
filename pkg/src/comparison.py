"""
Comparison Module
The explicit isomorphism between a paired tangle complex and the reduced Khovanov
complex of the corresponding closure
"""

import logging
from typing import Dict, Tuple

from src.corpus import build_complex
from src.errors import ChainComplexError
from src.f2linalg import F2Matrix, rank
from src.khovanov_oracle import ReducedKhovanovComplex, reduced_khovanov_complex
from src.pairing import BigradedChainComplex, pair
from src.reports import CheckReport
from src.tangle import ResolutionCube, TangleDiagram, build_cube, close

logger = logging.getLogger(__name__)

# Letters a module generator puts on the closure circles: plain arc circle
# first when the arcs close into two circles, basepoint circle last
ARC_LETTERS: Dict[str, Tuple[str, ...]] = {
    'gamma': ('x',),
    'alpha': ('1', 'x'),
    'beta': ('x', 'x'),
    'tau': ('x',),
    'rho': ('1', 'x'),
    'sigma': ('x', 'x'),
}


def comparison_map(paired: BigradedChainComplex, cube: ResolutionCube,
                   oracle: ReducedKhovanovComplex) -> F2Matrix:
    """
    Generator-to-generator map from the paired complex to the oracle complex.

    A tangle circle keeps its letter on the identical closed circle; the
    module generator supplies the letters of the circles through the arcs.

    Raises:
        ChainComplexError: if a circle or generator has no counterpart
    """
    position = oracle.index()
    states = cube.states
    entries = set()
    for column, (i, word, w) in enumerate(paired.generators):
        state = states[i]
        tangle_circles = cube.vertices[state].circles
        closed = oracle.circles[state]
        letters = {circle: word[j] for j, circle in enumerate(tangle_circles)}
        arc = list(ARC_LETTERS[w])
        plain_letter = arc[0] if len(arc) == 2 else None

        out = []
        for circle in closed[:-1]:
            if circle in letters:
                out.append(letters[circle])
            elif plain_letter is not None:
                out.append(plain_letter)
                plain_letter = None
            else:
                raise ChainComplexError(f"Closed circle {sorted(map(str, circle))} has no tangle counterpart",
                                        {'state': state})
        if plain_letter is not None or len(out) != len(closed) - 1:
            raise ChainComplexError(f"Module generator {w} does not fit the closure at {state}",
                                    {'state': state, 'generator': w})
        image = (state, ''.join(out) + arc[-1])
        if image not in position:
            raise ChainComplexError(f"{image} is not an oracle generator", {'state': state})
        entries.add((position[image], column))
    return F2Matrix(oracle.dimension, paired.dimension, frozenset(entries))


def check_comparison_isomorphism(d: TangleDiagram, k: int, relative: bool = False) -> CheckReport:
    """
    Assert the comparison map is a bijection preserving bidegrees that commutes with the differentials.

    Without an orientation extending to the closure both sides use relative gradings.
    """
    relative = relative or not d.orientation_extends(k)
    tc = build_complex(d, relative)
    cube = build_cube(d, n_minus=tc.n_minus)
    paired = pair(tc, k)
    oracle = reduced_khovanov_complex(close(d, k), relative=relative)
    report = CheckReport(f"comparison isomorphism {d.name or 'tangle'} k={k}")

    phi = comparison_map(paired, cube, oracle)
    report.checked += 1
    if phi.shape[0] != phi.shape[1] or rank(phi) != phi.shape[0]:
        report.record(property='bijective', shape=list(phi.shape))

    for row, column in sorted(phi.entries):
        report.checked += 1
        if paired.bidegrees[column] != oracle.bidegrees[row]:
            report.record(property='bidegree', generator=[str(x) for x in paired.generators[column]],
                          ours=list(paired.bidegrees[column]), oracle=list(oracle.bidegrees[row]))

    report.checked += 1
    if phi @ paired.differential != oracle.differential @ phi:
        difference = (phi @ paired.differential) + (oracle.differential @ phi)
        report.record(property='chain map', mismatched_entries=len(difference.entries))

    report.details.update({'dimension': paired.dimension, 'mode': paired.mode})
    logger.info(f"Comparison isomorphism for {d.name or 'tangle'} k={k}: {report!r}")
    return report
