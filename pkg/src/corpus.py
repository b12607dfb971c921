"""
Corpus Module
Loads bundled diagrams and Reidemeister pairs, runs the full pipeline on them and
produces the invariance and oracle-agreement reports
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy
from pydantic import ValidationError

import config
from src.errors import OrientationError, PostconditionError, TangleFormatError
from src.functor_f import build_delta
from src.input_guard import fingerprint, validate_crossing_count, validate_input_file, validate_label
from src.khovanov_oracle import compare, jones_from_bracket, reduced_khovanov
from src.pairing import RankTable, cohomology, jones, pair
from src.reports import CheckReport
from src.schemas import CorpusPair
from src.tangle import TangleDiagram, build_cube, close, parse_tangle, tangle_from_document, writhe_counts
from src.twisted import TwistedComplex, deloop, eliminate_all, verify_twisted

logger = logging.getLogger(__name__)


def load_tangle(path: Union[str, Path]) -> TangleDiagram:
    """Validate and parse a tangle file; the name defaults to the file stem."""
    path = Path(path)
    data = validate_input_file(path)
    data.setdefault('name', path.stem)
    diagram = parse_tangle(data)
    validate_crossing_count(diagram.n_crossings)
    for label in diagram.labels():
        validate_label(label)
    logger.debug(f"Loaded {diagram!r} from {path.name} ({fingerprint(path.read_text(encoding='utf-8'))[:12]})")
    return diagram


def load_pair(path: Union[str, Path]) -> CorpusPair:
    path = Path(path)
    data = validate_input_file(path)
    try:
        return CorpusPair.model_validate(data)
    except ValidationError as e:
        raise TangleFormatError(f"{path.name} is not a Reidemeister pair file",
                                {'errors': [err['msg'] for err in e.errors()]})


def load_corpus(directory: Union[str, Path, None] = None) -> List[Tuple[str, CorpusPair]]:
    """All pair files of a corpus directory, sorted by file name."""
    directory = Path(directory or config.CORPUS_DIR)
    pairs = [(path.stem, load_pair(path)) for path in sorted(directory.glob('*.json'))]
    logger.info(f"Loaded {len(pairs)} Reidemeister pairs from {directory}")
    return pairs


def build_complex(d: TangleDiagram, relative: bool = False, checks: Optional[bool] = None) -> TwistedComplex:
    """
    Twisted complex of a tangle diagram.

    Unoriented diagrams always give a relative-mode complex.
    """
    if checks is None:
        checks = config.VERIFICATION['BUILD_CHECKS']
    if not d.is_oriented and not relative:
        logger.warning(f"{d.name or 'tangle'} has no orientation; using relative gradings")
        relative = True
    counts = (0, 0) if relative else writhe_counts(d)
    cube = build_cube(d, n_minus=counts[1])
    tc = build_delta(cube, counts, relative)
    if checks:
        report = verify_twisted(tc)
        if not report.passed:
            raise PostconditionError(f"Twisted complex of {d.name or 'tangle'} fails its checks", report.to_dict())
    return tc


def compute_rank_table(d: TangleDiagram, k: int, relative: bool = False, eliminate: bool = False) -> RankTable:
    """
    Paired bigraded cohomology of a tangle against W_k.

    Args:
        d: Tangle diagram
        k: Test curve / closure index
        relative: Ignore the orientation
        eliminate: Deloop and cancel unit entries before pairing
    """
    tc = build_complex(d, relative)
    audit = None
    if eliminate:
        tc = eliminate_all(deloop(tc))
        audit = False
    return cohomology(pair(tc, k, audit=audit))


def require_extension(d: TangleDiagram, k: int):
    if not d.orientation_extends(k):
        raise OrientationError(
            f"Orientation of {d.name or 'tangle'} does not extend to closure {k}; "
            f"comparison needs absolute gradings",
            {'tangle': d.name, 'closure': k},
        )


def compare_with_oracle(d: TangleDiagram, k: int, eliminate: bool = False) -> Dict:
    """
    Pipeline table against the oracle table of the closure, plus both Jones polynomials.

    Raises:
        OrientationError: if the orientation does not extend to the closure
    """
    require_extension(d, k)
    ours = compute_rank_table(d, k, eliminate=eliminate)
    link = close(d, k)
    oracle = reduced_khovanov(link)
    report = compare(ours, oracle, f"{d.name or 'tangle'} closure {k}")
    ours_jones, bracket_jones = jones(ours), jones_from_bracket(link)
    report.checked += 1
    if sympy.expand(ours_jones - bracket_jones) != 0:
        report.record(jones=str(ours_jones), bracket=str(bracket_jones))
    return {
        'tangle': d.name,
        'closure': k,
        'passed': report.passed,
        'ours': ours.to_dict(),
        'oracle': oracle.to_dict(),
        'jones': str(ours_jones),
        'bracket_jones': str(bracket_jones),
        'report': report,
    }


def _pair_tables(name: str, corpus_pair: CorpusPair) -> List[Dict]:
    left, right = (tangle_from_document(doc) for doc in corpus_pair.diagrams)
    rows = []
    for k in (0, 1):
        tables = []
        for d in (left, right):
            tables.append(compute_rank_table(d, k))
        rows.append({
            'pair': name,
            'move': corpus_pair.move,
            'closure': k,
            'equal': tables[0] == tables[1],
            'left': tables[0].to_dict(),
            'right': tables[1].to_dict(),
        })
    return rows


def invariance_report(pairs: Sequence[Tuple[str, CorpusPair]], threads: Optional[int] = None) -> CheckReport:
    """
    Absolute paired rank tables of both diagrams of every pair, for k = 0 and 1.

    Returns:
        CheckReport: one violation per pair and closure whose tables differ
    """
    threads = threads or config.PERFORMANCE['THREADS']
    report = CheckReport('reidemeister invariance')
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda item: _pair_tables(*item), pairs))
    rows = [row for group in results for row in group]
    for row in rows:
        report.checked += 1
        if not row['equal']:
            report.record(pair=row['pair'], move=row['move'], closure=row['closure'],
                          left=row['left'], right=row['right'])
    report.details['rows'] = rows
    logger.info(f"Invariance over {len(pairs)} pairs: {report!r}")
    return report


def oracle_report(paths: Sequence[Union[str, Path]], threads: Optional[int] = None,
                  eliminate: bool = False) -> CheckReport:
    """
    Pipeline versus oracle for every tangle and every closure its orientation extends to.
    """
    threads = threads or config.PERFORMANCE['THREADS']
    diagrams = [load_tangle(p) for p in paths]
    jobs = [(d, k) for d in diagrams for k in (0, 1) if d.orientation_extends(k)]
    report = CheckReport('oracle agreement')
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda job: compare_with_oracle(*job, eliminate=eliminate), jobs))
    rows = []
    for result in results:
        sub = result.pop('report')
        report.absorb(sub)
        rows.append(result)
    report.details['rows'] = rows
    logger.info(f"Oracle agreement over {len(jobs)} closures: {report!r}")
    return report


def bundled_tangles() -> List[Path]:
    return sorted(config.TANGLES_DIR.glob('*.json'))
