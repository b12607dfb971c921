"""
Pillowcase Khovanov Toolkit
Command-line front end: builds tangle twisted complexes, pairs them with the test
curves, and checks the results against reduced Khovanov homology
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

import config
from src import corpus
from src.comparison import check_comparison_isomorphism
from src.errors import ChainComplexError, PairingAuditError, PillowcaseKhError, PostconditionError
from src.functor_f import check_image_mu3, check_multiplicativity, frobenius_identities
from src.input_guard import fingerprint, validate_input_file
from src.khovanov_oracle import jones_from_bracket, reduced_khovanov
from src.logger import AppLogger, AuditLogger
from src.pairing import cohomology, jones, pair, reduce
from src.pillowcase_cat import (
    export_tables, image_f1_mu3_vanishes, verify_ainfty, verify_algebra_comparisons, verify_module_relations,
)
from src.reports import CheckReport, comparison_frame, render_checks, render_rank_table
from src.schemas import COMMANDS, RunConfig
from src.tangle import close, parse_link
from src.twisted import deloop, eliminate_all, to_document, verify_twisted

logger = AppLogger.get_logger(__name__)

# Errors that mean a computed object failed a check rather than bad input
_CHECK_ERRORS = (PostconditionError, PairingAuditError, ChainComplexError)

Outcome = Tuple[int, Any]


def _ok(passed: bool = True) -> int:
    return config.EXIT_CODES['OK'] if passed else config.EXIT_CODES['CHECK_FAILED']


def _reports_payload(reports: Sequence[CheckReport]) -> Dict:
    return {'passed': all(r.passed for r in reports), 'checks': [r.to_dict() for r in reports]}


def _complex_for(path: Path, cfg: RunConfig, closure: Optional[int] = None):
    d = corpus.load_tangle(path)
    relative = cfg.relative
    if closure is not None and not relative and not d.orientation_extends(closure):
        logger.warning(f"Orientation of {d.name or 'tangle'} does not extend to closure {closure}; "
                       f"pairing in relative mode")
        relative = True
    tc = corpus.build_complex(d, relative)
    if cfg.eliminate:
        tc = eliminate_all(deloop(tc))
    return d, tc


def cmd_verify(cfg: RunConfig) -> Outcome:
    reports: List[CheckReport] = [
        verify_ainfty(),
        verify_module_relations(0),
        verify_module_relations(1),
        verify_algebra_comparisons(),
        image_f1_mu3_vanishes(),
        frobenius_identities(),
        check_multiplicativity(),
        check_image_mu3(),
    ]
    for path in cfg.inputs:
        d = corpus.load_tangle(path)
        tc = corpus.build_complex(d, cfg.relative, checks=False)
        twisted_report = verify_twisted(tc)
        twisted_report.name = f"twisted complex {d.name}"
        reports.append(twisted_report)
        for k in (0, 1):
            reports.append(check_comparison_isomorphism(d, k, cfg.relative))

    audit = AuditLogger()
    for r in reports:
        audit.log_check(r.name, r.passed, r.violation_count, {'checked': r.checked})
    passed = all(r.passed for r in reports)
    if cfg.output_format == 'table':
        return _ok(passed), render_checks(reports)
    payload = _reports_payload(reports)
    if cfg.emit_tables:
        payload['tables'] = export_tables()
    return _ok(passed), payload


def cmd_build(cfg: RunConfig) -> Outcome:
    documents = []
    for path in cfg.inputs:
        _, tc = _complex_for(path, cfg)
        documents.append(to_document(tc))
    if cfg.output_format == 'table':
        lines = [f"{doc['name']}: {len(doc['objects'])} objects, {len(doc['delta'])} entries, {doc['mode']}"
                 for doc in documents]
        return _ok(), '\n'.join(lines)
    return _ok(), documents if len(documents) > 1 else documents[0]


def cmd_pair(cfg: RunConfig) -> Outcome:
    results = []
    for path in cfg.inputs:
        d, tc = _complex_for(path, cfg, cfg.closure)
        paired = pair(tc, cfg.closure, audit=False if cfg.eliminate else None)
        table = cohomology(paired)
        reduced = reduce(paired)
        results.append({
            'tangle': d.name,
            'closure': cfg.closure,
            'complex': {
                'dimension': paired.dimension,
                'reduced_dimension': reduced.dimension,
                'generators': [
                    {'object': i, 'word': word, 'module': w, 'bidegree': list(bd)}
                    for (i, word, w), bd in zip(paired.generators, paired.bidegrees)
                ],
                'differential': paired.differential.to_dict(),
            },
            'rank_table': table.to_dict(),
            '_table': table,
        })
    if cfg.output_format == 'table':
        return _ok(), '\n\n'.join(f"{r['tangle']} [W{r['closure']}]\n{render_rank_table(r.pop('_table'))}"
                                  for r in results)
    for r in results:
        r.pop('_table')
    return _ok(), results if len(results) > 1 else results[0]


def _link_for(path: Path, cfg: RunConfig):
    document = validate_input_file(path)
    if document.get('endpoints'):
        return close(corpus.load_tangle(path), cfg.closure)
    document.setdefault('name', path.stem)
    return parse_link(document)


def cmd_khovanov(cfg: RunConfig) -> Outcome:
    results = []
    for path in cfg.inputs:
        link = _link_for(path, cfg)
        table = reduced_khovanov(link, relative=cfg.relative)
        results.append((link.name, table))
    if cfg.output_format == 'table':
        return _ok(), '\n\n'.join(f"{name}\n{render_rank_table(t)}" for name, t in results)
    payload = [{'link': name, 'rank_table': t.to_dict()} for name, t in results]
    return _ok(), payload if len(payload) > 1 else payload[0]


def cmd_compare(cfg: RunConfig) -> Outcome:
    reports, rows = [], []
    for path in cfg.inputs:
        d = corpus.load_tangle(path)
        result = corpus.compare_with_oracle(d, cfg.closure, eliminate=cfg.eliminate)
        reports.append(result.pop('report'))
        rows.append(result)
    passed = all(r.passed for r in reports)
    for r in reports:
        AuditLogger().log_check(r.name, r.passed, r.violation_count)
    if cfg.output_format == 'table':
        frame = comparison_frame([{k: v for k, v in row.items() if k in ('tangle', 'closure', 'passed', 'jones')}
                                  for row in rows])
        return _ok(passed), frame.to_string(index=False)
    return _ok(passed), {'passed': passed, 'comparisons': rows, 'checks': [r.to_dict() for r in reports]}


def cmd_invariance(cfg: RunConfig) -> Outcome:
    pairs = []
    for path in cfg.inputs:
        if path.is_dir():
            pairs.extend(corpus.load_corpus(path))
        else:
            pairs.append((path.stem, corpus.load_pair(path)))
    report = corpus.invariance_report(pairs, cfg.threads)
    AuditLogger().log_check(report.name, report.passed, report.violation_count, {'pairs': len(pairs)})
    if cfg.output_format == 'table':
        frame = comparison_frame([{k: row[k] for k in ('pair', 'move', 'closure', 'equal')}
                                  for row in report.details['rows']])
        return _ok(report.passed), frame.to_string(index=False)
    return _ok(report.passed), report.to_dict()


def cmd_jones(cfg: RunConfig) -> Outcome:
    results = []
    for path in cfg.inputs:
        d = corpus.load_tangle(path)
        corpus.require_extension(d, cfg.closure)
        table = corpus.compute_rank_table(d, cfg.closure, cfg.relative, cfg.eliminate)
        entry = {'tangle': d.name, 'closure': cfg.closure, 'jones': str(jones(table)),
                 'bracket': str(jones_from_bracket(close(d, cfg.closure)))}
        results.append(entry)
    if cfg.output_format == 'table':
        return _ok(), comparison_frame(results).to_string(index=False)
    return _ok(), results if len(results) > 1 else results[0]


HANDLERS = {
    'verify': cmd_verify,
    'build': cmd_build,
    'pair': cmd_pair,
    'khovanov': cmd_khovanov,
    'compare': cmd_compare,
    'invariance': cmd_invariance,
    'jones': cmd_jones,
}


def error_payload(error: PillowcaseKhError) -> Dict:
    return {'error': error.to_dict()}


def run(cfg: RunConfig) -> Outcome:
    """
    Execute one command.

    Args:
        cfg: Validated run configuration

    Returns:
        tuple: (exit code, JSON-ready payload or rendered table)
    """
    logger.info(f"Running {cfg.command} on {[str(p) for p in cfg.inputs]}")
    audit = AuditLogger()
    inputs = [str(p) for p in cfg.inputs]
    try:
        code, payload = HANDLERS[cfg.command](cfg)
    except _CHECK_ERRORS as e:
        logger.error(f"{cfg.command} failed a check: {e}")
        code, payload = config.EXIT_CODES['CHECK_FAILED'], error_payload(e)
    except PillowcaseKhError as e:
        logger.error(f"{cfg.command} rejected its input: {e}")
        code, payload = config.EXIT_CODES['USAGE_ERROR'], error_payload(e)

    status = {0: 'ok', 1: 'check_failed', 2: 'usage_error'}[code]
    audit.log_run(cfg.command, inputs, status, {
        'fingerprints': [fingerprint(Path(p).read_text(encoding='utf-8'))[:16]
                         for p in cfg.inputs if Path(p).is_file()],
    })
    return code, payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='pillowcase-kh',
        description=config.APP_DESCRIPTION,
    )
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('inputs', nargs='*', type=Path, help="tangle, link, pair files or a corpus directory")
    parser.add_argument('--closure', type=int, choices=(0, 1), default=0, help="closure / test curve index k")
    parser.add_argument('--format', dest='output_format', choices=('json', 'table'),
                        default=config.OUTPUT['DEFAULT_FORMAT'])
    parser.add_argument('--relative', action='store_true', help="ignore the orientation")
    parser.add_argument('--eliminate', action='store_true', help="deloop and cancel unit entries before pairing")
    parser.add_argument('--emit-tables', action='store_true', help="include the structure tables in verify output")
    parser.add_argument('--threads', type=int, default=config.PERFORMANCE['THREADS'])
    parser.add_argument('--log-level', default=config.LOGGING['LEVEL'])
    return parser


def emit(payload: Any):
    if isinstance(payload, str):
        print(payload)
    else:
        print(json.dumps(payload, indent=config.OUTPUT['JSON_INDENT'], default=str))


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    AppLogger.setup_logging(log_level=args.log_level)
    try:
        cfg = RunConfig(
            command=args.command,
            inputs=args.inputs,
            closure=args.closure,
            relative=args.relative,
            output_format=args.output_format,
            eliminate=args.eliminate,
            emit_tables=args.emit_tables,
            threads=args.threads,
        )
    except ValidationError as e:
        emit({'error': {'type': 'UsageError', 'message': 'Invalid arguments',
                        'details': {'errors': [err['msg'] for err in e.errors()]}}})
        return config.EXIT_CODES['USAGE_ERROR']

    code, payload = run(cfg)
    emit(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
