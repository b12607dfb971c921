"""
Twisted Complex Module
Twisted complexes over the pillowcase category: defining condition, delooping,
cancellation of unit entries, and JSON serialization
"""

import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import config
from src.errors import NonComposableError, PivotError, PostconditionError
from src.f2linalg import F2Matrix, P_A, inverse, tensor_basis
from src.functor_f import SigmaMorphism, SigmaObject
from src.pillowcase_cat import IMAGE_F1_SPAN, TABLES, UNITS, StructureTables
from src.reports import CheckReport

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]  # (source index, target index)


@dataclass(frozen=True)
class TwistedComplex:
    """
    Objects of the additive enlargement with a strictly filtered differential.

    ``delta`` is keyed by (source index, target index); objects are listed
    with non-decreasing h.
    """

    objects: Tuple[SigmaObject, ...]
    delta: Dict[Edge, SigmaMorphism] = field(default_factory=dict)
    n_plus: int = 0
    n_minus: int = 0
    relative: bool = False
    name: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'objects', tuple(self.objects))
        object.__setattr__(self, 'delta', {e: f for e, f in self.delta.items() if not f.is_zero()})
        self._validate()

    def _validate(self):
        for (s, t), entry in self.delta.items():
            if not (0 <= s < len(self.objects) and 0 <= t < len(self.objects)):
                raise ValueError(f"Entry ({s}, {t}) references a missing object")
            if entry.source != self.objects[s] or entry.target != self.objects[t]:
                raise ValueError(f"Entry ({s}, {t}) does not match its objects")

    @property
    def mode(self) -> str:
        return 'relative' if self.relative else 'absolute'

    def outgoing(self) -> Dict[int, List[int]]:
        result: Dict[int, List[int]] = defaultdict(list)
        for s, t in sorted(self.delta):
            result[s].append(t)
        return result

    def total_dimension(self) -> int:
        return sum(o.dimension for o in self.objects)

    def __eq__(self, other):
        if not isinstance(other, TwistedComplex):
            return NotImplemented
        return (self.objects == other.objects and self.delta == other.delta
                and (self.n_plus, self.n_minus, self.relative) == (other.n_plus, other.n_minus, other.relative))

    def __hash__(self):
        return hash((self.objects, len(self.delta)))

    def __repr__(self):
        return (f"TwistedComplex({self.name!r}, objects={len(self.objects)}, "
                f"entries={len(self.delta)}, mode={self.mode})")


# Composition in the additive enlargement

def mu2_sigma(x: SigmaMorphism, y: SigmaMorphism, tables: StructureTables = TABLES) -> SigmaMorphism:
    """sum (X_g o Y_h) (x) mu2(g, h), i.e. x after y."""
    if y.target != x.source:
        raise NonComposableError(f"Cannot compose {x!r} after {y!r}")
    parts: Dict[str, F2Matrix] = {}
    for g, mg in x.parts.items():
        for h, mh in y.parts.items():
            outputs = tables.mu2.get((g, h))
            if not outputs:
                continue
            product = mg @ mh
            for out in outputs:
                parts[out] = parts[out] + product if out in parts else product
    return SigmaMorphism(y.source, x.target, parts)


def mu3_sigma(x: SigmaMorphism, y: SigmaMorphism, z: SigmaMorphism,
              tables: StructureTables = TABLES) -> SigmaMorphism:
    if z.target != y.source or y.target != x.source:
        raise NonComposableError(f"Cannot compose {x!r}, {y!r}, {z!r}")
    parts: Dict[str, F2Matrix] = {}
    for g, mg in x.parts.items():
        for h, mh in y.parts.items():
            for k, mk in z.parts.items():
                outputs = tables.mu3.get((g, h, k))
                if not outputs:
                    continue
                product = mg @ mh @ mk
                for out in outputs:
                    parts[out] = parts[out] + product if out in parts else product
    return SigmaMorphism(z.source, x.target, parts)


def verify_twisted(tc: TwistedComplex, require_unit_steps: bool = True,
                   tables: StructureTables = TABLES) -> CheckReport:
    """
    Check the twisted-complex condition with its two terms separately.

    Args:
        tc: Complex to check
        require_unit_steps: Require every entry to raise h by exactly 1
        tables: Structure tables to compose with

    Returns:
        CheckReport: failing entries identified by object indices
    """
    report = CheckReport('twisted_complex')
    out = tc.outgoing()

    for (s, t), entry in sorted(tc.delta.items()):
        report.checked += 1
        step = tc.objects[t].h - tc.objects[s].h
        if step <= 0 or (require_unit_steps and step != 1):
            report.record(condition='filtration', entry=[s, t], step=step)
        try:
            bidegree = entry.bidegree()
        except ValueError as e:
            report.record(condition='bidegree', entry=[s, t], error=str(e))
            continue
        if bidegree[0] != 1 or bidegree[1] != step:
            report.record(condition='bidegree', entry=[s, t], bidegree=list(bidegree))

    # mu2(delta, delta)
    square: Dict[Edge, SigmaMorphism] = {}
    for s in sorted(out):
        for m in out[s]:
            for t in out.get(m, ()):
                report.checked += 1
                term = mu2_sigma(tc.delta[(m, t)], tc.delta[(s, m)], tables)
                square[(s, t)] = square[(s, t)] + term if (s, t) in square else term
    for (s, t), value in sorted(square.items()):
        if not value.is_zero():
            report.record(condition='mu2(delta, delta)', entry=[s, t], generators=sorted(value.parts))

    # mu3(delta, delta, delta)
    cube: Dict[Edge, SigmaMorphism] = {}
    for s in sorted(out):
        for m1 in out[s]:
            for m2 in out.get(m1, ()):
                for t in out.get(m2, ()):
                    report.checked += 1
                    term = mu3_sigma(tc.delta[(m2, t)], tc.delta[(m1, m2)], tc.delta[(s, m1)], tables)
                    cube[(s, t)] = cube[(s, t)] + term if (s, t) in cube else term
    for (s, t), value in sorted(cube.items()):
        if not value.is_zero():
            report.record(condition='mu3(delta, delta, delta)', entry=[s, t], generators=sorted(value.parts))

    if report.passed:
        logger.debug(f"Twisted complex {tc.name!r} passed: {report!r}")
    else:
        logger.error(f"Twisted complex {tc.name!r} failed: {report!r}")
    return report


# Delooping and cancellation

def deloop(tc: TwistedComplex) -> TwistedComplex:
    """
    Split every A^{(x)m}{sigma} (x) L into 2^m copies F{sigma - p_A(b)} (x) L.

    The result is isomorphic to the input; every entry becomes a 1x1 scalar
    tensored with a pillowcase morphism.
    """
    objects: List[SigmaObject] = []
    offsets: List[int] = []
    for obj in tc.objects:
        offsets.append(len(objects))
        for word in tensor_basis(obj.m):
            degree = sum(P_A[c] for c in word)
            objects.append(SigmaObject(obj.ell, 0, obj.sigma - degree, obj.h, tag=f'{obj.tag}:{word}'))

    scalar = F2Matrix.identity(1)
    parts: Dict[Edge, Dict[str, F2Matrix]] = defaultdict(dict)
    for (s, t), entry in tc.delta.items():
        for g, mat in entry.parts.items():
            for r, c in mat.entries:
                key = (offsets[s] + c, offsets[t] + r)
                current = parts[key]
                current[g] = current[g] + scalar if g in current else scalar
    delta = {
        key: SigmaMorphism(objects[key[0]], objects[key[1]], gens)
        for key, gens in parts.items()
    }
    result = TwistedComplex(tuple(objects), delta, tc.n_plus, tc.n_minus, tc.relative, tc.name)
    logger.info(f"Delooped {tc!r} into {result!r}")
    return result


def _pivot_inverse(entry: SigmaMorphism) -> Optional[Tuple[str, F2Matrix]]:
    if len(entry.parts) != 1:
        return None
    (g, psi), = entry.parts.items()
    if g not in UNITS.values() or psi.n_rows != psi.n_cols:
        return None
    try:
        return g, inverse(psi)
    except ValueError:
        return None


def unit_pivots(tc: TwistedComplex) -> List[Edge]:
    """Entries of the form psi (x) unit with psi invertible."""
    return [edge for edge, entry in sorted(tc.delta.items()) if _pivot_inverse(entry) is not None]


def _cancel(objects: Sequence[SigmaObject], delta: Dict[Edge, SigmaMorphism],
            pivot: Edge, tables: StructureTables) -> Dict[Edge, SigmaMorphism]:
    """delta'_{st} = delta_{st} + delta_{at} psi^{-1} delta_{sb}, indices unchanged, a and b dropped."""
    a, b = pivot
    found = _pivot_inverse(delta[pivot])
    if found is None:
        raise PivotError(
            f"Entry {a}->{b} is not an invertible operator tensored with a unit",
            {'pivot': [a, b], 'generators': sorted(delta[pivot].parts)},
        )
    unit, psi_inv = found
    back = SigmaMorphism(objects[b], objects[a], {unit: psi_inv})
    into_b = [s for (s, t) in delta if t == b and s != a]
    out_of_a = [t for (s, t) in delta if s == a and t != b]

    result = {(s, t): f for (s, t), f in delta.items() if a not in (s, t) and b not in (s, t)}
    for t in out_of_a:
        through = mu2_sigma(delta[(a, t)], back, tables)
        for s in into_b:
            term = mu2_sigma(through, delta[(s, b)], tables)
            if term.is_zero():
                continue
            updated = result[(s, t)] + term if (s, t) in result else term
            if updated.is_zero():
                result.pop((s, t), None)
            else:
                result[(s, t)] = updated
    return result


def _reindex(objects: Sequence[SigmaObject], delta: Dict[Edge, SigmaMorphism],
             removed: set) -> Tuple[Tuple[SigmaObject, ...], Dict[Edge, SigmaMorphism]]:
    keep = [i for i in range(len(objects)) if i not in removed]
    new_index = {old: new for new, old in enumerate(keep)}
    return (tuple(objects[i] for i in keep),
            {(new_index[s], new_index[t]): f for (s, t), f in delta.items()})


def _paired_tables(tc: TwistedComplex):
    from src.pairing import cohomology, pair

    return {k: cohomology(pair(tc, k, audit=False)) for k in (0, 1)}


def eliminate(tc: TwistedComplex, pair: Edge, postcheck: bool = True,
              tables: StructureTables = TABLES) -> TwistedComplex:
    """
    Cancel the pair (a, b) joined by a unit entry a -> b.

    Args:
        tc: Twisted complex
        pair: (source index a, target index b) of the pivot entry
        postcheck: Verify the result and compare paired cohomology for k = 0, 1

    Returns:
        TwistedComplex: complex on the remaining objects

    Raises:
        PivotError: if the entry is not psi (x) unit with psi invertible
        PostconditionError: if the result fails its checks
    """
    if pair not in tc.delta:
        raise PivotError(f"No entry {pair[0]}->{pair[1]} to cancel", {'pivot': list(pair)})
    delta = _cancel(tc.objects, tc.delta, pair, tables)
    objects, delta = _reindex(tc.objects, delta, set(pair))
    result = TwistedComplex(objects, delta, tc.n_plus, tc.n_minus, tc.relative, tc.name)
    logger.debug(f"Cancelled {pair}: {tc!r} -> {result!r}")
    if postcheck:
        _postcheck(tc, result, tables)
    return result


def _postcheck(before: TwistedComplex, after: TwistedComplex, tables: StructureTables):
    report = verify_twisted(after, require_unit_steps=False, tables=tables)
    if not report.passed:
        raise PostconditionError("Cancellation produced an invalid twisted complex", report.to_dict())
    ranks_before, ranks_after = _paired_tables(before), _paired_tables(after)
    for k in (0, 1):
        if ranks_before[k] != ranks_after[k]:
            raise PostconditionError(
                f"Cancellation changed paired cohomology for k={k}",
                {'before': ranks_before[k].to_dict(), 'after': ranks_after[k].to_dict()},
            )


def _closed_under_cancellation(delta: Dict[Edge, SigmaMorphism], pivot: Edge) -> bool:
    """Entries around the pivot lie in the span where the cancellation formula is exact."""
    a, b = pivot
    span = set(IMAGE_F1_SPAN)
    return all(span.issuperset(f.parts) for (s, t), f in delta.items()
               if t == b or s == a)


def eliminate_all(tc: TwistedComplex, postcheck: Optional[bool] = None,
                  tables: StructureTables = TABLES) -> TwistedComplex:
    """
    Cancel unit entries until none remain.

    Pivots whose neighbourhood leaves the image span are skipped with a
    warning; the finished complex is checked once against the input.
    """
    if postcheck is None:
        postcheck = config.VERIFICATION['ELIMINATE_POSTCHECK']
    objects = tc.objects
    delta = dict(tc.delta)
    removed: set = set()
    skipped: set = set()
    cancelled = 0

    while True:
        candidates = [e for e in sorted(delta) if e not in skipped
                      and _pivot_inverse(delta[e]) is not None]
        if not candidates:
            break
        pivot = candidates[0]
        if not _closed_under_cancellation(delta, pivot):
            logger.warning(f"Skipping pivot {pivot} of {tc.name!r}: neighbouring entries leave the image span")
            skipped.add(pivot)
            continue
        delta = _cancel(objects, delta, pivot, tables)
        removed.update(pivot)
        skipped = {e for e in skipped if not set(e) & set(pivot)}
        cancelled += 1

    new_objects, new_delta = _reindex(objects, delta, removed)
    result = TwistedComplex(new_objects, new_delta, tc.n_plus, tc.n_minus, tc.relative, tc.name)
    logger.info(f"Cancelled {cancelled} pairs: {tc!r} -> {result!r}")
    if postcheck:
        _postcheck(tc, result, tables)
    return result


# Serialization

def to_document(tc: TwistedComplex) -> Dict:
    return {
        'name': tc.name,
        'mode': tc.mode,
        'n_plus': tc.n_plus,
        'n_minus': tc.n_minus,
        'objects': [o.to_dict() for o in tc.objects],
        'delta': [
            {'source': s, 'target': t, **entry.to_dict()}
            for (s, t), entry in sorted(tc.delta.items())
        ],
    }


def serialize(tc: TwistedComplex) -> str:
    return json.dumps(to_document(tc), indent=config.OUTPUT['JSON_INDENT'])


def deserialize(text: str) -> TwistedComplex:
    """Inverse of serialize."""
    doc = json.loads(text)
    objects = tuple(
        SigmaObject(int(o['ell']), int(o['m']), int(o['sigma']), int(o['h']), o.get('tag', ''))
        for o in doc['objects']
    )
    delta = {}
    for entry in doc['delta']:
        s, t = int(entry['source']), int(entry['target'])
        parts = {sm['generator']: F2Matrix.from_dict(sm['matrix']) for sm in entry['summands']}
        delta[(s, t)] = SigmaMorphism(objects[s], objects[t], parts)
    return TwistedComplex(objects, delta, int(doc['n_plus']), int(doc['n_minus']),
                          doc['mode'] == 'relative', doc.get('name', ''))
