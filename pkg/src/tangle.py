"""
Tangle Module
Parses 2-tangle diagrams, resolves crossings, classifies cube edges and forms closures
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

import config
from src.errors import OrientationError, TangleFormatError
from src.schemas import TangleFile

logger = logging.getLogger(__name__)

Label = Union[int, str]
Port = Tuple  # ('b', point) or ('x', crossing, slot)

POINTS: Tuple[str, ...] = config.CONVENTIONS['BOUNDARY_POINTS']
# Boundary point pairs joined by each closure
CLOSURE_PAIRS = {0: ((0, 3), (1, 2)), 1: ((0, 1), (2, 3))}


def label_key(label: Label) -> Tuple:
    """Total order on mixed int/str labels: integers first, then strings."""
    if isinstance(label, int):
        return (0, label, '')
    return (1, 0, str(label))


def min_label(labels: Iterable[Label]) -> Label:
    return min(labels, key=label_key)


class DisjointSet:
    """Union-find over hashable items"""

    def __init__(self, items: Iterable = ()):
        self._parent: Dict = {}
        for item in items:
            self._parent[item] = item

    def find(self, a):
        parent = self._parent.setdefault(a, a)
        if parent == a:
            return a
        root = self.find(parent)
        self._parent[a] = root
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self._parent[ra] = rb
        return self

    def groups(self) -> Dict[Any, List]:
        result: Dict[Any, List] = {}
        for item in list(self._parent):
            result.setdefault(self.find(item), []).append(item)
        return result


@dataclass(frozen=True)
class TangleDiagram:
    """
    Combinatorial 2-tangle diagram.

    Endpoints list the edge labels at the boundary points 1, i, -1, -i
    (empty for a closed diagram). Each crossing lists its four edges
    counterclockwise starting at an under-strand edge. Crossingless circles
    are given by their own labels in ``loops``. The earring is the strand
    through boundary point 1.
    """

    endpoints: Tuple[Label, ...] = ()
    crossings: Tuple[Tuple[Label, Label, Label, Label], ...] = ()
    loops: Tuple[Label, ...] = ()
    orientation: Optional[Tuple[Tuple[Label, Any], ...]] = None
    basepoint: Optional[Label] = None
    name: str = ''
    _ports: Dict = field(default=None, init=False, compare=False, repr=False)
    _heads: Optional[Dict] = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'endpoints', tuple(self.endpoints))
        object.__setattr__(self, 'crossings', tuple(tuple(c) for c in self.crossings))
        object.__setattr__(self, 'loops', tuple(self.loops))
        if self.orientation is not None:
            object.__setattr__(self, 'orientation', tuple(
                (entry[0], tuple(entry[1]) if isinstance(entry[1], (list, tuple)) else entry[1])
                for entry in self.orientation
            ))
        self._validate()
        if self.orientation is not None:
            object.__setattr__(self, '_heads', self._propagate_orientation())

    # Validation

    def _validate(self):
        if len(self.endpoints) not in (0, 4):
            raise TangleFormatError(
                f"A tangle has 4 endpoints, got {len(self.endpoints)}",
                {'endpoints': list(self.endpoints)},
            )
        for label in self.labels() | set(self.loops):
            if isinstance(label, bool) or not isinstance(label, (int, str)):
                raise TangleFormatError(f"Edge labels must be integers or strings, got {label!r}")
        for index, crossing in enumerate(self.crossings):
            if len(crossing) != 4:
                raise TangleFormatError(
                    f"Crossing {index} must list 4 edges, got {len(crossing)}",
                    {'crossing': index},
                )

        ports: Dict[Label, List[Port]] = {}
        for point, label in enumerate(self.endpoints):
            ports.setdefault(label, []).append(('b', point))
        for c, crossing in enumerate(self.crossings):
            for slot, label in enumerate(crossing):
                ports.setdefault(label, []).append(('x', c, slot))

        bad = {label: len(p) for label, p in ports.items() if len(p) != 2}
        if bad:
            raise TangleFormatError(
                "Every edge label must occur exactly twice among endpoints and crossings",
                {'labels': {str(k): v for k, v in sorted(bad.items(), key=lambda kv: label_key(kv[0]))}},
            )
        if len(set(self.loops)) != len(self.loops):
            raise TangleFormatError("Loop labels must be distinct", {'loops': list(self.loops)})
        clash = [label for label in self.loops if label in ports]
        if clash:
            raise TangleFormatError("Loop labels must not be used by other edges", {'labels': clash})
        object.__setattr__(self, '_ports', ports)
        self._check_planar()

    def _check_planar(self):
        """Euler characteristic test on the rotation system of the diagram."""
        if not self._ports:
            return
        has_boundary = bool(self.endpoints)

        def sigma(port: Port) -> Port:
            if port[0] == 'x':
                return ('x', port[1], (port[2] + 1) % 4)
            # rotation at the point at infinity: 1, -i, -1, i
            return ('b', (port[1] - 1) % 4)

        darts = [p for ports in self._ports.values() for p in ports]
        seen = set()
        faces = 0
        for dart in darts:
            if dart in seen:
                continue
            faces += 1
            current = dart
            while current not in seen:
                seen.add(current)
                current = sigma(self.other_port(current))

        vertices = DisjointSet(['inf'] if has_boundary else [])
        for c in range(len(self.crossings)):
            vertices.find(c)
        for ports in self._ports.values():
            a, b = (('inf' if p[0] == 'b' else p[1]) for p in ports)
            vertices.union(a, b)
        n_vertices = len(self.crossings) + (1 if has_boundary else 0)
        n_edges = len(self._ports)
        n_components = len(vertices.groups())
        euler = n_vertices - n_edges + faces
        if euler != 2 * n_components:
            raise TangleFormatError(
                "Crossing code is not planar-consistent",
                {'vertices': n_vertices, 'edges': n_edges, 'faces': faces, 'components': n_components},
            )

    # Ports and labels

    def labels(self) -> set:
        result = set(self.endpoints)
        for crossing in self.crossings:
            result.update(crossing)
        return result

    def ports_of(self, label: Label) -> List[Port]:
        return list(self._ports[label])

    def label_at(self, port: Port) -> Label:
        if port[0] == 'b':
            return self.endpoints[port[1]]
        return self.crossings[port[1]][port[2]]

    def other_port(self, port: Port) -> Port:
        first, second = self._ports[self.label_at(port)]
        return second if first == port else first

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def is_tangle(self) -> bool:
        return len(self.endpoints) == 4

    @property
    def is_oriented(self) -> bool:
        return self._heads is not None

    # Orientation

    def _head_port(self, label: Label, spec) -> Port:
        if label not in self._ports:
            raise TangleFormatError(f"Orientation names unknown edge {label!r}")
        ports = self._ports[label]
        if isinstance(spec, str):
            if spec not in POINTS:
                raise TangleFormatError(f"Unknown boundary point {spec!r} for edge {label!r}")
            port = ('b', POINTS.index(spec))
        elif isinstance(spec, int):
            at = [p for p in ports if p[0] == 'x' and p[1] == spec]
            if len(at) != 1:
                raise TangleFormatError(
                    f"Edge {label!r} meets crossing {spec} {len(at)} times; give [crossing, slot]",
                    {'edge': label, 'crossing': spec},
                )
            port = at[0]
        else:
            port = ('x', int(spec[0]), int(spec[1]))
        if port not in ports:
            raise TangleFormatError(f"Edge {label!r} does not end at {spec!r}")
        return port

    def _propagate_orientation(self) -> Dict[Label, Port]:
        heads: Dict[Label, Port] = {}

        def assign(label: Label, head: Port):
            if label in heads:
                if heads[label] != head:
                    raise TangleFormatError(
                        f"Orientation conflict on edge {label!r}",
                        {'edge': label},
                    )
                return False
            heads[label] = head
            return True

        for label, spec in self.orientation:
            if label in self.loops:
                continue
            head = self._head_port(label, spec)
            if not assign(label, head):
                continue
            # forward along the strand
            current = head
            while current[0] == 'x':
                out_port = ('x', current[1], (current[2] + 2) % 4)
                nxt = self.label_at(out_port)
                current = self.other_port(out_port)
                if not assign(nxt, current):
                    break
            # backward along the strand
            tail = self.other_port(head)
            while tail[0] == 'x':
                in_port = ('x', tail[1], (tail[2] + 2) % 4)
                prev = self.label_at(in_port)
                if not assign(prev, in_port):
                    break
                tail = self.other_port(in_port)

        missing = [label for label in self._ports if label not in heads]
        if missing:
            raise TangleFormatError(
                "Orientation does not cover every strand",
                {'unoriented_edges': sorted(missing, key=label_key)},
            )
        return heads

    def head_of(self, label: Label) -> Port:
        if self._heads is None:
            raise OrientationError("Diagram has no orientation")
        return self._heads[label]

    def crossing_signs(self) -> Tuple[int, ...]:
        """+1 or -1 per crossing; positive when the over strand runs e4 -> e2 relative to an under strand e1 -> e3."""
        if self._heads is None:
            raise OrientationError("Diagram has no orientation; only relative gradings are available")
        signs = []
        for c, crossing in enumerate(self.crossings):
            incoming = [s for s in range(4) if self._heads[crossing[s]] == ('x', c, s)]
            under = [s for s in incoming if s % 2 == 0]
            over = [s for s in incoming if s % 2 == 1]
            if len(under) != 1 or len(over) != 1:
                raise TangleFormatError(
                    f"Orientation is not consistent through crossing {c}",
                    {'crossing': c},
                )
            signs.append(1 if over[0] == (under[0] + 3) % 4 else -1)
        return tuple(signs)

    def boundary_flow(self) -> Tuple[str, ...]:
        """'out' where the oriented strand leaves the tangle, 'in' where it enters."""
        if self._heads is None:
            raise OrientationError("Diagram has no orientation")
        return tuple(
            'out' if self._heads[label] == ('b', point) else 'in'
            for point, label in enumerate(self.endpoints)
        )

    def orientation_extends(self, k: int) -> bool:
        if self._heads is None or not self.is_tangle:
            return False
        flow = self.boundary_flow()
        return all(flow[a] != flow[b] for a, b in CLOSURE_PAIRS[k])

    def heads_as_specs(self) -> List[List]:
        specs = []
        for label in sorted(self._heads, key=label_key):
            head = self._heads[label]
            spec = POINTS[head[1]] if head[0] == 'b' else [head[1], head[2]]
            specs.append([label, spec])
        return specs

    def to_dict(self) -> Dict:
        data: Dict[str, Any] = {
            'endpoints': list(self.endpoints),
            'crossings': [list(c) for c in self.crossings],
        }
        if self.loops:
            data['loops'] = list(self.loops)
        if self._heads is not None:
            data['orientation'] = self.heads_as_specs()
        if self.basepoint is not None:
            data['basepoint'] = self.basepoint
        if self.name:
            data['name'] = self.name
        return data

    def __repr__(self):
        return (f"TangleDiagram(name={self.name!r}, crossings={self.n_crossings}, "
                f"oriented={self.is_oriented})")


@dataclass(frozen=True)
class LinkDiagram:
    """Closed diagram with a basepoint edge on the earring component"""

    crossings: Tuple[Tuple[Label, Label, Label, Label], ...]
    loops: Tuple[Label, ...]
    basepoint: Label
    signs: Optional[Tuple[int, ...]] = None
    name: str = ''

    def __post_init__(self):
        self._validate()

    def _validate(self):
        labels = set(self.loops)
        for crossing in self.crossings:
            labels.update(crossing)
        if self.basepoint not in labels:
            raise TangleFormatError(f"Basepoint {self.basepoint!r} is not an edge of the link")
        if self.signs is not None and len(self.signs) != len(self.crossings):
            raise TangleFormatError("One sign per crossing is required")

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def is_oriented(self) -> bool:
        return self.signs is not None

    def writhe_counts(self) -> Tuple[int, int]:
        if self.signs is None:
            raise OrientationError("Link has no orientation; only relative gradings are available")
        return (sum(1 for s in self.signs if s > 0), sum(1 for s in self.signs if s < 0))

    def __repr__(self):
        return f"LinkDiagram(name={self.name!r}, crossings={self.n_crossings}, basepoint={self.basepoint!r})"


# Parsing

def tangle_from_document(doc: TangleFile) -> TangleDiagram:
    return TangleDiagram(
        endpoints=tuple(doc.endpoints),
        crossings=tuple(tuple(c) for c in doc.crossings),
        loops=tuple(doc.loops),
        orientation=None if doc.orientation is None else tuple(tuple(e) for e in doc.orientation),
        basepoint=doc.basepoint,
        name=doc.name or '',
    )


def _load_document(text_or_data: Union[str, Dict]) -> TangleFile:
    try:
        data = json.loads(text_or_data) if isinstance(text_or_data, str) else text_or_data
    except json.JSONDecodeError as e:
        raise TangleFormatError(f"Malformed JSON: {e.msg}", {'line': e.lineno, 'column': e.colno})
    try:
        return TangleFile.model_validate(data)
    except ValidationError as e:
        raise TangleFormatError("Diagram file does not match the format",
                                {'errors': [err['msg'] for err in e.errors()]})


def parse_tangle(text: Union[str, Dict]) -> TangleDiagram:
    """
    Parse a 2-tangle from its JSON text (or already-decoded dict).

    Args:
        text: Tangle file contents

    Returns:
        TangleDiagram: validated diagram
    """
    doc = _load_document(text)
    if len(doc.endpoints) != 4:
        raise TangleFormatError("A tangle file needs 4 endpoints")
    diagram = tangle_from_document(doc)
    logger.debug(f"Parsed tangle {diagram.name!r} with {diagram.n_crossings} crossings")
    return diagram


def parse_link(text: Union[str, Dict]) -> LinkDiagram:
    """Parse a closed link in the tangle format with no endpoints and a basepoint."""
    doc = _load_document(text)
    if doc.endpoints:
        raise TangleFormatError("A closed link has no endpoints")
    if doc.basepoint is None:
        raise TangleFormatError("A closed link needs a basepoint")
    diagram = tangle_from_document(doc)
    signs = diagram.crossing_signs() if diagram.is_oriented else None
    return LinkDiagram(diagram.crossings, diagram.loops, doc.basepoint, signs, diagram.name)


def writhe_counts(d: TangleDiagram) -> Tuple[int, int]:
    """
    Count positive and negative crossings.

    Raises:
        OrientationError: if the diagram is unoriented (relative grading mode)
    """
    signs = d.crossing_signs()
    return (sum(1 for s in signs if s > 0), sum(1 for s in signs if s < 0))


# Resolutions

@dataclass(frozen=True)
class PlanarTangle:
    """
    Crossingless 2-tangle T_ell(m): two arcs plus m circles.

    Circles are edge-label sets in canonical order (by smallest label).
    """

    ell: int
    circles: Tuple[FrozenSet[Label], ...]
    earring_arc: FrozenSet[Label]
    plain_arc: FrozenSet[Label]

    @property
    def m(self) -> int:
        return len(self.circles)

    def component_of(self, label: Label) -> Tuple[str, Any]:
        if label in self.earring_arc:
            return ('arc', 'earring')
        if label in self.plain_arc:
            return ('arc', 'plain')
        for index, circle in enumerate(self.circles):
            if label in circle:
                return ('circle', index)
        raise KeyError(label)

    def signature(self) -> Tuple[int, Tuple[Label, ...]]:
        return (self.ell, tuple(min_label(c) for c in self.circles))

    def to_diagram(self) -> TangleDiagram:
        """Crossingless diagram of the same type, circles kept by their smallest labels."""
        e, p = min_label(self.earring_arc), min_label(self.plain_arc)
        endpoints = (e, p, p, e) if self.ell == 0 else (e, e, p, p)
        return TangleDiagram(endpoints=endpoints, loops=tuple(min_label(c) for c in self.circles))

    def __repr__(self):
        return f"PlanarTangle(T_{self.ell}({self.m}))"


def _state_bits(d: TangleDiagram, state: Union[str, Sequence[int]]) -> Tuple[int, ...]:
    bits = tuple(int(b) for b in state)
    if len(bits) != d.n_crossings or any(b not in (0, 1) for b in bits):
        raise ValueError(f"State {state!r} does not match {d.n_crossings} crossings")
    return bits


def resolve(d: TangleDiagram, state: Union[str, Sequence[int]]) -> PlanarTangle:
    """
    Complete resolution of a tangle diagram.

    Args:
        d: Tangle diagram
        state: One bit per crossing, 0 for the "overcrossing turns left" smoothing

    Returns:
        PlanarTangle: type, canonical circle list and arcs
    """
    if not d.is_tangle:
        raise TangleFormatError("Only 2-tangles with 4 endpoints can be resolved into T_0 / T_1")
    bits = _state_bits(d, state)
    zero_pairs, one_pairs = config.resolution_pairs()
    components = DisjointSet(d.labels())
    for crossing, bit in zip(d.crossings, bits):
        for a, b in (zero_pairs if bit == 0 else one_pairs):
            components.union(crossing[a], crossing[b])

    roots = [components.find(label) for label in d.endpoints]
    if roots[0] == roots[3] and roots[1] == roots[2]:
        ell = 0
    elif roots[0] == roots[1] and roots[2] == roots[3]:
        ell = 1
    else:
        raise TangleFormatError("Resolution joins opposite boundary points; diagram is not planar")

    groups = components.groups()
    earring = frozenset(groups[roots[0]])
    plain = frozenset(groups[roots[2] if ell == 0 else roots[3]])
    circles = [frozenset(members) for root, members in groups.items() if root not in roots]
    circles.extend(frozenset([label]) for label in d.loops)
    circles.sort(key=lambda c: label_key(min_label(c)))
    return PlanarTangle(ell, tuple(circles), earring, plain)


class SaddleType(Enum):
    ARC_ARC = 'ArcArc'
    EARRING_ARC_CIRCLE_MERGE = 'EarringArcCircleMerge'
    EARRING_ARC_CIRCLE_SPLIT = 'EarringArcCircleSplit'
    PLAIN_ARC_CIRCLE_MERGE = 'PlainArcCircleMerge'
    PLAIN_ARC_CIRCLE_SPLIT = 'PlainArcCircleSplit'
    CIRCLE_CIRCLE_MERGE = 'CircleCircleMerge'
    CIRCLE_SPLIT = 'CircleSplit'


@dataclass(frozen=True)
class SaddleKind:
    """
    Classified cube edge.

    ``source_order`` lists source circle positions in template order
    (unaffected circles first, affected last); ``target_order`` does the
    same for the target.
    """

    kind: SaddleType
    crossing: int
    source: str
    target: str
    affected_source: Tuple[int, ...]
    affected_target: Tuple[int, ...]
    source_order: Tuple[int, ...]
    target_order: Tuple[int, ...]

    def to_dict(self) -> Dict:
        return {
            'kind': self.kind.value,
            'crossing': self.crossing,
            'source': self.source,
            'target': self.target,
            'affected_source': list(self.affected_source),
            'affected_target': list(self.affected_target),
        }


# expected (delta m, ell flips) per saddle type
_EXPECTED_SHAPE = {
    SaddleType.ARC_ARC: (0, True),
    SaddleType.EARRING_ARC_CIRCLE_MERGE: (-1, False),
    SaddleType.PLAIN_ARC_CIRCLE_MERGE: (-1, False),
    SaddleType.EARRING_ARC_CIRCLE_SPLIT: (1, False),
    SaddleType.PLAIN_ARC_CIRCLE_SPLIT: (1, False),
    SaddleType.CIRCLE_CIRCLE_MERGE: (-1, False),
    SaddleType.CIRCLE_SPLIT: (1, False),
}


def classify_saddle(d: TangleDiagram, crossing: int, source: str, target: str,
                    p_src: PlanarTangle, p_tgt: PlanarTangle) -> SaddleKind:
    """Classify the saddle changing the smoothing of one crossing from 0 to 1."""
    zero_pairs, _ = config.resolution_pairs()
    record = d.crossings[crossing]
    u = p_src.component_of(record[zero_pairs[0][0]])
    v = p_src.component_of(record[zero_pairs[1][0]])

    if u != v:
        if u[0] == 'arc' and v[0] == 'arc':
            kind = SaddleType.ARC_ARC
        elif u[0] == 'circle' and v[0] == 'circle':
            kind = SaddleType.CIRCLE_CIRCLE_MERGE
        else:
            arc = u if u[0] == 'arc' else v
            kind = (SaddleType.EARRING_ARC_CIRCLE_MERGE if arc[1] == 'earring'
                    else SaddleType.PLAIN_ARC_CIRCLE_MERGE)
    elif u[0] == 'arc':
        kind = (SaddleType.EARRING_ARC_CIRCLE_SPLIT if u[1] == 'earring'
                else SaddleType.PLAIN_ARC_CIRCLE_SPLIT)
    else:
        kind = SaddleType.CIRCLE_SPLIT

    touched = set(record)
    affected_src = tuple(sorted({c[1] for c in (u, v) if c[0] == 'circle'}))
    affected_tgt = tuple(i for i, circle in enumerate(p_tgt.circles) if circle & touched)

    target_index = {circle: i for i, circle in enumerate(p_tgt.circles)}
    unaffected_src = [i for i in range(p_src.m) if i not in affected_src]
    try:
        unaffected_tgt = [target_index[p_src.circles[i]] for i in unaffected_src]
    except KeyError:
        raise TangleFormatError("Unaffected circle changed across a cube edge",
                                {'source': source, 'target': target})

    delta_m, flips = _EXPECTED_SHAPE[kind]
    if p_tgt.m - p_src.m != delta_m or (p_tgt.ell != p_src.ell) != flips:
        raise TangleFormatError(
            f"Cube edge {source}->{target} does not match a {kind.value} saddle",
            {'source': repr(p_src), 'target': repr(p_tgt)},
        )
    return SaddleKind(
        kind=kind,
        crossing=crossing,
        source=source,
        target=target,
        affected_source=affected_src,
        affected_target=affected_tgt,
        source_order=tuple(unaffected_src) + affected_src,
        target_order=tuple(unaffected_tgt) + affected_tgt,
    )


@dataclass(frozen=True)
class ResolutionCube:
    """All complete resolutions of a diagram with classified covering edges"""

    diagram: TangleDiagram
    vertices: Dict[str, PlanarTangle]
    h: Dict[str, int]
    edges: Dict[Tuple[str, str], SaddleKind]
    n_minus: int

    @property
    def states(self) -> List[str]:
        return sorted(self.vertices, key=lambda s: (s.count('1'), s))

    def summary(self) -> Dict:
        counts: Dict[str, int] = {}
        for edge in self.edges.values():
            counts[edge.kind.value] = counts.get(edge.kind.value, 0) + 1
        return {
            'vertices': len(self.vertices),
            'edges': len(self.edges),
            'edge_kinds': dict(sorted(counts.items())),
        }


def build_cube(d: TangleDiagram, n_minus: Optional[int] = None) -> ResolutionCube:
    """
    Resolve every vertex of the cube and classify every covering edge.

    Args:
        d: Tangle diagram
        n_minus: Negative crossing count; taken from the orientation when
            omitted, or 0 for unoriented diagrams

    Returns:
        ResolutionCube: vertices keyed by bitstring, h = #ones - n_minus
    """
    if n_minus is None:
        n_minus = writhe_counts(d)[1] if d.is_oriented else 0
    n = d.n_crossings
    states = [format(i, f'0{n}b') if n else '' for i in range(2 ** n)]
    vertices = {state: resolve(d, state) for state in states}
    h = {state: state.count('1') - n_minus for state in states}
    edges: Dict[Tuple[str, str], SaddleKind] = {}
    for state in states:
        for c, bit in enumerate(state):
            if bit == '0':
                target = state[:c] + '1' + state[c + 1:]
                edges[(state, target)] = classify_saddle(
                    d, c, state, target, vertices[state], vertices[target]
                )
    cube = ResolutionCube(d, vertices, h, edges, n_minus)
    logger.info(f"Built resolution cube for {d.name or 'tangle'}: {cube.summary()}")
    return cube


# Closures

def close(d: TangleDiagram, k: int) -> LinkDiagram:
    """
    Close a tangle by two arcs outside the disk.

    k=0 joins {1, -i} and {i, -1}; k=1 joins {1, i} and {-1, -i}. The basepoint
    is the edge through boundary point 1.
    """
    if k not in CLOSURE_PAIRS:
        raise ValueError(f"Closure must be 0 or 1, got {k!r}")
    if not d.is_tangle:
        raise TangleFormatError("Only tangles with endpoints can be closed")
    classes = DisjointSet(d.labels())
    for a, b in CLOSURE_PAIRS[k]:
        classes.union(d.endpoints[a], d.endpoints[b])
    rename = {}
    for members in classes.groups().values():
        representative = min_label(members)
        for label in members:
            rename[label] = representative

    crossings = tuple(tuple(rename[label] for label in c) for c in d.crossings)
    used = {label for c in crossings for label in c}
    new_loops = sorted({rename[label] for label in d.endpoints} - used, key=label_key)
    signs = d.crossing_signs() if d.orientation_extends(k) else None
    if d.is_oriented and signs is None:
        logger.warning(f"Orientation of {d.name or 'tangle'} does not extend to closure {k}")
    return LinkDiagram(
        crossings=crossings,
        loops=tuple(d.loops) + tuple(new_loops),
        basepoint=rename[d.endpoints[0]],
        signs=signs,
        name=f"{d.name or 'tangle'}[k={k}]",
    )


def serialize_tangle(d: TangleDiagram) -> str:
    """JSON text in the tangle file format; parse_tangle reads it back."""
    return json.dumps(d.to_dict(), indent=config.OUTPUT['JSON_INDENT'])
