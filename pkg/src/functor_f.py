"""
Functor Module
Evaluates the cobordism functor on elementary saddles of a resolution cube and
assembles the twisted-complex differential from them
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from src.dotted_algebras import REDUCED_TO_PILLOWCASE, reduced_algebra
from src.errors import NonComposableError, PostconditionError, TemplateArityError
from src.f2linalg import (
    FROBENIUS, F2Matrix, kron_all, matrix_degree, tensor_identity, tensor_permutation,
)
from src.pillowcase_cat import GENERATORS, IMAGE_F1_SPAN, TABLES, image_f1_mu3_vanishes
from src.reports import CheckReport
from src.tangle import ResolutionCube, SaddleKind, SaddleType

logger = logging.getLogger(__name__)

OBJECT_NAMES = {0: 'L0', 1: 'L1'}


@dataclass(frozen=True)
class SigmaObject:
    """
    A^{(x)m}{sigma} (x) L_ell sitting in homological position h.

    ``tag`` names where the object came from (cube state, delooped basis word).
    """

    ell: int
    m: int
    sigma: int
    h: int
    tag: str = field(default='', compare=False)

    @property
    def dimension(self) -> int:
        return 2 ** self.m

    @property
    def lagrangian(self) -> str:
        return OBJECT_NAMES[self.ell]

    def to_dict(self) -> Dict:
        return {'ell': self.ell, 'm': self.m, 'sigma': self.sigma, 'h': self.h, 'tag': self.tag}

    def __repr__(self):
        return f"SigmaObject(T{self.ell}({self.m}), sigma={self.sigma}, h={self.h})"


@dataclass(frozen=True)
class SigmaMorphism:
    """
    Morphism sum_g psi_g (x) g between SigmaObjects, one tensor operator per generator.

    Zero operators are dropped, so an empty ``parts`` is the zero morphism.
    """

    source: SigmaObject
    target: SigmaObject
    parts: Dict[str, F2Matrix] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'parts', {g: mat for g, mat in self.parts.items() if not mat.is_zero()})
        self._validate()

    def _validate(self):
        shape = (self.target.dimension, self.source.dimension)
        for g, mat in self.parts.items():
            gen = GENERATORS.get(g)
            if gen is None:
                raise ValueError(f"Unknown pillowcase generator {g!r}")
            if (gen.source, gen.target) != (self.source.lagrangian, self.target.lagrangian):
                raise NonComposableError(
                    f"{g} is not a morphism {self.source.lagrangian} -> {self.target.lagrangian}",
                    {'generator': g},
                )
            if mat.shape != shape:
                raise ValueError(f"Operator for {g} has shape {mat.shape}, expected {shape}")

    def is_zero(self) -> bool:
        return not self.parts

    def __add__(self, other: 'SigmaMorphism') -> 'SigmaMorphism':
        parts = dict(self.parts)
        for g, mat in other.parts.items():
            parts[g] = parts[g] + mat if g in parts else mat
        return SigmaMorphism(self.source, self.target, parts)

    def bidegree(self) -> Optional[Tuple[int, int]]:
        """
        (first grading, homological step) shared by every summand, None for zero.

        Raises:
            ValueError: if the summands disagree
        """
        found = set()
        for g, mat in self.parts.items():
            psi = matrix_degree(mat, self.source.m, self.target.m)
            first = psi + self.source.sigma - self.target.sigma + GENERATORS[g].degree
            found.add((first, self.target.h - self.source.h))
        if len(found) > 1:
            raise ValueError(f"Morphism is not homogeneous: {sorted(found)}")
        return found.pop() if found else None

    def to_dict(self) -> Dict:
        return {'summands': [{'generator': g, 'matrix': mat.to_dict()}
                             for g, mat in sorted(self.parts.items())]}

    def __repr__(self):
        return f"SigmaMorphism({self.source!r} -> {self.target!r}, {sorted(self.parts)})"


# Elementary saddles

_CASE_NUMBER = {
    SaddleType.EARRING_ARC_CIRCLE_SPLIT: 7,
    SaddleType.EARRING_ARC_CIRCLE_MERGE: 8,
    SaddleType.PLAIN_ARC_CIRCLE_SPLIT: 9,
    SaddleType.PLAIN_ARC_CIRCLE_MERGE: 10,
    SaddleType.CIRCLE_CIRCLE_MERGE: 11,
    SaddleType.CIRCLE_SPLIT: 12,
    SaddleType.ARC_ARC: 13,
}

# circles consumed by the template
_ARITY = {7: 0, 8: 1, 9: 0, 10: 1, 11: 2, 12: 1, 13: 0}
# change in circle count
_DELTA_M = {7: 1, 8: -1, 9: 1, 10: -1, 11: -1, 12: 1, 13: 0}


def f1_elementary(kind: SaddleType, m_src: int, ell_src: int,
                  sigma: int = 0, h: int = 0) -> SigmaMorphism:
    """
    Image of an elementary saddle, affected circles in the last tensor positions.

    Args:
        kind: Saddle classification
        m_src: Circle count of the source resolution
        ell_src: Arc type of the source resolution
        sigma: Shift of the source object
        h: Homological position of the source object

    Returns:
        SigmaMorphism: into A^{(x)m_tgt}{sigma - 2} (x) L_ell_tgt at h + 1
    """
    case = _CASE_NUMBER[kind]
    arity = _ARITY[case]
    if m_src < arity:
        raise TemplateArityError(
            f"{kind.value} needs at least {arity} circles, got {m_src}",
            {'kind': kind.value, 'm': m_src},
        )
    f = FROBENIUS
    keep = tensor_identity(m_src - arity)
    ell_tgt = 1 - ell_src if case == 13 else ell_src
    a, c = f'a{ell_src}', f'c{ell_src}'

    if case == 7:
        parts = {a: kron_all([keep, f.eta_dot])}
    elif case == 8:
        parts = {a: kron_all([keep, f.eps_dot])}
    elif case == 9:
        parts = {a: kron_all([keep, f.eta_dot]), c: kron_all([keep, f.eta])}
    elif case == 10:
        parts = {a: kron_all([keep, f.eps_dot]), c: kron_all([keep, f.eps])}
    elif case == 11:
        parts = {a: kron_all([keep, f.merge])}
    elif case == 12:
        parts = {a: kron_all([keep, f.split])}
    else:
        # the saddle out of T0 is q10, out of T1 it is p01
        parts = {'q10' if ell_src == 0 else 'p01': keep}

    source = SigmaObject(ell_src, m_src, sigma, h)
    target = SigmaObject(ell_tgt, m_src + _DELTA_M[case], sigma - 2, h + 1)
    return SigmaMorphism(source, target, parts)


def edge_morphism(edge: SaddleKind, source: SigmaObject, target: SigmaObject) -> SigmaMorphism:
    """P_out o template o P_in for one cube edge."""
    template = f1_elementary(edge.kind, source.m, source.ell, source.sigma, source.h)
    perm_in = [0] * source.m
    for position, circle in enumerate(edge.source_order):
        perm_in[circle] = position
    p_in = tensor_permutation(source.m, perm_in)
    p_out = tensor_permutation(target.m, list(edge.target_order))
    parts = {g: p_out @ mat @ p_in for g, mat in template.parts.items()}
    return SigmaMorphism(source, target, parts)


def build_delta(cube: ResolutionCube, counts: Optional[Tuple[int, int]] = None, relative: bool = False):
    """
    Twisted complex of a resolution cube.

    Args:
        cube: Resolution cube
        counts: (n_plus, n_minus); (0, 0) in relative mode
        relative: Whether gradings are only relative

    Returns:
        TwistedComplex: objects per vertex ordered by h, one entry per cube edge
    """
    from src.twisted import TwistedComplex

    n_plus, n_minus = counts if counts is not None else (0, 0)
    if cube.n_minus != n_minus:
        raise ValueError(f"Cube was built with n_minus={cube.n_minus}, counts give {n_minus}")
    states = cube.states
    index = {state: i for i, state in enumerate(states)}
    objects = tuple(
        SigmaObject(
            ell=cube.vertices[s].ell,
            m=cube.vertices[s].m,
            sigma=n_minus - n_plus - 2 * cube.h[s],
            h=cube.h[s],
            tag=s,
        )
        for s in states
    )
    delta: Dict[Tuple[int, int], SigmaMorphism] = {}
    for (src, tgt), edge in cube.edges.items():
        i, j = index[src], index[tgt]
        entry = edge_morphism(edge, objects[i], objects[j])
        bidegree = entry.bidegree()
        if bidegree != (1, 1):
            raise PostconditionError(
                f"Edge {src}->{tgt} ({edge.kind.value}) has bidegree {bidegree}, expected (1, 1)",
                {'edge': [src, tgt], 'kind': edge.kind.value},
            )
        delta[(i, j)] = entry
    tc = TwistedComplex(objects, delta, n_plus, n_minus, relative, cube.diagram.name)
    logger.info(f"Built twisted complex {tc!r}")
    return tc


# Checks

def frobenius_identities() -> CheckReport:
    """Unit/counit identities of A and the tensor expansions of M and S."""
    f = FROBENIUS
    report = CheckReport('frobenius_identities')
    id_f, id_a = F2Matrix.identity(1), F2Matrix.identity(2)
    expansions = {
        'eps eta = 0': (f.eps @ f.eta, F2Matrix.zero(1, 1)),
        'eps_dot eta_dot = 0': (f.eps_dot @ f.eta_dot, F2Matrix.zero(1, 1)),
        'eps eta_dot = id': (f.eps @ f.eta_dot, id_f),
        'eps_dot eta = id': (f.eps_dot @ f.eta, id_f),
        'eta eps_dot + eta_dot eps = id': (f.eta @ f.eps_dot + f.eta_dot @ f.eps, id_a),
        'M expansion': (
            kron_all([f.eps_dot, f.eps_dot, f.eta])
            + kron_all([f.eps, f.eps_dot, f.eta_dot])
            + kron_all([f.eps_dot, f.eps, f.eta_dot]),
            f.merge,
        ),
        'S expansion': (
            kron_all([f.eps_dot, f.eta, f.eta_dot])
            + kron_all([f.eps_dot, f.eta_dot, f.eta])
            + kron_all([f.eps, f.eta_dot, f.eta_dot]),
            f.split,
        ),
    }
    for name, (lhs, rhs) in expansions.items():
        report.checked += 1
        if lhs != rhs:
            report.record(identity=name, lhs=lhs.to_dict(), rhs=rhs.to_dict())
    for name, mat, m_src, m_tgt in (('M', f.merge, 2, 1), ('S', f.split, 1, 2)):
        report.checked += 1
        if matrix_degree(mat, m_src, m_tgt) != -1:
            report.record(identity=f'degree of {name}', degree=matrix_degree(mat, m_src, m_tgt))
    return report


def f1_on_reduced_basis() -> Dict[str, str]:
    """The functor on A_l, C_l and the two arc saddles, read off the elementary templates."""
    images = {}
    for ell in (0, 1):
        images[f'A{ell}'] = f'a{ell}'
        images[f'C{ell}'] = f'c{ell}'
        (gen,) = f1_elementary(SaddleType.ARC_ARC, 0, ell).parts
        images[f'S{1 - ell}{ell}'] = gen
    return images


def check_multiplicativity() -> CheckReport:
    """F1(xy) = mu2(F1(x), F1(y)) on the reduced algebra basis."""
    report = CheckReport('f1_multiplicativity')
    algebra = reduced_algebra()
    images = f1_on_reduced_basis()
    for name, gen in images.items():
        report.checked += 1
        if REDUCED_TO_PILLOWCASE[name] != (gen,):
            report.record(element=name, image=gen, expected=list(REDUCED_TO_PILLOWCASE[name]))
    for x in algebra.basis:
        for y in algebra.basis:
            report.checked += 1
            lhs = frozenset(images[t] for t in algebra.product(x, y))
            rhs = TABLES.m2(frozenset([images[x]]), frozenset([images[y]]))
            if lhs != rhs:
                report.record(inputs=[x, y], image_of_product=sorted(lhs), product_of_images=sorted(rhs))
    return report


def check_image_mu3() -> CheckReport:
    """Every template generator lies in the image span, on which mu3 and module mu3 vanish."""
    report = image_f1_mu3_vanishes()
    used = set()
    for kind in SaddleType:
        for ell in (0, 1):
            used.update(f1_elementary(kind, 2, ell).parts)
    report.checked += 1
    outside = sorted(used - set(IMAGE_F1_SPAN))
    if outside:
        report.record(relation='image_span', generators=outside)
    report.details['template_generators'] = sorted(used)
    return report
