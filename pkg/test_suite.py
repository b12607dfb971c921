"""
Test Suite for the Pillowcase Khovanov Toolkit
Validates core functionality of all modules
"""

import sys
import traceback
from datetime import datetime

# Test results tracking
tests_passed = 0
tests_failed = 0
test_results = []


def test_result(test_name, passed, error_msg=None):
    """Record test result"""
    global tests_passed, tests_failed
    if passed:
        tests_passed += 1
        test_results.append(f"✓ {test_name}")
        print(f"✓ {test_name}")
    else:
        tests_failed += 1
        test_results.append(f"✗ {test_name}: {error_msg}")
        print(f"✗ {test_name}")
        if error_msg:
            print(f"  Error: {error_msg}")


def _tangle(name):
    import config
    from src.corpus import load_tangle
    return load_tangle(config.TANGLES_DIR / f"{name}.json")


def _expect_error(error_type, func, *args, **kwargs):
    try:
        func(*args, **kwargs)
    except error_type:
        return
    raise Exception(f"{getattr(func, '__name__', func)} did not raise {error_type.__name__}")


def test_imports():
    """Test that all modules can be imported"""
    test_name = "Module Imports"
    try:
        from src.f2linalg import F2Matrix, FROBENIUS
        from src.tangle import TangleDiagram, parse_tangle, build_cube, close
        from src.pillowcase_cat import TABLES, verify_ainfty
        from src.dotted_algebras import reduced_algebra
        from src.functor_f import f1_elementary, build_delta
        from src.twisted import TwistedComplex, eliminate_all
        from src.pairing import pair, cohomology, jones
        from src.khovanov_oracle import reduced_khovanov
        from src.comparison import check_comparison_isomorphism
        from src.corpus import invariance_report
        from src.input_guard import validate_input_file
        from src.logger import AppLogger, AuditLogger
        import app
        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        return False


def test_f2_linear_algebra():
    """Test graded spaces, tensor operators and F2 rank"""
    test_name = "F2 Linear Algebra"
    try:
        from src.f2linalg import (
            FROBENIUS, F2Matrix, GradedF2Space, inverse, matrix_degree, rank, rank_and_kernel,
            shift, tensor_basis, tensor_permutation, tensor_space,
        )

        space = GradedF2Space((('u', 0), ('v', 2)))
        shifted = shift(space, 3)
        if shifted.degree_of('u') != -3 or shifted.degree_of('v') != -1:
            raise Exception(f"Shift lowers degrees by sigma, got {shifted.basis}")
        if shift(space, 0) != space or shift(shifted, -3) != space:
            raise Exception("Shifting by sigma and back is the identity")
        if shift(GradedF2Space((('f', 0),)), -3).dims != {3: 1}:
            raise Exception("F{-3} sits in degree 3")
        if tensor_space(1, 2).degree_of('x') != -3:
            raise Exception("x in A{2} sits in degree -3")

        if tensor_basis(0) != ('',) or tensor_basis(2) != ('11', '1x', 'x1', 'xx'):
            raise Exception(f"Unexpected tensor basis {tensor_basis(2)}")
        if tensor_space(2).dims != {-2: 1, 0: 2, 2: 1}:
            raise Exception(f"Unexpected graded dimensions {tensor_space(2).dims}")

        swap = tensor_permutation(2, [1, 0])
        if swap.apply([1]) != frozenset([2]) or swap.apply([0]) != frozenset([0]):
            raise Exception("Swapping two factors must send 1x to x1 and fix 11")
        if swap @ swap != F2Matrix.identity(4):
            raise Exception("A transposition must square to the identity")
        if tensor_permutation(3, [0, 1, 2]) != F2Matrix.identity(8):
            raise Exception("The identity permutation is the identity operator")
        cycle, inverse_cycle = tensor_permutation(3, [1, 2, 0]), tensor_permutation(3, [2, 0, 1])
        if cycle @ inverse_cycle != F2Matrix.identity(8):
            raise Exception("A permutation composed with its inverse is the identity")
        _expect_error(ValueError, tensor_permutation, 2, [0, 1, 2])

        if rank_and_kernel(F2Matrix.zero(3, 3))[0] != 0 or len(rank_and_kernel(F2Matrix.zero(3, 3))[1]) != 3:
            raise Exception("The zero 3x3 matrix has a 3-dimensional kernel")
        if rank_and_kernel(F2Matrix.identity(4)) != (4, []):
            raise Exception("The identity has full rank and no kernel")

        r, kernel = rank_and_kernel(FROBENIUS.merge)
        if r != 2 or len(kernel) != 2:
            raise Exception(f"Multiplication has rank 2 and a 2-dimensional kernel, got {r}, {len(kernel)}")
        for vector in kernel:
            if FROBENIUS.merge.apply(vector):
                raise Exception(f"Kernel vector {sorted(vector)} is not killed")

        if matrix_degree(FROBENIUS.merge, 2, 1) != -1 or matrix_degree(FROBENIUS.split, 1, 2) != -1:
            raise Exception("Merge and split have degree -1")
        if rank(F2Matrix.from_dense([[1, 1], [1, 1]])) != 1:
            raise Exception("Rank over F2 is wrong")

        m = F2Matrix.from_dense([[1, 1], [0, 1]])
        if m @ inverse(m) != F2Matrix.identity(2):
            raise Exception("Inverse is wrong")
        _expect_error(ValueError, inverse, F2Matrix.zero(2, 2))

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_tangle_parsing():
    """Test diagram parsing and validation errors"""
    test_name = "Tangle Parsing and Validation"
    try:
        from src.errors import OrientationError, TangleFormatError
        from src.tangle import TangleDiagram, parse_tangle, serialize_tangle, writhe_counts

        d = parse_tangle('{"endpoints": [1, 2, 3, 4], "crossings": [[2, 3, 4, 1]], '
                         '"orientation": [[2, 0], [1, 0]], "name": "cross"}')
        if d.n_crossings != 1 or not d.is_oriented:
            raise Exception("Parsed diagram lost its crossing or orientation")

        # label 1 occurs three times
        _expect_error(TangleFormatError, parse_tangle, {'endpoints': [1, 1, 1, 2]})
        # arcs joining opposite boundary points
        _expect_error(TangleFormatError, parse_tangle, {'endpoints': [1, 2, 1, 2]})
        _expect_error(TangleFormatError, parse_tangle, {'endpoints': [1, 2, 2]})
        _expect_error(TangleFormatError, parse_tangle, {'endpoints': [1, 2, 2, 1], 'colour': 'red'})
        _expect_error(TangleFormatError, parse_tangle, '{"endpoints": [1, 2, 2, 1]')
        _expect_error(TangleFormatError, TangleDiagram, (1, 2, 2, 1), (),
                      orientation=((1, '1'), (1, '-i')))

        unoriented = TangleDiagram((1, 2, 3, 4), ((2, 3, 4, 1),))
        _expect_error(OrientationError, unoriented.crossing_signs)
        _expect_error(OrientationError, writhe_counts, unoriented)

        again = parse_tangle(serialize_tangle(d))
        if again.crossings != d.crossings or again.boundary_flow() != d.boundary_flow():
            raise Exception("Serialized tangle does not read back to the same diagram")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_orientation_and_writhe():
    """Test crossing signs and closure compatibility of the bundled tangles"""
    test_name = "Orientation, Writhe and Closure Compatibility"
    try:
        from src.tangle import writhe_counts

        expected_writhe = {
            't_cross': (1, 0),
            'twist2': (2, 0),
            'twist3': (3, 0),
            'twist3_negative': (0, 3),
            'hopf_antiparallel': (0, 2),
            'figure_eight': (2, 2),
        }
        for name, counts in expected_writhe.items():
            found = writhe_counts(_tangle(name))
            if found != counts:
                raise Exception(f"{name}: expected writhe counts {counts}, got {found}")

        expected_closures = {
            't0': (True, False),
            't1': (True, True),
            't_cross': (True, False),
            'twist3': (False, True),
            'hopf_antiparallel': (True, True),
            'figure_eight': (True, True),
        }
        for name, (k0, k1) in expected_closures.items():
            d = _tangle(name)
            if (d.orientation_extends(0), d.orientation_extends(1)) != (k0, k1):
                raise Exception(f"{name}: orientation extension should be {(k0, k1)}")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_resolutions_and_cube():
    """Test complete resolutions, saddle classification and closures"""
    test_name = "Resolutions, Cube and Closures"
    try:
        from src.tangle import SaddleType, build_cube, close, resolve

        t_cross = _tangle('t_cross')
        zero, one = resolve(t_cross, '0'), resolve(t_cross, '1')
        if (zero.ell, zero.m, one.ell, one.m) != (0, 0, 1, 0):
            raise Exception(f"Resolutions of the crossing should be T0 and T1, got {zero!r}, {one!r}")
        if resolve(_tangle('t0_loop'), '').m != 1:
            raise Exception("A loop is a circle of the resolution")

        cube = build_cube(t_cross)
        if cube.states != ['0', '1'] or cube.h != {'0': 0, '1': 1}:
            raise Exception(f"Unexpected cube {cube.summary()}")
        (edge,) = cube.edges.values()
        if edge.kind != SaddleType.ARC_ARC:
            raise Exception(f"Crossing edge should be an arc-arc saddle, got {edge.kind}")

        trefoil_cube = build_cube(_tangle('twist3'))
        if len(trefoil_cube.vertices) != 8 or len(trefoil_cube.edges) != 12:
            raise Exception(f"Three crossings give 8 vertices and 12 edges, got {trefoil_cube.summary()}")

        negative_cube = build_cube(_tangle('twist3_negative'))
        if min(negative_cube.h.values()) != -3:
            raise Exception("h is shifted by the negative crossing count")

        t0, t1 = _tangle('t0'), _tangle('t1')
        if len(close(t0, 0).loops) != 2:
            raise Exception("Closing T0 by k=0 gives a 2-component unlink")
        if len(close(t1, 0).loops) != 1 or len(close(t0, 1).loops) != 1:
            raise Exception("Mixed closures of T0 and T1 give the unknot")

        link = close(t_cross, 0)
        if link.crossings != ((2, 2, 1, 1),) or link.basepoint != 1:
            raise Exception(f"Unexpected closure {link.crossings}, basepoint {link.basepoint}")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_pillowcase_category():
    """Test structure maps, module actions and the exhaustive verifiers"""
    test_name = "Pillowcase Category"
    try:
        from src.errors import NonComposableError
        from src.pillowcase_cat import (
            TABLES, ModuleElement, PillowcaseMorphism, graded_dimensions, image_f1_mu3_vanishes,
            module_mu, mu2, mu3, verify_ainfty, verify_algebra_comparisons, verify_module_relations,
        )

        M, W = PillowcaseMorphism.of, ModuleElement.of
        if mu2(M('a0'), M('c0')) != M('c0') or mu2(M('a1'), M('q10')) != M('q10'):
            raise Exception("a0 and a1 are units")
        if mu2(M('p01'), M('q10')) != M('c0') or mu2(M('q01'), M('q10')) != M('d0'):
            raise Exception("p01 after q10 should be c0 and q01 after q10 should be d0")
        for x, y in (('b0', 'b0'), ('c0', 'c0'), ('c0', 'p01')):
            if not mu2(M(x), M(y)).is_zero():
                raise Exception(f"mu2({x}, {y}) should vanish")
        if mu3(M('q10'), M('b0'), M('p01')) != M('a1') or mu3(M('c0'), M('b0'), M('c0')) != M('c0'):
            raise Exception("mu3(q10, b0, p01) = a1 and mu3(c0, b0, c0) = c0")
        if not mu3(M('a0'), M('b0'), M('c0')).is_zero():
            raise Exception("mu3 vanishes on a unit")
        if mu2(mu2(M('b0'), M('c0')), M('b0')) != mu2(M('b0'), mu2(M('c0'), M('b0'))):
            raise Exception("mu2 is associative on (b0, c0, b0)")
        _expect_error(NonComposableError, mu2, M('q10'), M('q10'))

        if module_mu(0, [M('c0')], W('alpha')) != W('beta'):
            raise Exception("c0 sends alpha to beta")
        if module_mu(0, [M('q10')], W('alpha')) != W('gamma'):
            raise Exception("q10 sends alpha to gamma")
        if module_mu(0, [M('a1')], W('gamma')) != W('gamma'):
            raise Exception("a1 acts as the identity")
        if module_mu(0, [M('b0'), M('p01')], W('gamma')) != W('alpha'):
            raise Exception("Module mu3(b0, p01, gamma) should be alpha")
        if module_mu(1, [M('q10')], W('tau')) != W('sigma'):
            raise Exception("q10 sends tau to sigma")
        if not module_mu(0, [M('q01'), M('q10'), M('b0')], W('alpha')).is_zero():
            raise Exception("Module operations vanish beyond mu3")
        # p01 starts at L1 and alpha sits over L0
        _expect_error(NonComposableError, module_mu, 0, [M('p01')], W('alpha'))

        if graded_dimensions() != {3: 2, 2: 2, 1: 2, 0: 2, -1: 2, -2: 2}:
            raise Exception(f"Unexpected graded dimensions {graded_dimensions()}")

        for report in (verify_ainfty(), verify_module_relations(0), verify_module_relations(1),
                       verify_algebra_comparisons(), image_f1_mu3_vanishes()):
            if not report.passed:
                raise Exception(f"{report.name} failed: {report.violations[:3]}")

        corrupted = TABLES.with_entry('mu2', ('p01', 'q10'), ['d0'])
        if verify_ainfty(corrupted).passed:
            raise Exception("A corrupted mu2 entry must be detected")
        dropped = TABLES.with_entry('module_mu2', ('q10', 'alpha'), [], k=0)
        if verify_module_relations(0, dropped).passed:
            raise Exception("A missing module entry must be detected")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_dotted_algebras():
    """Test the dotted cobordism algebras"""
    test_name = "Dotted Cobordism Algebras"
    try:
        from src.dotted_algebras import reduced_algebra, unreduced_algebra

        reduced, unreduced = reduced_algebra(), unreduced_algebra()
        if len(reduced.basis) != 6 or len(unreduced.basis) != 12:
            raise Exception(f"Dimensions should be 6 and 12, got {len(reduced.basis)}, {len(unreduced.basis)}")
        if 3 in unreduced.graded_dimensions():
            raise Exception("No dotted cobordism sits in degree 3")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_elementary_saddles():
    """Test the functor on elementary saddles"""
    test_name = "Functor on Elementary Saddles"
    try:
        from src.errors import TemplateArityError
        from src.f2linalg import FROBENIUS
        from src.functor_f import (
            check_image_mu3, check_multiplicativity, f1_elementary, frobenius_identities,
        )
        from src.tangle import SaddleType

        split = f1_elementary(SaddleType.CIRCLE_SPLIT, 1, 0)
        if split.parts != {'a0': FROBENIUS.split} or split.target.m != 2:
            raise Exception(f"Circle split should be a0 (x) S, got {split!r}")
        if set(f1_elementary(SaddleType.PLAIN_ARC_CIRCLE_SPLIT, 0, 1).parts) != {'a1', 'c1'}:
            raise Exception("Plain arc split has an a and a c summand")
        if set(f1_elementary(SaddleType.ARC_ARC, 0, 0).parts) != {'q10'}:
            raise Exception("Arc saddle out of T0 is q10")
        if set(f1_elementary(SaddleType.ARC_ARC, 0, 1).parts) != {'p01'}:
            raise Exception("Arc saddle out of T1 is p01")

        for kind in SaddleType:
            for ell in (0, 1):
                bidegree = f1_elementary(kind, 2, ell).bidegree()
                if bidegree != (1, 1):
                    raise Exception(f"{kind.value} from T{ell} has bidegree {bidegree}")

        _expect_error(TemplateArityError, f1_elementary, SaddleType.CIRCLE_CIRCLE_MERGE, 1, 0)

        for report in (frobenius_identities(), check_multiplicativity(), check_image_mu3()):
            if not report.passed:
                raise Exception(f"{report.name} failed: {report.violations[:3]}")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_twisted_complexes():
    """Test twisted complex construction and the defining condition"""
    test_name = "Twisted Complexes"
    try:
        from src.corpus import build_complex
        from src.f2linalg import F2Matrix
        from src.functor_f import SigmaMorphism
        from src.twisted import TwistedComplex, deserialize, serialize, verify_twisted

        tc = build_complex(_tangle('t_cross'))
        first, second = tc.objects
        if (first.ell, first.sigma, first.h) != (0, -1, 0) or (second.ell, second.sigma, second.h) != (1, -3, 1):
            raise Exception(f"Unexpected objects {tc.objects}")
        if set(tc.delta) != {(0, 1)} or tc.delta[(0, 1)].parts != {'q10': F2Matrix.identity(1)}:
            raise Exception("The single entry should be q10 with a 1x1 identity")
        flat = build_complex(_tangle('t0'))
        if len(flat.objects) != 1 or flat.delta:
            raise Exception("A crossingless tangle has one object and no differential")
        hopf_cube = build_complex(_tangle('twist2'))
        if len(hopf_cube.objects) != 4 or len(hopf_cube.delta) != 4:
            raise Exception(f"Two crossings give four objects and four entries, got {hopf_cube!r}")

        for name in ('t_cross', 'twist2', 'twist3', 'hopf_antiparallel', 'figure_eight'):
            report = verify_twisted(build_complex(_tangle(name), checks=False))
            if not report.passed:
                raise Exception(f"{name} fails the twisted complex condition: {report.violations[:3]}")

        bad = SigmaMorphism(first, second, {'p10': F2Matrix.identity(1)})
        if verify_twisted(TwistedComplex(tc.objects, {(0, 1): bad})).passed:
            raise Exception("An entry of the wrong bidegree must be detected")

        hopf = build_complex(_tangle('twist2'))
        if deserialize(serialize(hopf)) != hopf:
            raise Exception("Serialized complex does not read back")

        relative = build_complex(_tangle('twist2'), relative=True)
        if relative.mode != 'relative' or (relative.n_plus, relative.n_minus) != (0, 0):
            raise Exception("Relative complexes carry no crossing counts")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_delooping_and_cancellation():
    """Test delooping and cancellation of unit entries"""
    test_name = "Delooping and Cancellation"
    try:
        from src.corpus import build_complex, compute_rank_table, load_pair
        from src.errors import PivotError
        from src.f2linalg import F2Matrix
        from src.functor_f import SigmaMorphism, SigmaObject
        from src.pairing import cohomology, pair
        from src.tangle import tangle_from_document
        from src.twisted import TwistedComplex, deloop, eliminate, eliminate_all, unit_pivots
        import config

        _expect_error(PivotError, eliminate, build_complex(_tangle('t_cross')), (0, 1))

        source, target = SigmaObject(0, 0, 0, 0), SigmaObject(0, 0, -1, 1)
        acyclic = TwistedComplex((source, target),
                                 {(0, 1): SigmaMorphism(source, target, {'a0': F2Matrix.identity(1)})})
        if unit_pivots(acyclic) != [(0, 1)]:
            raise Exception("The identity entry is a unit pivot")
        if eliminate(acyclic, (0, 1)).objects:
            raise Exception("Cancelling the only pair leaves the empty complex")

        looped = build_complex(_tangle('t0_loop'))
        delooped = deloop(looped)
        if [o.sigma for o in delooped.objects] != [-1, 1] or any(o.m for o in delooped.objects):
            raise Exception(f"Delooping one circle gives two shifted copies, got {delooped.objects}")
        for k in (0, 1):
            if cohomology(pair(delooped, k)) != cohomology(pair(looped, k)):
                raise Exception(f"Delooping changed the paired cohomology for k={k}")

        kinked = load_pair(config.CORPUS_DIR / 'r1_t0_positive.json')
        plain, twisted = (tangle_from_document(doc) for doc in kinked.diagrams)
        reduced = eliminate_all(deloop(build_complex(twisted)))
        if len(reduced.objects) != 1 or reduced.objects[0].ell != 0:
            raise Exception(f"The kink should cancel down to one T0 object, got {reduced!r}")
        for k in (0, 1):
            if cohomology(pair(reduced, k, audit=False)) != compute_rank_table(plain, k):
                raise Exception(f"Cancelled kink differs from T0 for k={k}")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_pairing():
    """Test pairing with the test curves, cohomology and reduction"""
    test_name = "Pairing and Cohomology"
    try:
        from src.corpus import build_complex, compute_rank_table
        from src.errors import GradingModeError
        from src.pairing import Q, RankTable, cohomology, jones, pair, reduce, translate
        import sympy

        base_cases = {
            ('t0', 0): {(0, 0): 1, (-2, 0): 1},
            ('t1', 0): {(-1, 0): 1},
            ('t0', 1): {(-1, 0): 1},
            ('t1', 1): {(0, 0): 1, (-2, 0): 1},
        }
        for (name, k), ranks in base_cases.items():
            found = compute_rank_table(_tangle(name), k)
            if found.ranks != ranks:
                raise Exception(f"{name} paired with W{k}: expected {ranks}, got {found.ranks}")

        tc = build_complex(_tangle('t_cross'))
        paired = pair(tc, 0)
        if dict(zip((g[2] for g in paired.generators), paired.bidegrees)) != {
                'alpha': (1, 0), 'beta': (-1, 0), 'gamma': (2, 1)}:
            raise Exception(f"Unexpected W0 generators {paired.generators} {paired.bidegrees}")
        if cohomology(paired).ranks != {(-1, 0): 1}:
            raise Exception("Crossing paired with W0 should leave beta")
        if cohomology(pair(tc, 1)).ranks != {(3, 1): 1}:
            raise Exception("Crossing paired with W1 should leave rho")

        small = reduce(paired)
        if small.dimension != 1 or not small.differential.is_zero() or small.bidegrees != ((-1, 0),):
            raise Exception(f"Reduction should keep one generator, got {small!r}")
        flat = pair(build_complex(_tangle('t0')), 0)
        if reduce(flat) != flat:
            raise Exception("Reducing a complex with zero differential changes nothing")
        trefoil = pair(build_complex(_tangle('twist3')), 1)
        if reduce(trefoil).dimension != cohomology(trefoil).total_rank:
            raise Exception("Reduced dimension should equal the total cohomology rank")

        if sympy.expand(jones(cohomology(paired)) - Q ** -1) != 0:
            raise Exception("Jones polynomial of the unknot closure is q^-1")
        _expect_error(GradingModeError, jones, RankTable({(0, 0): 1}, 'relative'))

        table = RankTable({(1, 0): 1, (3, 1): 0})
        if table.ranks != {(1, 0): 1} or translate(table, 2, 1).ranks != {(3, 1): 1}:
            raise Exception("Rank tables drop zeros and translate by (r, s)")
        if RankTable.from_dict(table.to_dict()) != table:
            raise Exception("Rank table dictionary form does not read back")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_orientation_shifts():
    """Test that orientations move the paired tables by a uniform translation"""
    test_name = "Orientation Shifts of Rank Tables"
    try:
        from src.corpus import compute_rank_table
        from src.pairing import translate
        from src.tangle import parse_tangle, writhe_counts

        crossing = {'name': 't_cross', 'endpoints': [1, 2, 3, 4], 'crossings': [[2, 3, 4, 1]]}
        forward = parse_tangle(dict(crossing, orientation=[[2, 0], [1, 0]]))
        # over-strand reversed
        backward = parse_tangle(dict(crossing, orientation=[[2, 0], [3, 0]]))
        counts_f, counts_b = writhe_counts(forward), writhe_counts(backward)
        if counts_f != (1, 0) or counts_b != (0, 1):
            raise Exception(f"Reversing one strand should flip the crossing, got {counts_f} and {counts_b}")

        def offset(counts):
            n_plus, n_minus = counts
            return n_plus - 3 * n_minus, -n_minus

        for d in (forward, backward, _tangle('twist3'), _tangle('figure_eight')):
            dr, ds = offset(writhe_counts(d))
            for k in (0, 1):
                relative = compute_rank_table(d, k, relative=True)
                absolute = compute_rank_table(d, k)
                if relative.mode != 'relative' or translate(relative, dr, ds).ranks != absolute.ranks:
                    raise Exception(f"{d.name} W{k}: absolute table is not the relative one moved by {(dr, ds)}")

        (rf, sf), (rb, sb) = offset(counts_f), offset(counts_b)
        for k in (0, 1):
            table_f, table_b = compute_rank_table(forward, k), compute_rank_table(backward, k)
            if translate(table_f, rb - rf, sb - sf) != table_b:
                raise Exception(f"W{k}: the two orientations should differ by {(rb - rf, sb - sf)}")
            if table_f == table_b:
                raise Exception(f"W{k}: the orientations should not give the same absolute table")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_khovanov_oracle():
    """Test the reduced Khovanov oracle and the bracket Jones polynomial"""
    test_name = "Khovanov Oracle"
    try:
        import config
        from src.khovanov_oracle import compare, jones_from_bracket, reduced_khovanov, state_circles
        from src.pairing import Q, jones, translate
        from src.tangle import close, parse_link
        import sympy

        def link(name):
            return parse_link((config.LINKS_DIR / f"{name}.json").read_text(encoding='utf-8'))

        expected = {
            'unknot': ({(-1, 0): 1}, Q ** -1),
            'unlink2': ({(0, 0): 1, (-2, 0): 1}, 1 + Q ** -2),
            'trefoil': ({(1, 0): 1, (7, 2): 1, (10, 3): 1}, Q + Q ** 5 - Q ** 7),
        }
        for name, (ranks, polynomial) in expected.items():
            diagram = link(name)
            table = reduced_khovanov(diagram)
            if table.ranks != ranks:
                raise Exception(f"{name}: expected {ranks}, got {table.ranks}")
            if sympy.expand(jones(table) - polynomial) != 0:
                raise Exception(f"{name}: Euler characteristic {jones(table)} is not {polynomial}")
            if sympy.expand(jones_from_bracket(diagram) - polynomial) != 0:
                raise Exception(f"{name}: bracket gives {jones_from_bracket(diagram)}")

        mirror = reduced_khovanov(close(_tangle('twist3_negative'), 1))
        if mirror.ranks != {(-3, 0): 1, (-9, -2): 1, (-12, -3): 1}:
            raise Exception(f"Unexpected negative trefoil table {mirror.ranks}")
        hopf = reduced_khovanov(close(_tangle('twist2'), 1))
        if hopf.ranks != {(0, 0): 1, (6, 2): 1}:
            raise Exception(f"Unexpected Hopf link table {hopf.ranks}")

        circles = state_circles(close(_tangle('t_cross'), 0), '0')
        if circles != (frozenset([2]), frozenset([1])):
            raise Exception(f"Basepoint circle goes last, got {circles}")

        trefoil = reduced_khovanov(link('trefoil'))
        if not compare(trefoil, trefoil).passed:
            raise Exception("A table must agree with itself")
        shifted = compare(translate(trefoil, 2), trefoil)
        if shifted.passed or shifted.violation_count != 6:
            raise Exception("A shifted table must disagree at every occupied bidegree")

        from app import run
        from src import khovanov_oracle
        from src.errors import ChainComplexError
        from src.khovanov_oracle import A
        from src.schemas import RunConfig

        bracket = khovanov_oracle.kauffman_bracket
        khovanov_oracle.kauffman_bracket = lambda diagram: A
        try:
            _expect_error(ChainComplexError, jones_from_bracket, link('unknot'))
            code, payload = run(RunConfig(command='jones', inputs=[config.TANGLES_DIR / 't0.json']))
            if code != 1 or payload['error']['type'] != 'ChainComplexError':
                raise Exception(f"An odd bracket exponent is a failed check, got {code} {payload}")
        finally:
            khovanov_oracle.kauffman_bracket = bracket

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_comparison_isomorphism():
    """Test the explicit isomorphism with the oracle complex"""
    test_name = "Comparison Isomorphism"
    try:
        from src.comparison import check_comparison_isomorphism

        for name, k in (('t_cross', 0), ('t0', 0), ('twist2', 1), ('twist3', 1), ('t_cross', 1)):
            report = check_comparison_isomorphism(_tangle(name), k)
            if not report.passed:
                raise Exception(f"{name} k={k}: {report.violations[:3]}")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_oracle_agreement():
    """Test the pipeline against the oracle on every bundled tangle"""
    test_name = "Oracle Agreement on Bundled Tangles"
    try:
        import config
        from src.corpus import bundled_tangles, compare_with_oracle, oracle_report
        from src.errors import OrientationError

        report = oracle_report(bundled_tangles(), threads=2)
        if not report.passed or report.checked == 0:
            raise Exception(f"Pipeline disagrees with the oracle: {report.violations[:3]}")

        small = [config.TANGLES_DIR / f"{name}.json"
                 for name in ('t0_loop', 't_cross', 'twist2', 'twist3', 'hopf_antiparallel', 'figure_eight')]
        eliminated = oracle_report(small, threads=2, eliminate=True)
        if not eliminated.passed:
            raise Exception(f"Cancelled pipeline disagrees with the oracle: {eliminated.violations[:3]}")

        result = compare_with_oracle(_tangle('twist3'), 1)
        if not result['passed'] or result['ours'] != result['oracle']:
            raise Exception("Trefoil comparison failed")
        _expect_error(OrientationError, compare_with_oracle, _tangle('twist3'), 0)

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_reidemeister_invariance():
    """Test invariance of the paired tables over the Reidemeister corpus"""
    test_name = "Reidemeister Invariance"
    try:
        from src.corpus import invariance_report, load_corpus

        pairs = load_corpus()
        if len(pairs) != 12 or {p.move for _, p in pairs} != {'R1', 'R2', 'R3'}:
            raise Exception(f"Corpus should hold 12 pairs covering R1, R2 and R3, got {len(pairs)}")
        report = invariance_report(pairs, threads=2)
        if not report.passed or report.checked != 24:
            raise Exception(f"Invariance failed: {report.violations[:3]}")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_input_guard():
    """Test input file validation"""
    test_name = "Input Guard"
    try:
        import tempfile
        from pathlib import Path
        from src.errors import InputValidationError
        from src.input_guard import (
            fingerprint, validate_crossing_count, validate_input_file, validate_label,
        )

        with tempfile.TemporaryDirectory() as tmp:
            tmp = Path(tmp)
            good = tmp / 'good.json'
            good.write_text('{"endpoints": [1, 2, 2, 1]}', encoding='utf-8')
            if validate_input_file(good) != {'endpoints': [1, 2, 2, 1]}:
                raise Exception("Valid file was not decoded")

            (tmp / 'notes.txt').write_text('{}', encoding='utf-8')
            (tmp / 'broken.json').write_text('{"endpoints": [', encoding='utf-8')
            (tmp / 'list.json').write_text('[1, 2]', encoding='utf-8')
            (tmp / 'binary.json').write_bytes(b'\xff\xfe\x00')
            for name in ('missing.json', 'notes.txt', 'broken.json', 'list.json', 'binary.json'):
                _expect_error(InputValidationError, validate_input_file, tmp / name)

        _expect_error(InputValidationError, validate_crossing_count, 13)
        if validate_crossing_count(3) != 3:
            raise Exception("Small diagrams pass the crossing limit")
        _expect_error(InputValidationError, validate_label, True)
        _expect_error(InputValidationError, validate_label, 'a\x01')
        _expect_error(InputValidationError, validate_label, '')
        if len(fingerprint('abc')) != 64:
            raise Exception("Fingerprint should be a SHA256 hex digest")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_reports_and_logger():
    """Test check reports, table rendering and logging"""
    test_name = "Reports and Logging"
    try:
        from src.logger import AppLogger, AuditLogger
        from src.pairing import RankTable
        from src.reports import CheckReport, rank_table_frame, render_checks, render_rank_table

        report = CheckReport('demo')
        report.checked += 2
        report.record(entry=[0, 1])
        if report.passed or report.to_dict()['violation_count'] != 1:
            raise Exception("Recorded violation was lost")
        merged = CheckReport('total').absorb(report)
        if merged.checked != 2 or merged.violation_count != 1:
            raise Exception("Absorbing a report should add its counts")
        if 'demo' not in render_checks([report]):
            raise Exception("Check summary is missing the check name")

        frame = rank_table_frame(RankTable({(1, 0): 1, (7, 2): 1}))
        if frame.shape != (2, 2) or frame.loc[7, 2] != 1 or frame.loc[1, 2] != 0:
            raise Exception(f"Unexpected rank table grid\n{frame}")
        if 'zero' not in render_rank_table(RankTable({})):
            raise Exception("Empty tables render as zero")

        logger = AppLogger.get_logger('test')
        if logger is not AppLogger.get_logger('test'):
            raise Exception("Loggers should be cached by name")
        audit = AuditLogger()
        audit.log_check('demo', True, 0, {'checked': 2})
        audit.log_run('verify', [], 'ok')

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def test_cli():
    """Test command dispatch and exit codes"""
    test_name = "Command Line Interface"
    try:
        import config
        from pydantic import ValidationError
        from app import build_parser, run
        from src.schemas import RunConfig

        code, payload = run(RunConfig(command='verify', inputs=[config.TANGLES_DIR / 't_cross.json']))
        if code != 0 or not payload['passed']:
            raise Exception(f"verify should pass, got exit code {code}")

        code, payload = run(RunConfig(command='compare', inputs=[config.TANGLES_DIR / 'twist3.json'], closure=1))
        if code != 0 or not payload['passed']:
            raise Exception(f"Trefoil comparison should pass, got exit code {code}")

        code, payload = run(RunConfig(command='invariance', inputs=[config.CORPUS_DIR / 'r2_cross.json']))
        if code != 0 or not payload['passed']:
            raise Exception(f"R2 pair should be invariant, got exit code {code}")

        code, payload = run(RunConfig(command='pair', inputs=[config.TANGLES_DIR / 't_cross.json']))
        if code != 0 or payload['rank_table']['ranks'] != [[-1, 0, 1]]:
            raise Exception(f"Unexpected pair output {payload}")

        code, payload = run(RunConfig(command='jones', inputs=[config.TANGLES_DIR / 'twist2.json'], closure=1))
        if code != 0 or payload['jones'] != payload['bracket']:
            raise Exception(f"Jones polynomials disagree: {payload}")

        code, payload = run(RunConfig(command='compare', inputs=[config.TANGLES_DIR / 't_cross.json'], closure=1))
        if code != 2 or payload['error']['type'] != 'OrientationError':
            raise Exception(f"Incompatible closure is a usage error, got {code} {payload}")

        code, payload = run(RunConfig(command='pair', inputs=[config.TANGLES_DIR / 't_cross.json'], closure=1))
        if code != 0 or payload['rank_table'] != {'ranks': [[2, 1, 1]], 'mode': 'relative'}:
            raise Exception(f"Non-extending closure should pair in relative mode, got {code} {payload}")

        code, payload = run(RunConfig(command='jones', inputs=[config.TANGLES_DIR / 't_cross.json'], closure=1))
        if code != 2 or payload['error']['type'] != 'OrientationError':
            raise Exception(f"Jones on a non-extending closure is a usage error, got {code} {payload}")

        code, payload = run(RunConfig(command='jones', inputs=[config.TANGLES_DIR / 't0.json'], relative=True))
        if code != 2 or payload['error']['type'] != 'GradingModeError':
            raise Exception(f"Jones in relative mode is a usage error, got {code} {payload}")

        code, payload = run(RunConfig(command='build', inputs=[config.TANGLES_DIR / 'missing.json']))
        if code != 2 or payload['error']['type'] != 'InputValidationError':
            raise Exception(f"Missing input is a usage error, got {code} {payload}")

        _expect_error(ValidationError, RunConfig, command='pair')
        _expect_error(ValidationError, RunConfig, command='verify', threads=0)

        args = build_parser().parse_args(['pair', 'a.json', '--closure', '1', '--eliminate'])
        if args.closure != 1 or not args.eliminate or args.output_format != 'json':
            raise Exception("Parser options were not read")

        test_result(test_name, True)
        return True
    except Exception as e:
        test_result(test_name, False, str(e))
        traceback.print_exc()
        return False


def run_all_tests():
    """Run all tests"""
    print("\n" + "="*60)
    print("Pillowcase Khovanov Toolkit - Test Suite")
    print("="*60 + "\n")

    print(f"Starting tests at {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")

    # Run tests
    tests = [
        test_imports,
        test_f2_linear_algebra,
        test_tangle_parsing,
        test_orientation_and_writhe,
        test_resolutions_and_cube,
        test_pillowcase_category,
        test_dotted_algebras,
        test_elementary_saddles,
        test_twisted_complexes,
        test_delooping_and_cancellation,
        test_pairing,
        test_orientation_shifts,
        test_khovanov_oracle,
        test_comparison_isomorphism,
        test_oracle_agreement,
        test_reidemeister_invariance,
        test_input_guard,
        test_reports_and_logger,
        test_cli,
    ]

    for test_func in tests:
        print(f"\nRunning: {test_func.__name__}...")
        test_func()

    # Print summary
    print("\n" + "="*60)
    print("Test Summary")
    print("="*60)
    print(f"\nTotal Tests: {tests_passed + tests_failed}")
    print(f"Passed: {tests_passed}")
    print(f"Failed: {tests_failed}")

    if tests_failed == 0:
        print("\n✓ All tests passed!")
        return 0
    else:
        print(f"\n✗ {tests_failed} test(s) failed")
        print("\nFailed tests:")
        for result in test_results:
            if result.startswith("✗"):
                print(f"  {result}")
        return 1


if __name__ == "__main__":
    exit_code = run_all_tests()
    sys.exit(exit_code)
