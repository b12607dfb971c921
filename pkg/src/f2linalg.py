"""
F2 Linear Algebra Module
Graded vector spaces, sparse matrices and the Frobenius algebra A = F[x]/(x^2) over the two-element field
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

# Basis of A in the shared order 1 < x, with p_A(1) = 1 and p_A(x) = -1
A_BASIS = ('1', 'x')
P_A = {'1': 1, 'x': -1}


@dataclass(frozen=True)
class GradedF2Space:
    """
    Finite-dimensional graded F2 vector space given by labelled basis vectors.

    Shift convention: (V{s})^d = V^{d+s}, so a vector of degree e in V
    sits in degree e - s in V{s}.
    """

    basis: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        self._validate()

    def _validate(self):
        labels = [label for label, _ in self.basis]
        if len(set(labels)) != len(labels):
            raise ValueError("Basis labels of a graded space must be distinct")
        for label, degree in self.basis:
            if not isinstance(degree, int):
                raise ValueError(f"Degree of {label!r} must be an integer, got {degree!r}")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def dims(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for _, degree in self.basis:
            counts[degree] = counts.get(degree, 0) + 1
        return dict(sorted(counts.items()))

    def labels_in_degree(self, degree: int) -> List[str]:
        return [label for label, d in self.basis if d == degree]

    def degree_of(self, label: str) -> int:
        for name, degree in self.basis:
            if name == label:
                return degree
        raise KeyError(label)

    def shift(self, sigma: int) -> 'GradedF2Space':
        return shift(self, sigma)

    def __repr__(self):
        return f"GradedF2Space(dims={self.dims})"


def shift(space: GradedF2Space, sigma: int) -> GradedF2Space:
    """
    Shift a graded space down by sigma.

    Args:
        space: Space to shift
        sigma: Shift amount

    Returns:
        GradedF2Space: space{sigma}, with result^d = space^{d+sigma}
    """
    return GradedF2Space(tuple((label, degree - sigma) for label, degree in space.basis))


def tensor_basis(m: int) -> Tuple[str, ...]:
    """Basis labels of A^{(x)m}, lexicographic with the first factor most significant."""
    if m < 0:
        raise ValueError(f"Tensor power must be non-negative, got {m}")
    return tuple(''.join(word) for word in itertools.product(A_BASIS, repeat=m))


def tensor_degrees(m: int) -> Tuple[int, ...]:
    """p_A of every basis vector of A^{(x)m}; the empty tensor has degree 0."""
    return tuple(sum(P_A[c] for c in word) for word in tensor_basis(m))


def tensor_space(m: int, sigma: int = 0) -> GradedF2Space:
    """A^{(x)m}{sigma} as a graded space."""
    space = GradedF2Space(tuple(zip(tensor_basis(m), tensor_degrees(m))))
    return shift(space, sigma)


@dataclass(frozen=True)
class F2Matrix:
    """
    Sparse matrix over F2 stored as the set of its non-zero coordinates.

    Entry (r, c) means column c maps onto row r. Labels are descriptive only
    and do not take part in equality.
    """

    n_rows: int
    n_cols: int
    entries: FrozenSet[Tuple[int, int]] = frozenset()
    row_labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)
    col_labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        self._validate()

    def _validate(self):
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("Matrix dimensions must be non-negative")
        for r, c in self.entries:
            if not (0 <= r < self.n_rows and 0 <= c < self.n_cols):
                raise ValueError(f"Entry ({r}, {c}) outside a {self.n_rows}x{self.n_cols} matrix")
        if self.row_labels is not None and len(self.row_labels) != self.n_rows:
            raise ValueError("Row label count does not match row count")
        if self.col_labels is not None and len(self.col_labels) != self.n_cols:
            raise ValueError("Column label count does not match column count")

    # Constructors

    @classmethod
    def zero(cls, n_rows: int, n_cols: int) -> 'F2Matrix':
        return cls(n_rows, n_cols, frozenset())

    @classmethod
    def identity(cls, n: int) -> 'F2Matrix':
        return cls(n, n, frozenset((i, i) for i in range(n)))

    @classmethod
    def from_columns(cls, n_rows: int, columns: Sequence[Iterable[int]]) -> 'F2Matrix':
        """Build a matrix from the row supports of its columns (repeats cancel)."""
        entries = set()
        for c, rows in enumerate(columns):
            for r in rows:
                entries ^= {(r, c)}
        return cls(n_rows, len(columns), frozenset(entries))

    @classmethod
    def from_dense(cls, array) -> 'F2Matrix':
        arr = np.array(array, dtype=np.uint8) % 2
        if arr.ndim != 2:
            raise ValueError("Dense input must be two-dimensional")
        rows, cols = np.nonzero(arr)
        return cls(arr.shape[0], arr.shape[1], frozenset(zip(rows.tolist(), cols.tolist())))

    # Queries

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> np.ndarray:
        arr = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for r, c in self.entries:
            arr[r, c] = 1
        return arr

    def column(self, c: int) -> FrozenSet[int]:
        """Rows hit by basis vector c."""
        return frozenset(r for r, col in self.entries if col == c)

    def columns(self) -> Dict[int, List[int]]:
        cols: Dict[int, List[int]] = {}
        for r, c in sorted(self.entries):
            cols.setdefault(c, []).append(r)
        return cols

    def apply(self, vector: Iterable[int]) -> FrozenSet[int]:
        """Image of a vector given as the set of its non-zero coordinates."""
        cols = self.columns()
        result: set = set()
        for c in vector:
            for r in cols.get(c, ()):
                result ^= {r}
        return frozenset(result)

    # Algebra

    def __add__(self, other: 'F2Matrix') -> 'F2Matrix':
        if self.shape != other.shape:
            raise ValueError(f"Cannot add {self.shape} and {other.shape} matrices")
        return F2Matrix(self.n_rows, self.n_cols, self.entries ^ other.entries,
                        self.row_labels, self.col_labels)

    def __matmul__(self, other: 'F2Matrix') -> 'F2Matrix':
        return self.compose(other)

    def compose(self, other: 'F2Matrix') -> 'F2Matrix':
        """Matrix product self * other, i.e. apply other first."""
        if self.n_cols != other.n_rows:
            raise ValueError(f"Cannot compose {self.shape} after {other.shape}")
        other_rows: Dict[int, List[int]] = {}
        for j, k in other.entries:
            other_rows.setdefault(j, []).append(k)
        result: set = set()
        for i, j in self.entries:
            for k in other_rows.get(j, ()):
                result ^= {(i, k)}
        return F2Matrix(self.n_rows, other.n_cols, frozenset(result),
                        self.row_labels, other.col_labels)

    def kron(self, other: 'F2Matrix') -> 'F2Matrix':
        """Tensor product with self on the more significant factor."""
        entries = frozenset(
            (i1 * other.n_rows + i2, j1 * other.n_cols + j2)
            for i1, j1 in self.entries
            for i2, j2 in other.entries
        )
        return F2Matrix(self.n_rows * other.n_rows, self.n_cols * other.n_cols, entries)

    def transpose(self) -> 'F2Matrix':
        return F2Matrix(self.n_cols, self.n_rows, frozenset((c, r) for r, c in self.entries),
                        self.col_labels, self.row_labels)

    def to_dict(self) -> Dict:
        return {
            'rows': self.n_rows,
            'cols': self.n_cols,
            'entries': sorted([r, c] for r, c in self.entries),
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'F2Matrix':
        return cls(int(data['rows']), int(data['cols']),
                   frozenset((int(r), int(c)) for r, c in data['entries']))

    def __repr__(self):
        return f"F2Matrix({self.n_rows}x{self.n_cols}, nnz={len(self.entries)})"


def kron_all(matrices: Sequence[F2Matrix]) -> F2Matrix:
    """Tensor product of a sequence, first factor most significant."""
    result = F2Matrix.identity(1)
    for matrix in matrices:
        result = result.kron(matrix)
    return result


def tensor_identity(m: int) -> F2Matrix:
    return F2Matrix.identity(2 ** m)


def tensor_permutation(m: int, perm: Sequence[int]) -> F2Matrix:
    """
    Operator on A^{(x)m} moving tensor factor k to position perm[k].

    Args:
        m: Number of tensor factors
        perm: Bijection on {0, ..., m-1}

    Returns:
        F2Matrix: 2^m x 2^m permutation matrix
    """
    if len(perm) != m:
        raise ValueError(f"Permutation of length {len(perm)} given for arity {m}")
    if sorted(perm) != list(range(m)):
        raise ValueError(f"{list(perm)} is not a permutation of 0..{m - 1}")
    entries = set()
    for source in range(2 ** m):
        bits = [(source >> (m - 1 - k)) & 1 for k in range(m)]
        moved = [0] * m
        for k, bit in enumerate(bits):
            moved[perm[k]] = bit
        target = 0
        for bit in moved:
            target = (target << 1) | bit
        entries.add((target, source))
    return F2Matrix(2 ** m, 2 ** m, frozenset(entries))


def matrix_degree(matrix: F2Matrix, m_src: int, m_tgt: int) -> Optional[int]:
    """
    Intrinsic degree of a map A^{(x)m_src} -> A^{(x)m_tgt}.

    Returns:
        Optional[int]: the common degree of all entries, None for the zero map

    Raises:
        ValueError: if the map is not homogeneous
    """
    src, tgt = tensor_degrees(m_src), tensor_degrees(m_tgt)
    if matrix.shape != (len(tgt), len(src)):
        raise ValueError(f"{matrix!r} is not a map A^{m_src} -> A^{m_tgt}")
    degrees = {tgt[r] - src[c] for r, c in matrix.entries}
    if len(degrees) > 1:
        raise ValueError(f"Map is not homogeneous: degrees {sorted(degrees)}")
    return degrees.pop() if degrees else None


# Row reduction over F2

def _row_reduce(arr: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    mat = (np.array(arr, dtype=np.uint8) % 2).copy()
    n_rows, n_cols = mat.shape
    pivots: List[int] = []
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        candidates = np.nonzero(mat[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        hits = np.nonzero(mat[:, col])[0]
        for r in hits:
            if r != row:
                mat[r, :] ^= mat[row, :]
        pivots.append(col)
        row += 1
    return mat, pivots


def rank(matrix: F2Matrix) -> int:
    if matrix.is_zero():
        return 0
    _, pivots = _row_reduce(matrix.to_dense())
    return len(pivots)


def rank_and_kernel(matrix: F2Matrix) -> Tuple[int, List[FrozenSet[int]]]:
    """
    Rank and a kernel basis of a matrix over F2.

    Args:
        matrix: Matrix to reduce

    Returns:
        Tuple[int, List[FrozenSet[int]]]: rank and kernel vectors (as sets of column indices)
    """
    if matrix.is_zero():
        return 0, [frozenset([c]) for c in range(matrix.n_cols)]
    reduced, pivots = _row_reduce(matrix.to_dense())
    pivot_set = set(pivots)
    kernel = []
    for free in range(matrix.n_cols):
        if free in pivot_set:
            continue
        vector = {free}
        for r, pc in enumerate(pivots):
            if reduced[r, free]:
                vector.add(pc)
        kernel.append(frozenset(vector))
    return len(pivots), kernel


def inverse(matrix: F2Matrix) -> F2Matrix:
    """Inverse of a square invertible matrix; ValueError otherwise."""
    n = matrix.n_rows
    if matrix.n_cols != n:
        raise ValueError(f"Only square matrices are invertible, got {matrix.shape}")
    augmented = np.concatenate([matrix.to_dense(), np.eye(n, dtype=np.uint8)], axis=1)
    reduced, pivots = _row_reduce(augmented)
    if pivots[:n] != list(range(n)):
        raise ValueError("Matrix is singular over F2")
    return F2Matrix.from_dense(reduced[:, n:])


# The Frobenius algebra A = F[x]/(x^2)

@dataclass(frozen=True)
class FrobeniusData:
    """
    Structure maps of A with p_A(1) = 1, p_A(x) = -1.

    eps(x) = 1, eps_dot(1) = 1, eta(1) = 1, eta_dot(1) = x; M and S are
    the multiplication and comultiplication.
    """

    eps: F2Matrix
    eps_dot: F2Matrix
    eta: F2Matrix
    eta_dot: F2Matrix
    merge: F2Matrix
    split: F2Matrix

    @property
    def degree_map(self) -> Dict[str, int]:
        return dict(P_A)

    def maps(self) -> Dict[str, F2Matrix]:
        return {
            'eps': self.eps, 'eps_dot': self.eps_dot,
            'eta': self.eta, 'eta_dot': self.eta_dot,
            'M': self.merge, 'S': self.split,
        }


def _frobenius() -> FrobeniusData:
    one, x = 0, 1
    # A (x) A basis: 11, 1x, x1, xx
    return FrobeniusData(
        eps=F2Matrix(1, 2, frozenset({(0, x)})),
        eps_dot=F2Matrix(1, 2, frozenset({(0, one)})),
        eta=F2Matrix(2, 1, frozenset({(one, 0)})),
        eta_dot=F2Matrix(2, 1, frozenset({(x, 0)})),
        merge=F2Matrix.from_columns(2, [[one], [x], [x], []]),
        split=F2Matrix.from_columns(4, [[1, 2], [3]]),
    )


FROBENIUS = _frobenius()


# Rank tables

Bidegree = Tuple[int, int]


@dataclass(frozen=True)
class RankTable:
    """Cohomology ranks keyed by (r, s) = (q + h, h); zero ranks are not stored"""

    ranks: Dict[Bidegree, int] = field(default_factory=dict)
    mode: str = 'absolute'

    def __post_init__(self):
        object.__setattr__(self, 'ranks', {key: v for key, v in sorted(self.ranks.items()) if v})
        if self.mode not in ('absolute', 'relative'):
            raise ValueError(f"Unknown grading mode {self.mode!r}")
        if any(v < 0 for v in self.ranks.values()):
            raise ValueError("Ranks must be non-negative")

    @property
    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def to_dict(self) -> Dict:
        return {'ranks': [[r, s, v] for (r, s), v in sorted(self.ranks.items())], 'mode': self.mode}

    @classmethod
    def from_dict(cls, data: Dict) -> 'RankTable':
        return cls({(int(r), int(s)): int(v) for r, s, v in data['ranks']}, data.get('mode', 'absolute'))

    def __hash__(self):
        return hash((tuple(sorted(self.ranks.items())), self.mode))

    def __repr__(self):
        return f"RankTable({self.mode}, {dict(self.ranks)})"


def translate(rt: RankTable, shift_r: int, shift_s: int = 0) -> RankTable:
    """Move every rank by (shift_r, shift_s)."""
    return RankTable({(r + shift_r, s + shift_s): v for (r, s), v in rt.ranks.items()}, rt.mode)

