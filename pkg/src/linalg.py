"""Exact linear algebra over Q(zeta_N): elimination, kernels, determinants, interpolation.

Elimination and determinants run on sympy ``DomainMatrix`` over ``number_field(N)``;
reduced echelon forms are unique, so every result is deterministic.
"""
from __future__ import annotations

import itertools
import logging
import math
from collections import defaultdict
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, TypeVar

from sympy.polys.matrices import DomainMatrix

from . import config
from .commpoly import CommPoly, sympy_ring
from .exactfield import CycloElem, from_domain, number_field, to_domain

log = logging.getLogger(__name__)

Row = Dict[int, CycloElem]
K = TypeVar("K", bound=Hashable)


def _conductor(values: Iterable[CycloElem]) -> int:
    return math.lcm(1, *(v.conductor for v in values))


def _rows_out(matrix: DomainMatrix, conductor: int) -> Dict[int, Row]:
    return {
        i: {j: from_domain(v, conductor) for j, v in row.items()}
        for i, row in matrix.to_sdm().items()
    }


def rref(rows: Sequence[Mapping[int, CycloElem]]) -> List[Tuple[int, Row]]:
    """Reduced row echelon form of sparse rows; returns (pivot column, row) pairs."""
    rows = [r for r in ({c: v for c, v in raw.items() if v} for raw in rows) if r]
    if not rows:
        return []
    N = _conductor(v for r in rows for v in r.values())
    ncols = 1 + max(max(r) for r in rows)
    data = {i: {c: to_domain(v, N) for c, v in r.items()} for i, r in enumerate(rows)}
    reduced, pivots = DomainMatrix(data, (len(rows), ncols), number_field(N)).rref()
    out = _rows_out(reduced, N)
    return [(col, out[i]) for i, col in enumerate(pivots)]


def rank(rows: Sequence[Mapping[int, CycloElem]]) -> int:
    return len(rref(rows))


class KeyIndex:
    """Stable map from hashable coordinates to column numbers."""

    def __init__(self, keys: Sequence[Hashable] = ()):
        self._index: Dict[Hashable, int] = {}
        self.keys: List[Hashable] = []
        for k in keys:
            self.add(k)

    def add(self, key: Hashable) -> int:
        if key not in self._index:
            self._index[key] = len(self.keys)
            self.keys.append(key)
        return self._index[key]

    def row(self, vector: Mapping[Hashable, CycloElem]) -> Row:
        return {self.add(k): v for k, v in vector.items() if v}

    def __len__(self) -> int:
        return len(self.keys)


def kernel(images: Sequence[Mapping[Hashable, CycloElem]]) -> List[Row]:
    """Basis (in reduced echelon form) of the relations sum_j c_j images[j] = 0.

    Each returned row maps source index j to c_j.
    """
    index = KeyIndex()
    columns = [index.row(image) for image in images]
    if not len(index):
        relations: List[Row] = [{j: CycloElem.rational(1)} for j in range(len(images))]
    else:
        N = _conductor(v for col in columns for v in col.values())
        data: Dict[int, Dict[int, object]] = defaultdict(dict)
        for j, col in enumerate(columns):
            for r, v in col.items():
                data[r][j] = to_domain(v, N)
        matrix = DomainMatrix(dict(data), (len(index), len(images)), number_field(N))
        reduced, pivots = matrix.rref()
        relations = list(_rows_out(reduced.nullspace_from_rref(pivots), N).values())
    log.debug("kernel: %d images, %d relations", len(images), len(relations))
    return [row for _, row in rref(relations)]


def solve_in_span(basis: Sequence[Mapping[Hashable, CycloElem]], target: Mapping[Hashable, CycloElem]) -> Optional[Row]:
    """Coefficients c with sum c_j basis[j] = target, or None."""
    images = list(basis) + [target]
    for rel in kernel(images):
        last = len(images) - 1
        if last in rel:
            scale = -rel[last].inverse()
            return {j: v * scale for j, v in rel.items() if j != last}
    return None


def det(matrix: Sequence[Sequence[CycloElem]]) -> CycloElem:
    """Determinant over the field."""
    n = len(matrix)
    if n == 0:
        return CycloElem.rational(1)
    N = _conductor(v for row in matrix for v in row)
    rows = [[to_domain(v, N) for v in row] for row in matrix]
    return from_domain(DomainMatrix(rows, (n, n), number_field(N)).det(), N)


def det_bareiss(matrix: Sequence[Sequence[CommPoly]]) -> CommPoly:
    """Fraction-free determinant over the polynomial ring; every division is exact."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    variables = matrix[0][0].variables
    if any(entry.variables != variables for row in matrix for entry in row):
        raise ValueError("entries live in different polynomial rings")
    N = math.lcm(*(entry.conductor for row in matrix for entry in row))
    ring = sympy_ring(variables, N)
    rows = [[entry.sympy_poly(N) for entry in row] for row in matrix]
    log.debug("bareiss: %dx%d over %s", n, n, ring)
    return CommPoly.from_sympy_poly(variables, DomainMatrix(rows, (n, n), ring.to_domain()).det(), N)


def _lagrange_basis(variables: Sequence[str], name: str, points: Sequence[int], conductor: int) -> List[CommPoly]:
    z = CommPoly.variable(variables, name, conductor)
    basis = []
    for t, xt in enumerate(points):
        poly = CommPoly.constant(variables, 1, conductor)
        for s, xs in enumerate(points):
            if s != t:
                poly = poly * (z - xs) * CycloElem.rational(Fraction(1, xt - xs), conductor)
        basis.append(poly)
    return basis


def interpolate(
    variables: Sequence[str],
    grids: Sequence[Sequence[int]],
    value_at: Callable[[Tuple[int, ...]], CycloElem],
    conductor: int = 1,
) -> CommPoly:
    """Recover a polynomial from its values on a tensor grid of integer points.

    Grid values are computed up front (in a thread pool when TAFTSMASH_THREADS > 1)
    and merged in grid order.
    """
    points = list(itertools.product(*grids))
    workers = config.worker_count()
    log.info("interpolate: %d grid points, %d workers", len(points), workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = dict(zip(points, pool.map(value_at, points)))
    else:
        values = {p: value_at(p) for p in points}
    bases = [_lagrange_basis(variables, v, grid, conductor) for v, grid in zip(variables, grids)]

    def build(level: int, prefix: Tuple[int, ...]) -> CommPoly:
        if level == len(variables):
            return CommPoly.constant(variables, values[prefix], conductor)
        total = CommPoly.constant(variables, 0, conductor)
        for t, xt in enumerate(grids[level]):
            inner = build(level + 1, prefix + (xt,))
            if inner:
                total = total + inner * bases[level][t]
        return total

    return build(0, ())
