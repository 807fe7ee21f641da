"""Infinitesimal stabilizer dimensions for the subgroup action on the slice.

For each case the acting subgroup H sits inside the ambient group(s) via an
explicit embedding; its Lie algebra acts on a slice point componentwise by
commutators through that embedding.  The stabilizer dimension at a rational
point is the kernel dimension of the stacked linear map

    h  |->  (action of h on each matrix component),

computed exactly.  Regularity means this dimension equals the case's
minimal value, which is 0 for the cases with trivial-center action and 1
where a central torus acts trivially (diagonal rank-one model, both
block-ratio cases); the minimum is re-derived empirically by sampling in
the self test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

from . import linalg
from .linalg import Mat
from .liealg import (
    Case,
    DIAGONAL,
    FRIEDBERG_JACQUET,
    GROSS_PRASAD,
    HPerpPoint,
    JACQUET_ICHINO,
    ODD_GL,
    RANKIN_SELBERG,
    StructureError,
    build_hperp,
)
from .rng import SplitMix64

def minimal_stab_dim(case: Case) -> int:
    """Generic (minimal) stabilizer dimension for the case.

    Dimension count dim H - dim slice + dim quotient, confirmed by sampling
    in the self test: the two block-ratio cases keep a torus of centralizers
    at every point (the centralizer of BC, resp. its odd analogue), the
    rank-one diagonal model keeps its center, and the remaining cases have
    finite generic stabilizers.
    """
    if case.kind == DIAGONAL:
        return 1
    if case.kind == FRIEDBERG_JACQUET:
        return case.n
    if case.kind == ODD_GL:
        return case.n + 1
    return 0


def _basis_gl(n: int) -> List[Mat]:
    out = []
    for i in range(n):
        for j in range(n):
            m = [[Fraction(0)] * n for _ in range(n)]
            m[i][j] = Fraction(1)
            out.append(m)
    return out


def _basis_sl2() -> List[Mat]:
    e = linalg.as_mat([[0, 1], [0, 0]])
    f = linalg.as_mat([[0, 0], [1, 0]])
    h = linalg.as_mat([[1, 0], [0, -1]])
    return [e, f, h]


def _basis_so_split(n: int) -> List[Mat]:
    """Basis of the even orthogonal algebra for the split form [[0,I],[I,0]].

    Elements are [[A, B], [C, -A^t]] with skew B, C; dimension n(2n-1).
    """
    size = 2 * n
    out = []
    for i in range(n):
        for j in range(n):
            m = [[Fraction(0)] * size for _ in range(size)]
            m[i][j] = Fraction(1)
            m[n + j][n + i] = Fraction(-1)
            out.append(m)
    for i in range(n):
        for j in range(i + 1, n):
            m = [[Fraction(0)] * size for _ in range(size)]
            m[i][n + j] = Fraction(1)
            m[j][n + i] = Fraction(-1)
            out.append(m)
            m = [[Fraction(0)] * size for _ in range(size)]
            m[n + i][j] = Fraction(1)
            m[n + j][i] = Fraction(-1)
            out.append(m)
    return out


def _embed_corner(m: Mat, size: int) -> Mat:
    """Place m in the top-left corner of a size x size zero matrix."""
    out = [[Fraction(0)] * size for _ in range(size)]
    for i, row in enumerate(m):
        for j, value in enumerate(row):
            out[i][j] = value
    return out


def _embed_block_pair(h1: Mat, h2: Mat) -> Mat:
    n1, n2 = len(h1), len(h2)
    size = n1 + n2
    out = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n1):
        for j in range(n1):
            out[i][j] = h1[i][j]
    for i in range(n2):
        for j in range(n2):
            out[n1 + i][n1 + j] = h2[i][j]
    return out


@dataclass
class ActionSpec:
    """The linearized action of Lie(H) on slice points for one case."""

    case: Case
    basis: List[List[Mat]]  # one entry per H-basis element; list of embedded
    #                         matrices, one per point component
    component_names: tuple

    def dim_h(self) -> int:
        return len(self.basis)

    def apply(self, index: int, pt: HPerpPoint) -> List[Mat]:
        return [
            linalg.commutator(embedded, pt.matrices[name])
            for embedded, name in zip(self.basis[index], self.component_names)
        ]

    def stabilizer_matrix(self, pt: HPerpPoint) -> Mat:
        """Columns indexed by the H basis, rows by flattened action images."""
        if not pt.is_numeric():
            raise StructureError("stabilizer dimension needs a rational point")
        columns = []
        for index in range(self.dim_h()):
            flat = []
            for image in self.apply(index, pt):
                for row in image:
                    flat.extend(row)
            columns.append(flat)
        return linalg.mat_transpose(columns)


def action_spec(case: Case) -> ActionSpec:
    kind, n = case.kind, case.n
    if kind == DIAGONAL:
        one = [[Fraction(1)]]
        return ActionSpec(case, [[one, one]], ("x1", "x2"))
    if kind in (FRIEDBERG_JACQUET, ODD_GL):
        other = n + 1 if kind == ODD_GL else n
        basis = []
        for h in _basis_gl(n):
            basis.append([_embed_block_pair(h, [[Fraction(0)] * other
                                                for _ in range(other)])])
        for h in _basis_gl(other):
            basis.append([_embed_block_pair([[Fraction(0)] * n
                                             for _ in range(n)], h)])
        return ActionSpec(case, basis, ("x",))
    if kind == RANKIN_SELBERG:
        basis = []
        for h in _basis_gl(n):
            basis.append([h, _embed_corner(h, n + 1)])
        return ActionSpec(case, basis, ("x1", "x2"))
    if kind == JACQUET_ICHINO:
        basis = [[h, h, h] for h in _basis_sl2()]
        return ActionSpec(case, basis, ("x1", "x2", "x3"))
    if kind == GROSS_PRASAD:
        basis = []
        for h in _basis_so_split(n):
            basis.append([h, _embed_corner(h, 2 * n + 1)])
        return ActionSpec(case, basis, ("x1", "x2"))
    raise StructureError(f"unknown case kind {kind!r}")


def stabilizer_dim(spec: ActionSpec, pt: HPerpPoint) -> int:
    """Dimension of the infinitesimal stabilizer at a rational point."""
    rows = spec.stabilizer_matrix(pt)
    return linalg.kernel_dim(rows, n_cols=spec.dim_h())


def is_regular(spec: ActionSpec, pt: HPerpPoint) -> bool:
    return stabilizer_dim(spec, pt) == minimal_stab_dim(spec.case)


def random_point(case: Case, rng: SplitMix64, bound: int = 20) -> HPerpPoint:
    """A slice point with integer entries in [-bound, bound]."""
    kind, n = case.kind, case.n

    def draw() -> int:
        return rng.randint(-bound, bound)

    if kind == DIAGONAL:
        return build_hperp(case, x=draw())
    if kind == FRIEDBERG_JACQUET:
        return build_hperp(
            case,
            B=[[draw() for _ in range(n)] for _ in range(n)],
            C=[[draw() for _ in range(n)] for _ in range(n)],
        )
    if kind == ODD_GL:
        return build_hperp(
            case,
            B=[[draw() for _ in range(n + 1)] for _ in range(n)],
            C=[[draw() for _ in range(n)] for _ in range(n + 1)],
        )
    if kind == RANKIN_SELBERG:
        return build_hperp(
            case,
            A=[[draw() for _ in range(n)] for _ in range(n)],
            u=[draw() for _ in range(n)],
            v=[draw() for _ in range(n)],
            d=draw(),
        )
    if kind == JACQUET_ICHINO:
        return build_hperp(case, w=draw(), a=draw(), b=draw(), c=draw())
    if kind == GROSS_PRASAD:
        a_rows = [[draw() for _ in range(n)] for _ in range(n)]
        b_rows = [[Fraction(0)] * n for _ in range(n)]
        c_rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                value = Fraction(draw())
                b_rows[i][j], b_rows[j][i] = value, -value
                value = Fraction(draw())
                c_rows[i][j], c_rows[j][i] = value, -value
        return build_hperp(
            case,
            A=a_rows, B=b_rows, C=c_rows,
            u=[draw() for _ in range(n)],
            v=[draw() for _ in range(n)],
        )
    raise StructureError(f"unknown case kind {kind!r}")


def minimal_dim_estimate(case: Case, seed: int = 0, trials: int = 25) -> int:
    """Minimum stabilizer dimension over random integer points."""
    rng = SplitMix64(seed)
    spec = action_spec(case)
    return min(
        stabilizer_dim(spec, random_point(case, rng)) for _ in range(trials)
    )
