"""Exact linear algebra over Fraction matrices (lists of lists).

This is the numeric layer used for centralizer kernels, u*v recovery at
rational base points, and full-matrix determinant spot checks.  Everything is
plain Gaussian elimination over Fraction: no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

Mat = List[List[Fraction]]
Vec = List[Fraction]


def as_mat(rows: Sequence[Sequence]) -> Mat:
    return [[Fraction(value) for value in row] for row in rows]


def as_vec(values: Sequence) -> Vec:
    return [Fraction(value) for value in values]


def mat_identity(n: int) -> Mat:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_mul(a: Mat, b: Mat) -> Mat:
    if not a or not b or len(a[0]) != len(b):
        raise ValueError("shape mismatch in matrix product")
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
         for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a: Mat) -> Mat:
    return [[-x for x in row] for row in a]


def mat_transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def commutator(a: Mat, b: Mat) -> Mat:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def _rref(rows: Mat) -> tuple:
    """Reduced row echelon form (in place on the copy); returns pivots."""
    work = [list(row) for row in rows]
    n_rows = len(work)
    n_cols = len(work[0]) if n_rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(n_rows):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return work, pivots


def rank(rows: Mat) -> int:
    if not rows:
        return 0
    return len(_rref(rows)[1])


def kernel_basis(rows: Mat, n_cols: Optional[int] = None) -> List[Vec]:
    """Basis of the right null space of the matrix."""
    if not rows:
        return [
            [Fraction(1 if i == j else 0) for j in range(n_cols or 0)]
            for i in range(n_cols or 0)
        ]
    n_cols = len(rows[0])
    reduced, pivots = _rref(rows)
    free_cols = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -reduced[r][free]
        basis.append(vec)
    return basis


def kernel_dim(rows: Mat, n_cols: Optional[int] = None) -> int:
    """cols - rank, computed exactly."""
    if not rows:
        return n_cols or 0
    return len(rows[0]) - rank(rows)


@dataclass
class LinearSolveResult:
    """Outcome of solving A x = b exactly.

    kind is one of "unique", "parametric", "inconsistent".  For solvable
    systems `solution` is one exact solution and `kernel` spans the null
    space (empty for unique solutions).
    """

    kind: str
    solution: Optional[Vec] = None
    kernel: List[Vec] = field(default_factory=list)


def linear_solve(a_rows: Mat, b: Vec) -> LinearSolveResult:
    if len(a_rows) != len(b):
        raise ValueError("dimension mismatch between matrix and rhs")
    if not a_rows:
        kind = "unique" if not b else "parametric"
        return LinearSolveResult(kind=kind, solution=[], kernel=[])
    n_cols = len(a_rows[0])
    augmented = [list(row) + [rhs] for row, rhs in zip(a_rows, b)]
    reduced, pivots = _rref(augmented)
    if n_cols in pivots:
        return LinearSolveResult(kind="inconsistent")
    solution = [Fraction(0)] * n_cols
    for r, c in enumerate(pivots):
        solution[c] = reduced[r][n_cols]
    kernel = kernel_basis(a_rows)
    if kernel:
        return LinearSolveResult(kind="parametric", solution=solution,
                                 kernel=kernel)
    return LinearSolveResult(kind="unique", solution=solution, kernel=[])


def mat_det(a: Mat) -> Fraction:
    """Exact determinant by Gaussian elimination with rational pivots."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    work = [list(row) for row in a]
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if work[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            work[k], work[pivot_row] = work[pivot_row], work[k]
            det = -det
        det *= work[k][k]
        inv = 1 / work[k][k]
        for i in range(k + 1, n):
            if work[i][k] != 0:
                factor = work[i][k] * inv
                work[i] = [x - factor * y for x, y in zip(work[i], work[k])]
    return det


def mat_charpoly_coeffs(a: Mat) -> List[Fraction]:
    """Coefficients c_1..c_N with det(tI - A) = t^N - c_1 t^(N-1) + ...

    Faddeev-LeVerrier recurrence; c_i equals the trace of the i-th exterior
    power of A.  All divisions are by integers and exact over Fraction.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("characteristic polynomial of a non-square matrix")
    coeffs: List[Fraction] = []
    work = mat_identity(n)
    for k in range(1, n + 1):
        work = mat_mul(a, work)
        sign = 1 if k % 2 else -1
        c = sign * sum((work[i][i] for i in range(n)), Fraction(0)) / k
        coeffs.append(c)
        for i in range(n):
            work[i][i] -= sign * c
    return coeffs


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product of Fraction matrices."""
    if not a or not b:
        return []
    ar, ac, br, bc = len(a), len(a[0]), len(b), len(b[0])
    out = [[Fraction(0)] * (ac * bc) for _ in range(ar * br)]
    for i in range(ar):
        for j in range(ac):
            if a[i][j] == 0:
                continue
            for k in range(br):
                for l in range(bc):
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l]
    return out


def kron_sum(x1: Mat, x2: Mat) -> Mat:
    """x1 (x) I + I (x) x2 for square numeric inputs."""
    n, m = len(x1), len(x2)
    return mat_add(kron(x1, mat_identity(m)), kron(mat_identity(n), x2))


def kron_sum3(x1: Mat, x2: Mat, x3: Mat) -> Mat:
    i2 = mat_identity(2)
    return mat_add(
        mat_add(kron(kron(x1, i2), i2), kron(kron(i2, x2), i2)),
        kron(kron(i2, i2), x3),
    )
