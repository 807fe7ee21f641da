"""Matrix models for the six implemented spherical cases.

Each case tag names a pair (group, subgroup) whose invariant theory the rest
of the package exercises.  This module builds explicit matrix realizations
of the subgroup-orthogonal slice for each case, computes characteristic /
invariant coordinates, and provides the Kronecker-product machinery and
Pfaffians used on the dual side.

Conventions fixed here and used everywhere else:

* characteristic coefficients follow det(tI - М) = t^N - c_1 t^(N-1)
  + c_2 t^(N-2) - ...; c_i is the trace of the i-th exterior power.
* the even orthogonal form is [[0, I], [I, 0]] and the odd orthogonal form
  is [[0, I, 0], [I, 0, 0], [0, 0, 1]]; the symplectic form is
  [[0, I], [-I, 0]].
* an element x of the split even orthogonal algebra has Pfaffian
  Pf(J x) where J = [[0, I], [I, 0]]; J x is honestly skew and the base
  change is the same for every call, which pins all Pfaffian signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

from . import linalg
from .linalg import Mat
from .poly import (
    MultiPoly,
    PolyError,
    PolyMatrix,
    VarContext,
)

DIAGONAL = "diagonal"
FRIEDBERG_JACQUET = "friedberg-jacquet"
ODD_GL = "odd-gl"
RANKIN_SELBERG = "rankin-selberg"
JACQUET_ICHINO = "jacquet-ichino"
GROSS_PRASAD = "gross-prasad"

CASE_KINDS = (
    DIAGONAL,
    FRIEDBERG_JACQUET,
    ODD_GL,
    RANKIN_SELBERG,
    JACQUET_ICHINO,
    GROSS_PRASAD,
)

# cases whose dual symplectic representation splits as a sum of a
# representation and its dual; for these the B-side determinant is taken on
# the distinguished summand
POLARIZED = (FRIEDBERG_JACQUET, RANKIN_SELBERG)
TRIVIAL_DUAL = (DIAGONAL, ODD_GL)


class StructureError(PolyError):
    """A constructor input violates the case's structural invariants."""


@dataclass(frozen=True)
class Case:
    kind: str
    n: int = 1

    def __post_init__(self):
        if self.kind not in CASE_KINDS:
            raise StructureError(f"unknown case kind {self.kind!r}")
        if self.n < 1:
            raise StructureError("case parameter n must be >= 1")
        if self.kind == JACQUET_ICHINO and self.n != 1:
            raise StructureError("jacquet-ichino has no free rank parameter")

    def label(self) -> str:
        if self.kind in (JACQUET_ICHINO, DIAGONAL):
            return self.kind
        return f"{self.kind} n={self.n}"

    def coordinate_names(self) -> tuple:
        """Names of the invariant coordinates, in canonical context order."""
        n = self.n
        if self.kind == DIAGONAL:
            return ("a1", "b1")
        if self.kind == FRIEDBERG_JACQUET:
            return tuple(f"a{i}" for i in range(1, n + 1))
        if self.kind == ODD_GL:
            return tuple(f"a{i}" for i in range(1, n + 1))
        if self.kind == RANKIN_SELBERG:
            return tuple(f"a{i}" for i in range(1, n + 1)) + tuple(
                f"b{j}" for j in range(1, n + 2)
            )
        if self.kind == JACQUET_ICHINO:
            return ("d1", "d2", "d3")
        return tuple(f"a{i}" for i in range(1, n + 1)) + tuple(
            f"b{j}" for j in range(1, n + 1)
        )

    def coordinate_context(self) -> VarContext:
        return VarContext(self.coordinate_names())


Entry = Union[int, Fraction, MultiPoly]


def _entries_numeric(values) -> bool:
    for value in values:
        if isinstance(value, MultiPoly):
            return False
    return True


def _flatten(rows) -> list:
    return [value for row in rows for value in row]


def _to_poly_matrix(rows, ctx: VarContext) -> PolyMatrix:
    return PolyMatrix.from_rows(ctx, rows)


def _to_mat(rows) -> Mat:
    return [[Fraction(v) for v in row] for row in rows]


MatrixLike = Union[Mat, PolyMatrix]


def _shape(m: MatrixLike) -> tuple:
    if isinstance(m, PolyMatrix):
        return m.rows, m.cols
    return len(m), len(m[0]) if m else 0


def _entry(m: MatrixLike, i: int, j: int):
    if isinstance(m, PolyMatrix):
        return m[i, j]
    return m[i][j]


def matrix_is_numeric(m: MatrixLike) -> bool:
    return not isinstance(m, PolyMatrix)


# -- characteristic coefficients ---------------------------------------------


def charpoly_coeffs(m: MatrixLike) -> list:
    """c_1..c_N of det(tI - M) = t^N - c_1 t^(N-1) + c_2 t^(N-2) - ...

    Faddeev-LeVerrier recurrence.  Works for numeric (Fraction) and
    polynomial matrices alike; all divisions are by integers and exact.
    """
    if matrix_is_numeric(m):
        return linalg.mat_charpoly_coeffs(m)
    if m.rows != m.cols:
        raise PolyError("characteristic polynomial of a non-square matrix")
    n = m.rows
    ctx = m.ctx
    coeffs: List[MultiPoly] = []
    work = PolyMatrix.identity(ctx, n)
    for k in range(1, n + 1):
        work = m * work
        sign = Fraction(1 if k % 2 else -1)
        c = work.trace() * (sign / k)
        coeffs.append(c)
        work = work - PolyMatrix.identity(ctx, n).scale(c * sign)
    return coeffs


# -- Kronecker machinery ------------------------------------------------------


def kronecker_product(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.ctx != b.ctx:
        raise PolyError("Kronecker factors must share a context")
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            for j in range(a.cols):
                for l in range(b.cols):
                    out.append(a[i, j] * b[k, l])
    return PolyMatrix(a.rows * b.rows, a.cols * b.cols, a.ctx, out)


def kronecker_sum(x1: PolyMatrix, x2: PolyMatrix) -> PolyMatrix:
    """x1 (x) I_m + I_n (x) x2 (the action on a tensor product)."""
    if x1.rows != x1.cols or x2.rows != x2.cols:
        raise PolyError("Kronecker sum needs square inputs")
    ctx = x1.ctx
    return kronecker_product(x1, PolyMatrix.identity(ctx, x2.rows)) + \
        kronecker_product(PolyMatrix.identity(ctx, x1.rows), x2)


def kronecker_sum3(x1: PolyMatrix, x2: PolyMatrix,
                   x3: PolyMatrix) -> PolyMatrix:
    """x1 (x) I (x) I + I (x) x2 (x) I + I (x) I (x) x3 on 2x2 inputs."""
    for x in (x1, x2, x3):
        if (x.rows, x.cols) != (2, 2):
            raise PolyError("three-factor Kronecker sum needs 2x2 inputs")
    ctx = x1.ctx
    i2 = PolyMatrix.identity(ctx, 2)
    return (
        kronecker_product(kronecker_product(x1, i2), i2)
        + kronecker_product(kronecker_product(i2, x2), i2)
        + kronecker_product(kronecker_product(i2, i2), x3)
    )


# -- Pfaffians ----------------------------------------------------------------


def _pfaffian_skew_poly(m: PolyMatrix) -> MultiPoly:
    n = m.rows
    if n % 2:
        return MultiPoly.zero(m.ctx)
    if n == 0:
        return MultiPoly.const(m.ctx, 1)

    index = list(range(n))

    def rec(active: tuple) -> MultiPoly:
        if not active:
            return MultiPoly.const(m.ctx, 1)
        first = active[0]
        rest = active[1:]
        total = MultiPoly.zero(m.ctx)
        for pos, j in enumerate(rest):
            entry = m[first, j]
            if entry.is_zero():
                continue
            remaining = tuple(k for k in rest if k != j)
            term = entry * rec(remaining)
            total = total + (term if pos % 2 == 0 else -term)
        return total

    return rec(tuple(index))


def _pfaffian_skew_q(m: Mat) -> Fraction:
    n = len(m)
    if n % 2:
        return Fraction(0)
    if n == 0:
        return Fraction(1)

    def rec(active: tuple) -> Fraction:
        if not active:
            return Fraction(1)
        first = active[0]
        rest = active[1:]
        total = Fraction(0)
        for pos, j in enumerate(rest):
            entry = m[first][j]
            if entry == 0:
                continue
            remaining = tuple(k for k in rest if k != j)
            term = entry * rec(remaining)
            total += term if pos % 2 == 0 else -term
        return total

    return rec(tuple(range(n)))


def _split_form_matrix_q(n: int) -> Mat:
    out = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        out[i][n + i] = Fraction(1)
        out[n + i][i] = Fraction(1)
    return out


def skew_pfaffian(m: MatrixLike, form: str = "standard",
                  n: Optional[int] = None):
    """Pfaffian of a skew matrix; Pf^2 = det.

    form = "standard": m itself must satisfy m^T = -m.
    form = "split": m lies in the even orthogonal algebra for the form
    [[0, I], [I, 0]]; the fixed base change J*m (which is then skew) is taken
    first, so signs are reproducible across runs.
    """
    rows, cols = _shape(m)
    if rows != cols:
        raise PolyError("Pfaffian of a non-square matrix")
    if form == "split":
        if rows % 2:
            raise StructureError("split form needs even size")
        half = rows // 2
        if n is not None and n != half:
            raise StructureError("split form size mismatch")
        if matrix_is_numeric(m):
            j = _split_form_matrix_q(half)
            m = linalg.mat_mul(j, m)
        else:
            j_rows = [
                [1 if (i < half and jj == half + i) or
                      (i >= half and jj == i - half) else 0
                 for jj in range(rows)]
                for i in range(rows)
            ]
            m = PolyMatrix.from_rows(m.ctx, j_rows) * m
    elif form != "standard":
        raise StructureError(f"unknown Pfaffian form {form!r}")
    # skewness check
    for i in range(rows):
        for jj in range(i, rows):
            a, b = _entry(m, i, jj), _entry(m, jj, i)
            bad = (a != -b) if matrix_is_numeric(m) else not (a + b).is_zero()
            if bad:
                raise StructureError(
                    f"matrix not skew for the declared form at ({i},{jj})"
                )
    if matrix_is_numeric(m):
        return _pfaffian_skew_q(m)
    return _pfaffian_skew_poly(m)


# -- slice points -------------------------------------------------------------


@dataclass
class HPerpPoint:
    """A point of the subgroup-orthogonal slice for one case.

    matrices maps component names ("x1", "x2", "x3" or "x") to either
    Fraction matrices (numeric points) or PolyMatrix (symbolic points).
    params keeps the structured inputs the point was built from.
    """

    case: Case
    matrices: Dict[str, MatrixLike]
    params: Dict[str, object]

    def is_numeric(self) -> bool:
        return all(matrix_is_numeric(m) for m in self.matrices.values())


@dataclass
class GitCoords:
    """Invariant coordinates of a slice point (or dual-side pair)."""

    a: list
    b: list
    pfaffian_pn: Optional[object] = None
    ichino_d: Optional[tuple] = None

    def as_assignment(self, case: Case) -> dict:
        """Mapping coordinate name -> value, matching coordinate_names."""
        if case.kind == JACQUET_ICHINO:
            return {f"d{j + 1}": self.ichino_d[j] for j in range(3)}
        out = {f"a{i + 1}": value for i, value in enumerate(self.a)}
        for j, value in enumerate(self.b):
            out[f"b{j + 1}"] = value
        return out


def _require_skew(rows, name: str) -> None:
    size = len(rows)
    for i in range(size):
        for j in range(size):
            a, b = rows[i][j], rows[j][i]
            if isinstance(a, MultiPoly) or isinstance(b, MultiPoly):
                a = a if isinstance(a, MultiPoly) else MultiPoly.const(b.ctx, a)
                b = b if isinstance(b, MultiPoly) else MultiPoly.const(a.ctx, b)
                if not (a + b).is_zero():
                    raise StructureError(f"block {name} is not skew")
            elif Fraction(a) != -Fraction(b):
                raise StructureError(f"block {name} is not skew")


def _block(rows_list) -> list:
    """Assemble a block matrix from a grid of row-lists."""
    out = []
    for band in rows_list:
        height = len(band[0])
        for r in range(height):
            row = []
            for blockpart in band:
                row.extend(blockpart[r])
            out.append(row)
    return out


def _neg_scalar(value):
    return -value if isinstance(value, MultiPoly) else -Fraction(value)


def _neg(rows) -> list:
    return [[_neg_scalar(v) for v in row] for row in rows]


def _transpose_rows(rows) -> list:
    return [list(col) for col in zip(*rows)] if rows else []


def _zeros(r, c) -> list:
    return [[0] * c for _ in range(r)]


def _diag(values) -> list:
    n = len(values)
    out = _zeros(n, n)
    for i, v in enumerate(values):
        out[i][i] = v
    return out


def _finish(case: Case, named_rows: Dict[str, list], params: dict,
            ctx: Optional[VarContext]) -> HPerpPoint:
    numeric = all(_entries_numeric(_flatten(rows))
                  for rows in named_rows.values())
    matrices: Dict[str, MatrixLike] = {}
    for name, rows in named_rows.items():
        if numeric:
            matrices[name] = _to_mat(rows)
        else:
            if ctx is None:
                raise StructureError("symbolic parameters need a context")
            matrices[name] = _to_poly_matrix(rows, ctx)
    return HPerpPoint(case=case, matrices=matrices, params=params)


def build_hperp(case: Case, ctx: Optional[VarContext] = None,
                **params) -> HPerpPoint:
    """Assemble and validate a slice point from structured parameters.

    Accepted parameters by case kind:

    * diagonal: x (scalar); the point is (x, -x) for the rank-one model.
    * friedberg-jacquet: B, C (n x n); x = [[0, B], [C, 0]].
    * odd-gl: B (n x (n+1)), C ((n+1) x n); x = [[0, B], [C, 0]].
    * rankin-selberg: either A (n x n) or alpha (length n, A = -diag(alpha)),
      plus u, v (length n) and d (scalar); x1 = -A, x2 = [[A, u], [v^t, d]].
    * jacquet-ichino: w, a, b, c scalars; x1 = diag(w, -w),
      x2 = [[a, b], [c, -a]], x3 = -x1 - x2.
    * gross-prasad: A (n x n) or alpha (A = diag(alpha)); skew B, C
      (default 0); u, v (length n); x1 = [[-A, -B], [-C, A^t]],
      x2 = [[A, B, u], [C, -A^t, v], [-v^t, -u^t, 0]].
    """
    kind, n = case.kind, case.n
    if kind == DIAGONAL:
        x = params["x"]
        return _finish(case, {"x1": [[x]], "x2": [[_neg_scalar(x)]]},
                       params, ctx)
    if kind in (FRIEDBERG_JACQUET, ODD_GL):
        b_rows, c_rows = params["B"], params["C"]
        top = n
        bottom = (n + 1) if kind == ODD_GL else n
        if (len(b_rows), len(b_rows[0])) != (top, bottom):
            raise StructureError(f"block B must be {top}x{bottom}")
        if (len(c_rows), len(c_rows[0])) != (bottom, top):
            raise StructureError(f"block C must be {bottom}x{top}")
        x = _block([
            [_zeros(top, top), b_rows],
            [c_rows, _zeros(bottom, bottom)],
        ])
        return _finish(case, {"x": x}, params, ctx)
    if kind == RANKIN_SELBERG:
        if "A" in params:
            a_rows = params["A"]
        else:
            a_rows = _diag([-value for value in params["alpha"]])
        u, v, d = list(params["u"]), list(params["v"]), params["d"]
        if len(a_rows) != n or len(u) != n or len(v) != n:
            raise StructureError("rankin-selberg blocks must have length n")
        x1 = _neg(a_rows)
        x2 = [list(row) + [u[i]] for i, row in enumerate(a_rows)]
        x2.append(list(v) + [d])
        return _finish(case, {"x1": x1, "x2": x2}, params, ctx)
    if kind == JACQUET_ICHINO:
        if "x1" in params:
            x1_rows, x2_rows = params["x1"], params["x2"]
            for name, rows in (("x1", x1_rows), ("x2", x2_rows)):
                trace = rows[0][0] + rows[1][1]
                bad = not trace.is_zero() if isinstance(trace, MultiPoly) \
                    else Fraction(trace) != 0
                if bad:
                    raise StructureError(f"{name} must be traceless")
        else:
            w, a, b, c = params["w"], params["a"], params["b"], params["c"]
            x1_rows = [[w, 0], [0, _neg_scalar(w)]]
            x2_rows = [[a, b], [c, _neg_scalar(a)]]
        x3_rows = [
            [_neg_scalar(x1_rows[i][j] + x2_rows[i][j]) for j in range(2)]
            for i in range(2)
        ]
        return _finish(case, {"x1": x1_rows, "x2": x2_rows, "x3": x3_rows},
                       params, ctx)
    if kind == GROSS_PRASAD:
        if "A" in params:
            a_rows = params["A"]
        else:
            a_rows = _diag(list(params["alpha"]))
        b_rows = params.get("B") or _zeros(n, n)
        c_rows = params.get("C") or _zeros(n, n)
        _require_skew(b_rows, "B")
        _require_skew(c_rows, "C")
        u, v = list(params["u"]), list(params["v"])
        if len(u) != n or len(v) != n:
            raise StructureError("vectors u, v must have length n")
        at = _transpose_rows(a_rows)
        x1 = _block([
            [_neg(a_rows), _neg(b_rows)],
            [_neg(c_rows), at],
        ])
        x2 = [list(a_rows[i]) + list(b_rows[i]) + [u[i]] for i in range(n)]
        x2 += [list(c_rows[i]) + _neg([at[i]])[0] + [v[i]] for i in range(n)]
        x2.append([_neg_scalar(val) for val in (list(v) + list(u))] + [0])
        return _finish(case, {"x1": x1, "x2": x2}, params, ctx)
    raise StructureError(f"unknown case kind {kind!r}")


# -- invariant coordinates -----------------------------------------------------


def _assert_vanishing(values, what: str) -> None:
    for value in values:
        bad = not value.is_zero() if isinstance(value, MultiPoly) \
            else value != 0
        if bad:
            raise StructureError(f"{what} expected to vanish, got {value}")


def git_coords(pt: HPerpPoint) -> GitCoords:
    """Case-appropriate invariant coordinates of a slice point."""
    kind, n = pt.case.kind, pt.case.n
    if kind == DIAGONAL:
        return GitCoords(a=charpoly_coeffs(pt.matrices["x1"]),
                         b=charpoly_coeffs(pt.matrices["x2"]))
    if kind == FRIEDBERG_JACQUET:
        coeffs = charpoly_coeffs(pt.matrices["x"])
        _assert_vanishing(coeffs[0::2], "odd characteristic coefficients")
        return GitCoords(a=coeffs[1::2], b=[])
    if kind == ODD_GL:
        coeffs = charpoly_coeffs(pt.matrices["x"])
        _assert_vanishing(coeffs[0::2], "odd characteristic coefficients")
        return GitCoords(a=coeffs[1::2], b=[])
    if kind == RANKIN_SELBERG:
        return GitCoords(a=charpoly_coeffs(pt.matrices["x1"]),
                         b=charpoly_coeffs(pt.matrices["x2"]))
    if kind == JACQUET_ICHINO:
        dets = []
        for name in ("x1", "x2", "x3"):
            coeffs = charpoly_coeffs(pt.matrices[name])
            _assert_vanishing(coeffs[:1], "trace of a traceless component")
            dets.append(coeffs[1])
        return GitCoords(a=[], b=[], ichino_d=tuple(dets))
    if kind == GROSS_PRASAD:
        c1 = charpoly_coeffs(pt.matrices["x1"])
        c2 = charpoly_coeffs(pt.matrices["x2"])
        _assert_vanishing(c1[0::2], "odd coefficients of the even component")
        _assert_vanishing(c2[0::2], "odd coefficients of the odd component")
        pf = skew_pfaffian(pt.matrices["x1"], form="split")
        return GitCoords(a=c1[1::2], b=c2[1::2], pfaffian_pn=pf)
    raise StructureError(f"unknown case kind {kind!r}")


def dual_git_coords(case: Case, mats: Sequence[MatrixLike]) -> GitCoords:
    """Invariant coordinates of a dual-side tuple of Lie algebra elements.

    The identification with the slice-side coordinates is coefficient-wise:
    the same signed characteristic convention on both sides.
    """
    kind, n = case.kind, case.n
    if kind == RANKIN_SELBERG:
        return GitCoords(a=charpoly_coeffs(mats[0]),
                         b=charpoly_coeffs(mats[1]))
    if kind == JACQUET_ICHINO:
        dets = []
        for m in mats:
            coeffs = charpoly_coeffs(m)
            _assert_vanishing(coeffs[:1], "trace of a traceless element")
            dets.append(coeffs[1])
        return GitCoords(a=[], b=[], ichino_d=tuple(dets))
    if kind == GROSS_PRASAD:
        c1 = charpoly_coeffs(mats[0])
        c2 = charpoly_coeffs(mats[1])
        _assert_vanishing(c1[0::2], "odd coefficients in the orthogonal factor")
        _assert_vanishing(c2[0::2], "odd coefficients in the symplectic factor")
        return GitCoords(a=c1[1::2], b=c2[1::2])
    if kind == FRIEDBERG_JACQUET:
        coeffs = charpoly_coeffs(mats[0])
        _assert_vanishing(coeffs[0::2], "odd characteristic coefficients")
        return GitCoords(a=coeffs[1::2], b=[])
    raise StructureError(f"no dual-side coordinates for {kind!r}")


def dual_rep_matrix(case: Case, mats: Sequence[MatrixLike]) -> MatrixLike:
    """Matrix of the dual-representation action at the given element(s).

    Polarized cases return the action on the distinguished summand
    (friedberg-jacquet: the element itself; rankin-selberg: the two-factor
    Kronecker sum).  Non-polarized cases return the full action
    (jacquet-ichino: the three-factor 8x8 sum; gross-prasad: the 4n^2 sum).
    Trivial-dual cases return the empty 0x0 matrix.
    """
    kind = case.kind
    if kind in TRIVIAL_DUAL:
        return []
    numeric = all(matrix_is_numeric(m) for m in mats)
    if kind == FRIEDBERG_JACQUET:
        return mats[0]
    if kind == RANKIN_SELBERG or kind == GROSS_PRASAD:
        if numeric:
            return linalg.kron_sum(mats[0], mats[1])
        return kronecker_sum(mats[0], mats[1])
    if kind == JACQUET_ICHINO:
        if numeric:
            return linalg.kron_sum3(mats[0], mats[1], mats[2])
        return kronecker_sum3(mats[0], mats[1], mats[2])
    raise StructureError(f"unknown case kind {kind!r}")
