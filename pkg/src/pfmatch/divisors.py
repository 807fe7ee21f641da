"""Divisor polynomials on both sides of the duality, and their comparison.

A side.  For each case the two-sheeted locus of the orbit space is derived
end to end from the matrix model: put the first component in diagonal
normal form with eigenvalue variables, compute the invariant coordinates of
the symbolic slice point, solve the resulting linear system for the
products u_j*v_j (the coefficient matrix is made of hatted elementary
symmetric polynomials, inverted in closed form by an alternating
Vandermonde matrix with a hard diagonality assertion), multiply the cleared
numerators, check symmetry in the eigenvalue family, and rewrite in the
invariant coordinates.  The product vanishes exactly where some u_j*v_j
does, which is where two orbit classes share invariants.

B side.  The dual-representation matrix is evaluated on diagonalized
eigenvalue variables (the determinant is conjugation invariant, so this
loses nothing), its determinant is expanded, and the result is rewritten in
the same invariant coordinates.  For the non-polarized cases the Pfaffian
is the exact square root of that determinant; for the polarized cases the
determinant on the distinguished summand already is the Pfaffian, up to the
canonical sign normalization.

The verdict compares the A-side ground truth with the B-side Pfaffian up to
a nonzero rational unit (divisors are cut out up to scale), and reconciles
the closed-form displays against both, recording every sign-variant or
index-range resolution that was needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .liealg import (
    Case,
    DIAGONAL,
    FRIEDBERG_JACQUET,
    GROSS_PRASAD,
    JACQUET_ICHINO,
    ODD_GL,
    POLARIZED,
    RANKIN_SELBERG,
    TRIVIAL_DUAL,
    build_hperp,
    charpoly_coeffs,
    dual_git_coords,
    dual_rep_matrix,
    git_coords,
)
from .poly import (
    MultiPoly,
    PolyError,
    PolyMatrix,
    VarContext,
    poly_det,
    render_poly,
    unit_multiple,
)
from .rng import SplitMix64
from .symfun import (
    elem_expand,
    family_names,
    is_symmetric,
    monomial_sym,
    partitions_in_rect,
)

EXACT_MATCH = "exact-match"
MATCH_UP_TO_UNIT = "match-up-to-unit"
MATCH_WITH_CORRECTIONS = "match-with-corrections"
MISMATCH = "mismatch"


class EliminationError(PolyError):
    """The symbolic linear system did not reduce as the chart guarantees."""


class NotAPerfectSquareError(PolyError):
    """The dual determinant failed to be a square (would refute the claim)."""

    def __init__(self, case: Case, witness: MultiPoly):
        self.case = case
        self.witness = witness
        super().__init__(
            f"dual determinant for {case.label()} is not a perfect square: "
            f"{render_poly(witness)}"
        )


@dataclass
class MatchVerdict:
    status: str
    unit: Optional[Fraction] = None
    corrections: List[str] = field(default_factory=list)


@dataclass
class DivisorReport:
    case: Case
    aside_groundtruth: MultiPoly
    bside_det: MultiPoly
    bside_pfaffian: MultiPoly
    aside_closed: Optional[MultiPoly] = None
    bside_closed: Optional[MultiPoly] = None
    notes: List[str] = field(default_factory=list)


# -- helpers ------------------------------------------------------------------


def _vars(ctx: VarContext, names: Sequence[str]) -> List[MultiPoly]:
    return [MultiPoly.var(ctx, name) for name in names]


def _split_uv_linear(eq: MultiPoly, u_names: Sequence[str],
                     v_names: Sequence[str]) -> Tuple[List[MultiPoly],
                                                      MultiPoly]:
    """Write eq = sum_j coeff_j * (u_j v_j) + free, asserting that shape.

    Every monomial must carry matching u_j and v_j exponents (orbit
    invariance under the torus scaling u_j -> z u_j, v_j -> v_j / z), and at
    most one product to the first power (linearity on the chart).
    """
    ctx = eq.ctx
    u_idx = [ctx.index[name] for name in u_names]
    v_idx = [ctx.index[name] for name in v_names]
    coeffs = [MultiPoly.zero(ctx) for _ in u_names]
    free = MultiPoly.zero(ctx)
    for exps, coeff in eq.terms.items():
        e_u = [exps[i] for i in u_idx]
        e_v = [exps[i] for i in v_idx]
        if e_u != e_v:
            raise EliminationError(
                f"monomial not balanced in u, v exponents: {exps}"
            )
        weight = sum(e_u)
        stripped = list(exps)
        for i in u_idx + v_idx:
            stripped[i] = 0
        term = MultiPoly(ctx, {tuple(stripped): coeff})
        if weight == 0:
            free = free + term
        elif weight == 1:
            coeffs[e_u.index(1)] = coeffs[e_u.index(1)] + term
        else:
            raise EliminationError("system is not linear in the products")
    return coeffs, free


def _alternating_vandermonde(values: List[MultiPoly]) -> List[List[MultiPoly]]:
    """Rows (x_j^(n-1), -x_j^(n-2), ..., (-1)^(n-1)); left-inverts the
    hatted-elementary-symmetric matrix up to its nonzero diagonal."""
    n = len(values)
    rows = []
    for x in values:
        row = []
        for i in range(n):
            entry = x ** (n - 1 - i)
            row.append(entry if i % 2 == 0 else -entry)
        rows.append(row)
    return rows


@dataclass
class SolvedSystem:
    """Symbolic solution data: diagonal[j] * (u_j v_j) == cleared[j]."""

    cleared: List[MultiPoly]
    diagonal: List[MultiPoly]


def _solve_products_symbolically(system_matrix: List[List[MultiPoly]],
                                 rhs: List[MultiPoly],
                                 vandermonde_values: List[MultiPoly]) -> SolvedSystem:
    """Cleared numerators and diagonal pivots of the product solutions.

    Rows are first sign-normalized so every coefficient matrix entry has
    positive leading coefficient; the alternating Vandermonde rows must then
    diagonalize the system exactly (asserted), and row j of V * rhs equals
    (nonzero diagonal factor) * (u_j v_j).
    """
    n = len(system_matrix)
    norm_matrix = []
    norm_rhs = []
    for row, r in zip(system_matrix, rhs):
        lead_entry = next((e for e in row if not e.is_zero()), None)
        if lead_entry is None:
            raise EliminationError("zero row in elimination system")
        sign = 1 if lead_entry.lead()[1] > 0 else -1
        norm_matrix.append([e * sign for e in row])
        norm_rhs.append(r * sign)
    vrows = _alternating_vandermonde(vandermonde_values)
    diagonal = []
    for j in range(n):
        for k in range(n):
            acc = MultiPoly.zero(norm_matrix[0][0].ctx)
            for i in range(n):
                acc = acc + vrows[j][i] * norm_matrix[i][k]
            if j != k and not acc.is_zero():
                raise EliminationError(
                    "alternating Vandermonde failed to diagonalize the system"
                )
            if j == k:
                if acc.is_zero():
                    raise EliminationError("elimination system singular")
                diagonal.append(acc)
    cleared = []
    for j in range(n):
        acc = MultiPoly.zero(norm_rhs[0].ctx)
        for i in range(n):
            acc = acc + vrows[j][i] * norm_rhs[i]
        cleared.append(acc)
    return SolvedSystem(cleared=cleared, diagonal=diagonal)


@lru_cache(maxsize=None)
def solved_system(case: Case) -> SolvedSystem:
    system = elimination_system(case)
    return _solve_products_symbolically(
        system.matrix, system.rhs, system.vandermonde_values
    )


def _halve_exponents(p: MultiPoly, source: VarContext,
                     target: VarContext) -> MultiPoly:
    """Rewrite a polynomial even in every variable through squared variables."""
    if len(source) != len(target):
        raise PolyError("halving needs matching variable counts")
    terms = {}
    for exps, coeff in p.terms.items():
        if any(e % 2 for e in exps):
            raise PolyError("polynomial is not even in every variable")
        terms[tuple(e // 2 for e in exps)] = coeff
    return MultiPoly(target, terms)


def _signed_coordinate_images(ctx: VarContext, prefix: str, n: int,
                              alternate: bool) -> List[MultiPoly]:
    """Images for elementary symmetric values: e_k -> (+-1)^k * prefix_k."""
    images = []
    for k in range(1, n + 1):
        img = MultiPoly.var(ctx, f"{prefix}{k}")
        if alternate and k % 2 == 1:
            img = -img
        images.append(img)
    return images


# -- elimination systems -------------------------------------------------------


@dataclass
class EliminationSystem:
    """Cached symbolic data of one case's chart elimination."""

    case: Case
    work_ctx: VarContext
    matrix: List[List[MultiPoly]]  # coefficient of w_j in equation i
    rhs: List[MultiPoly]  # right-hand side in eigenvalue and b variables
    vandermonde_values: List[MultiPoly]
    notes: List[str] = field(default_factory=list)

    def eval_numeric(self, assignment: dict) -> tuple:
        a_num = [[entry.eval(assignment) for entry in row]
                 for row in self.matrix]
        r_num = [entry.eval(assignment) for entry in self.rhs]
        return a_num, r_num


@lru_cache(maxsize=None)
def elimination_system(case: Case) -> EliminationSystem:
    if case.kind == RANKIN_SELBERG:
        return _rankin_selberg_system(case.n)
    if case.kind == GROSS_PRASAD:
        return _gross_prasad_system(case.n)
    raise EliminationError(f"no product elimination for {case.kind!r}")


def _rankin_selberg_system(n: int) -> EliminationSystem:
    als = family_names("al", n)
    us = family_names("u", n)
    vs = family_names("v", n)
    bs = tuple(f"b{j}" for j in range(1, n + 2))
    ctx = VarContext(als + us + vs + ("d",) + bs)
    case = Case(RANKIN_SELBERG, n)
    pt = build_hperp(case, ctx=ctx,
                     alpha=_vars(ctx, als), u=_vars(ctx, us),
                     v=_vars(ctx, vs), d=MultiPoly.var(ctx, "d"))
    coords = git_coords(pt)
    # first coordinate of the second component fixes the corner entry:
    # b1 = d - a1  =>  d = b1 + a1
    a1 = coords.a[0]
    d_image = MultiPoly.var(ctx, "b1") + a1
    images = {name: MultiPoly.var(ctx, name) for name in ctx.names}
    images["d"] = d_image
    matrix: List[List[MultiPoly]] = []
    rhs: List[MultiPoly] = []
    for i in range(2, n + 2):
        expr = coords.b[i - 1].substitute(images)
        coeff_row, free = _split_uv_linear(expr, us, vs)
        # b_i (variable) = free + sum coeff * w  =>  sum coeff * w = b_i - free
        matrix.append(coeff_row)
        rhs.append(MultiPoly.var(ctx, f"b{i}") - free)
    vander = _vars(ctx, als)
    return EliminationSystem(
        case=case, work_ctx=ctx, matrix=matrix, rhs=rhs,
        vandermonde_values=vander,
        notes=[
            "corner entry eliminated through b1 = d - a1",
            "coefficient matrix realizes hatted elementary symmetric "
            "polynomials e_(i-2); the displayed inline recursion with "
            "index i-1 fails the n=1 check and is not used",
        ],
    )


def _gross_prasad_system(n: int) -> EliminationSystem:
    als = family_names("al", n)
    us = family_names("u", n)
    vs = family_names("v", n)
    bs = tuple(f"b{j}" for j in range(1, n + 1))
    ctx = VarContext(als + us + vs + bs)
    case = Case(GROSS_PRASAD, n)
    pt = build_hperp(case, ctx=ctx,
                     alpha=_vars(ctx, als), u=_vars(ctx, us),
                     v=_vars(ctx, vs))
    coords = git_coords(pt)
    matrix: List[List[MultiPoly]] = []
    rhs: List[MultiPoly] = []
    for i in range(1, n + 1):
        expr = coords.b[i - 1]
        coeff_row, free = _split_uv_linear(expr, us, vs)
        matrix.append(coeff_row)
        rhs.append(MultiPoly.var(ctx, f"b{i}") - free)
    vander = [MultiPoly.var(ctx, name) ** 2 for name in als]
    return EliminationSystem(
        case=case, work_ctx=ctx, matrix=matrix, rhs=rhs,
        vandermonde_values=vander,
        notes=[
            "coefficient matrix carries the factor 2 from the paired "
            "eigenvalues; hatted elementary symmetric polynomials in the "
            "squared eigenvalue variables",
        ],
    )


# -- A side ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def a_side_ground_truth(case: Case) -> MultiPoly:
    """Divisor polynomial in invariant coordinates, derived by elimination."""
    kind, n = case.kind, case.n
    coord_ctx = case.coordinate_context()
    if kind in TRIVIAL_DUAL:
        return MultiPoly.const(coord_ctx, 1)
    if kind == FRIEDBERG_JACQUET:
        _friedberg_jacquet_certificates(n)
        return MultiPoly.var(coord_ctx, f"a{n}")
    if kind == JACQUET_ICHINO:
        return _jacquet_ichino_ground_truth()
    system = elimination_system(case)
    solved = solved_system(case)
    product = MultiPoly.const(system.work_ctx, 1)
    for factor in solved.cleared:
        product = product * factor
    if not is_symmetric(product, "al", n):
        raise EliminationError(
            "cleared product is not symmetric in the eigenvalue family"
        )
    if kind == RANKIN_SELBERG:
        e_images = _signed_coordinate_images(coord_ctx, "a", n,
                                             alternate=False)
        inert = {f"b{j}": MultiPoly.var(coord_ctx, f"b{j}")
                 for j in range(1, n + 2)}
        inert.update({name: MultiPoly.zero(coord_ctx)
                      for name in family_names("u", n)})
        inert.update({name: MultiPoly.zero(coord_ctx)
                      for name in family_names("v", n)})
        inert["d"] = MultiPoly.zero(coord_ctx)
        return elem_expand(product, "al", n, e_images, inert)
    # gross-prasad: the product is even in each eigenvalue variable; halve
    # into squared-eigenvalue variables, then expand with the sign
    # dictionary e_k(squares) = (-1)^k * a_k
    ss = family_names("s", n)
    mixed = VarContext(ss + tuple(f"b{j}" for j in range(1, n + 1)))
    reordered = _reorder_for_halving(product, family_names("al", n),
                                     family_names("u", n) +
                                     family_names("v", n), mixed, ss)
    e_images = _signed_coordinate_images(coord_ctx, "a", n, alternate=True)
    inert = {f"b{j}": MultiPoly.var(coord_ctx, f"b{j}")
             for j in range(1, n + 1)}
    return elem_expand(reordered, "s", n, e_images, inert)


def _reorder_for_halving(p: MultiPoly, halved_names: Sequence[str],
                         dropped_names: Sequence[str],
                         target_ctx: VarContext,
                         new_names: Sequence[str]) -> MultiPoly:
    """Halve the exponents of selected variables and drop unused ones.

    The dropped variables must not occur; the remaining variables keep their
    names and the halved ones are renamed positionally to new_names.
    """
    ctx = p.ctx
    halved_idx = {ctx.index[name]: new for name, new in
                  zip(halved_names, new_names)}
    dropped_idx = {ctx.index[name] for name in dropped_names}
    terms: Dict[tuple, Fraction] = {}
    for exps, coeff in p.terms.items():
        new_exps = [0] * len(target_ctx)
        for pos, e in enumerate(exps):
            if e == 0:
                continue
            if pos in dropped_idx:
                raise PolyError("unexpected chart variable survives")
            if pos in halved_idx:
                if e % 2:
                    raise PolyError("polynomial not even in eigenvalues")
                new_exps[target_ctx.index[halved_idx[pos]]] = e // 2
            else:
                name = ctx.names[pos]
                new_exps[target_ctx.index[name]] = e
        key = tuple(new_exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return MultiPoly(target_ctx, terms)


@lru_cache(maxsize=None)
def _jacquet_ichino_ground_truth() -> MultiPoly:
    """Chart elimination for the rank-one triple case, certificate checked.

    On the chart where the first determinant coordinate is invertible the
    off-diagonal product b*c decides orbit doubling; clearing denominators
    turns b*c = 0 into a polynomial in the three determinant coordinates.
    """
    work = VarContext(("w", "a", "b", "c"))
    w, a, b, c = _vars(work, ("w", "a", "b", "c"))
    case = Case(JACQUET_ICHINO)
    pt = build_hperp(case, ctx=work, w=w, a=a, b=b, c=c)
    d1, d2, d3 = git_coords(pt).ichino_d
    # the difference d3 - d1 - d2 collapses to the cross term -2 a w
    cross = d3 - d1 - d2
    if not (cross + 2 * a * w).is_zero():
        raise EliminationError("cross-term identity failed")
    # 4 d1 (b c) = (d3 - d1 - d2)^2 - 4 d1 d2, checked exactly:
    lhs = 4 * d1 * (b * c)
    rhs = cross * cross - 4 * d1 * d2
    if not (lhs - rhs).is_zero():
        raise EliminationError("cleared product certificate failed")
    ctx = case.coordinate_context()
    dd1, dd2, dd3 = _vars(ctx, ("d1", "d2", "d3"))
    return (dd3 - dd1 - dd2) ** 2 - 4 * dd1 * dd2


@lru_cache(maxsize=None)
def _friedberg_jacquet_certificates(n: int) -> bool:
    """Structural checks behind taking the top coefficient as the divisor.

    The generic block matrix has purely even characteristic coefficients
    (eigenvalues come in opposite pairs) and its top coefficient equals the
    product of the block determinants, so the top coefficient vanishes
    exactly where an eigenvalue hits zero.  For n = 1 this is the hyperbolic
    plane model: a1 = -(b*c), whose vanishing is the doubled-origin locus.
    """
    b_names = tuple(f"p{i}{j}" for i in range(1, n + 1)
                    for j in range(1, n + 1))
    c_names = tuple(f"q{i}{j}" for i in range(1, n + 1)
                    for j in range(1, n + 1))
    ctx = VarContext(b_names + c_names)
    b_rows = [[MultiPoly.var(ctx, f"p{i}{j}") for j in range(1, n + 1)]
              for i in range(1, n + 1)]
    c_rows = [[MultiPoly.var(ctx, f"q{i}{j}") for j in range(1, n + 1)]
              for i in range(1, n + 1)]
    pt = build_hperp(Case(FRIEDBERG_JACQUET, n), ctx=ctx, B=b_rows, C=c_rows)
    coords = git_coords(pt)  # raises if an odd coefficient survives
    top = coords.a[-1]
    det_product = poly_det(PolyMatrix.from_rows(ctx, b_rows)) * \
        poly_det(PolyMatrix.from_rows(ctx, c_rows))
    if unit_multiple(top, det_product) is None:
        raise EliminationError("top coefficient is not the block determinant")
    return True


@lru_cache(maxsize=None)
def a_side_closed_form(case: Case) -> Tuple[MultiPoly, List[str]]:
    """The displayed partition-sum form of the divisor, plus resolutions.

    The displays leave two things open: the rank-one-corrected factor uses
    either (a1 + b1) or (b1 - a1), and the partition rectangle for the
    orthogonal case is printed inconsistently.  Both are settled empirically
    against the elimination ground truth and the choices are recorded.
    """
    kind, n = case.kind, case.n
    notes: List[str] = []
    if kind == JACQUET_ICHINO:
        return _jacquet_ichino_ground_truth(), [
            "closed form identical to the chart elimination by construction"
        ]
    if kind == RANKIN_SELBERG:
        truth = a_side_ground_truth(case)
        candidates = []
        for variant in ("a1+b1", "b1-a1"):
            candidates.append(
                (variant, _rankin_selberg_partition_sum(n, variant))
            )
        for variant, poly in candidates:
            unit = unit_multiple(truth, poly)
            if unit is not None:
                notes.append(
                    f"rank-one factor resolved to ({variant}); ground truth "
                    f"= {unit} * closed form"
                )
                other = [v for v, _ in candidates if v != variant][0]
                notes.append(f"variant ({other}) does not match and is "
                             "rejected")
                return poly, notes
        raise EliminationError("no closed-form variant matches ground truth")
    if kind == GROSS_PRASAD:
        truth = a_side_ground_truth(case)
        poly = _gross_prasad_partition_sum(n, cols=n - 1)
        unit = unit_multiple(truth, poly)
        if unit is None:
            raise EliminationError("orthogonal closed form does not match")
        wide = _gross_prasad_partition_sum(n, cols=n)
        if wide == poly:
            notes.append(
                "partition rectangle ranges n x (n-1) and n x n agree: "
                "parts of size n contribute the zero factor b0 - a0"
            )
        notes.append(f"ground truth = {unit} * closed form")
        return poly, notes
    raise PolyError(f"no closed form for {kind!r}")


def _rankin_selberg_partition_sum(n: int, variant: str) -> MultiPoly:
    """sum over partitions inside n x (n-1) of m_lambda(alpha) times the
    product of shifted coordinate factors, expanded into coordinates."""
    case = Case(RANKIN_SELBERG, n)
    coord_ctx = case.coordinate_context()
    a = {i: MultiPoly.var(coord_ctx, f"a{i}") for i in range(1, n + 1)}
    a[0] = MultiPoly.const(coord_ctx, 1)
    a[n + 1] = MultiPoly.zero(coord_ctx)
    b = {j: MultiPoly.var(coord_ctx, f"b{j}") for j in range(1, n + 2)}
    b[0] = MultiPoly.const(coord_ctx, 1)
    shift = (a[1] + b[1]) if variant == "a1+b1" else (b[1] - a[1])
    factors = {}
    for m in range(0, n):
        factor = b[n + 1 - m] + (a[n + 1 - m] - shift * a[n - m]) * \
            (1 if (n - m) % 2 == 0 else -1)
        factors[m] = factor
    return _partition_product_sum(case, n, n - 1, factors, squared_family=False)


def _gross_prasad_partition_sum(n: int, cols: int) -> MultiPoly:
    case = Case(GROSS_PRASAD, n)
    coord_ctx = case.coordinate_context()
    a = {i: MultiPoly.var(coord_ctx, f"a{i}") for i in range(1, n + 1)}
    a[0] = MultiPoly.const(coord_ctx, 1)
    b = {j: MultiPoly.var(coord_ctx, f"b{j}") for j in range(1, n + 1)}
    b[0] = MultiPoly.const(coord_ctx, 1)
    factors = {}
    for m in range(0, cols + 1):
        if n - m < 0:
            continue
        factors[m] = b[n - m] - a[n - m]
    return _partition_product_sum(case, n, cols, factors, squared_family=True)


def _partition_product_sum(case: Case, rows: int, cols: int,
                           factors: Dict[int, MultiPoly],
                           squared_family: bool) -> MultiPoly:
    """sum_(lambda in rows x cols) m_lambda(eigenvalues) * prod factors[part].

    The monomial symmetric coefficient is expanded into the coordinate
    variables through the elementary symmetric images (with the alternating
    sign dictionary when the eigenvalue family enters through its squares).
    """
    n = case.n
    coord_ctx = case.coordinate_context()
    total = MultiPoly.zero(coord_ctx)
    e_images = _signed_coordinate_images(coord_ctx, "a", n,
                                         alternate=squared_family)
    for lam in partitions_in_rect(rows, cols):
        padded = tuple(lam) + (0,) * (rows - len(lam))
        product = MultiPoly.const(coord_ctx, 1)
        for part in padded:
            product = product * factors[part]
        if product.is_zero():
            continue
        m_poly = monomial_sym(lam, "s", n).poly
        m_expanded = elem_expand(m_poly, "s", n, e_images, {})
        total = total + m_expanded * product
    return total


# -- B side ---------------------------------------------------------------------


def _diag_poly(ctx: VarContext, names: Sequence[MultiPoly]) -> PolyMatrix:
    size = len(names)
    zero = MultiPoly.zero(ctx)
    rows = [[names[i] if i == j else zero for j in range(size)]
            for i in range(size)]
    return PolyMatrix.from_rows(ctx, rows)


def _paired_diag(ctx: VarContext, names: Sequence[str]) -> PolyMatrix:
    values = _vars(ctx, names)
    return _diag_poly(ctx, values + [-value for value in values])


@lru_cache(maxsize=None)
def b_side_det(case: Case) -> MultiPoly:
    """Determinant of the dual-representation matrix in invariant coords.

    Computed on diagonalized eigenvalue variables (conjugation invariance
    makes this lossless; random_invariance_check certifies it on full
    matrices), then expanded into the coordinate variables.
    """
    kind, n = case.kind, case.n
    coord_ctx = case.coordinate_context()
    if kind in TRIVIAL_DUAL:
        return MultiPoly.const(coord_ctx, 1)
    if kind == FRIEDBERG_JACQUET:
        ctx = VarContext(family_names("al", n))
        matrix = _paired_diag(ctx, family_names("al", n))
        det = poly_det(dual_rep_matrix(case, [matrix]))
        ss = family_names("s", n)
        s_ctx = VarContext(ss)
        halved = _halve_exponents(det, ctx, s_ctx)
        e_images = _signed_coordinate_images(coord_ctx, "a", n, alternate=True)
        return elem_expand(halved, "s", n, e_images, {})
    if kind == RANKIN_SELBERG:
        als = family_names("al", n)
        bes = family_names("be", n + 1)
        ctx = VarContext(als + bes)
        x1 = _diag_poly(ctx, _vars(ctx, als))
        x2 = _diag_poly(ctx, _vars(ctx, bes))
        det = poly_det(dual_rep_matrix(case, [x1, x2]))
        # expand the second family first, then the first
        mid_ctx = VarContext(als + tuple(f"b{j}" for j in range(1, n + 2)))
        be_images = [MultiPoly.var(mid_ctx, f"b{j}") for j in range(1, n + 2)]
        inert = {name: MultiPoly.var(mid_ctx, name) for name in als}
        stage = elem_expand(det, "be", n + 1, be_images, inert)
        a_images = _signed_coordinate_images(coord_ctx, "a", n,
                                             alternate=False)
        inert2 = {f"b{j}": MultiPoly.var(coord_ctx, f"b{j}")
                  for j in range(1, n + 2)}
        return elem_expand(stage, "al", n, a_images, inert2)
    if kind == GROSS_PRASAD:
        als = family_names("al", n)
        bes = family_names("be", n)
        ctx = VarContext(als + bes)
        x1 = _paired_diag(ctx, als)
        x2 = _paired_diag(ctx, bes)
        det = poly_det(dual_rep_matrix(case, [x1, x2]))
        ss = family_names("s", n)
        ts = family_names("t", n)
        sq_ctx = VarContext(ss + ts)
        halved = _halve_exponents(det, ctx, sq_ctx)
        mid_ctx = VarContext(ss + tuple(f"b{j}" for j in range(1, n + 1)))
        t_images = _signed_coordinate_images(mid_ctx, "b", n, alternate=True)
        inert = {name: MultiPoly.var(mid_ctx, name) for name in ss}
        stage = elem_expand(halved, "t", n, t_images, inert)
        a_images = _signed_coordinate_images(coord_ctx, "a", n, alternate=True)
        inert2 = {f"b{j}": MultiPoly.var(coord_ctx, f"b{j}")
                  for j in range(1, n + 1)}
        return elem_expand(stage, "s", n, a_images, inert2)
    if kind == JACQUET_ICHINO:
        aas = family_names("aa", 3)
        ctx = VarContext(aas)
        mats = [
            _diag_poly(ctx, [MultiPoly.var(ctx, name),
                             -MultiPoly.var(ctx, name)])
            for name in aas
        ]
        det = poly_det(dual_rep_matrix(case, mats))
        s_ctx = VarContext(family_names("s", 3))
        halved = _halve_exponents(det, ctx, s_ctx)
        images = {f"s{j}": -MultiPoly.var(coord_ctx, f"d{j}")
                  for j in range(1, 4)}
        return halved.substitute(images)
    raise PolyError(f"unknown case kind {kind!r}")


@lru_cache(maxsize=None)
def b_side_pfaffian(case: Case) -> MultiPoly:
    """The dual-side divisor polynomial whose square is the full determinant.

    Non-polarized cases take the exact square root of b_side_det (failure
    would refute the squareness claim and raises NotAPerfectSquareError);
    polarized cases already computed the determinant on the distinguished
    summand, which is the Pfaffian, normalized here to positive leading
    coefficient.  Trivial-dual cases return 1.
    """
    det = b_side_det(case)
    if case.kind in TRIVIAL_DUAL:
        return det
    if case.kind in POLARIZED:
        if det.is_zero():
            raise NotAPerfectSquareError(case, det)
        return det if det.lead()[1] > 0 else -det
    root = det.sqrt()
    if root is None:
        raise NotAPerfectSquareError(case, det)
    return root


@lru_cache(maxsize=None)
def b_side_closed_form(case: Case) -> Tuple[MultiPoly, List[str]]:
    """Displayed partition-sum form of the dual-side divisor polynomial."""
    kind, n = case.kind, case.n
    coord_ctx = case.coordinate_context()
    notes: List[str] = []
    if kind == RANKIN_SELBERG:
        b = {j: MultiPoly.var(coord_ctx, f"b{j}") for j in range(1, n + 2)}
        b[0] = MultiPoly.const(coord_ctx, 1)
        e_images = _signed_coordinate_images(coord_ctx, "a", n,
                                             alternate=False)
        total = MultiPoly.zero(coord_ctx)
        for lam in partitions_in_rect(n, n + 1):
            padded = tuple(lam) + (0,) * (n - len(lam))
            product = MultiPoly.const(coord_ctx, 1)
            for part in padded:
                product = product * b[part]
            complement = tuple(
                sorted((n + 1 - part for part in padded), reverse=True)
            )
            m_poly = monomial_sym(complement, "s", n).poly
            total = total + elem_expand(m_poly, "s", n, e_images, {}) * product
        notes.append("sum over the n x (n+1) rectangle with reversed "
                     "complement exponents")
        return total, notes
    if kind == GROSS_PRASAD:
        b = {j: MultiPoly.var(coord_ctx, f"b{j}") for j in range(1, n + 1)}
        b[0] = MultiPoly.const(coord_ctx, 1)
        e_images = _signed_coordinate_images(coord_ctx, "a", n,
                                             alternate=True)
        total = MultiPoly.zero(coord_ctx)
        for lam in partitions_in_rect(n, n):
            padded = tuple(lam) + (0,) * (n - len(lam))
            product = MultiPoly.const(coord_ctx, 1)
            for part in padded:
                product = product * b[part]
            complement = tuple(
                sorted((n - part for part in padded), reverse=True)
            )
            m_poly = monomial_sym(complement, "s", n).poly
            total = total + elem_expand(m_poly, "s", n, e_images, {}) * product
        notes.append(
            "monomial coefficients read as functions of the squared "
            "eigenvalues (partition n - lambda in the squares, equivalently "
            "doubled exponents in the eigenvalues themselves)"
        )
        return total, notes
    raise PolyError(f"no dual-side closed form for {kind!r}")


# -- verdict ---------------------------------------------------------------------


def verify_matching(case: Case) -> Tuple[MatchVerdict, DivisorReport]:
    """Compare the two divisor polynomials and reconcile the closed forms."""
    truth = a_side_ground_truth(case)
    det = b_side_det(case)
    pfaffian = b_side_pfaffian(case)
    notes: List[str] = []
    corrections: List[str] = []
    aside_closed = None
    bside_closed = None
    if case.kind in (RANKIN_SELBERG, GROSS_PRASAD, JACQUET_ICHINO):
        aside_closed, closed_notes = a_side_closed_form(case)
        corrections.extend(closed_notes)
        unit_closed = unit_multiple(truth, aside_closed)
        if unit_closed is None:
            corrections.append("a-side closed form FAILS to match ground "
                               "truth")
    if case.kind in (RANKIN_SELBERG, GROSS_PRASAD):
        bside_closed, closed_notes = b_side_closed_form(case)
        corrections.extend(closed_notes)
        unit_closed = unit_multiple(pfaffian, bside_closed)
        if unit_closed is None:
            corrections.append("b-side closed form FAILS to match the "
                               "expanded determinant")
        elif unit_closed != 1:
            corrections.append(
                f"b-side determinant expansion = {unit_closed} * closed form"
            )
    if case.kind in POLARIZED:
        notes.append("polarized dual representation: the Pfaffian is the "
                     "determinant on the distinguished summand")
    elif case.kind not in TRIVIAL_DUAL:
        notes.append("Pfaffian obtained as the exact square root of the "
                     "full dual determinant")
    unit = unit_multiple(truth, pfaffian)
    if unit is None:
        status = MISMATCH
    elif unit == 1:
        status = EXACT_MATCH
    else:
        status = MATCH_UP_TO_UNIT
    report = DivisorReport(
        case=case,
        aside_groundtruth=truth,
        bside_det=det,
        bside_pfaffian=pfaffian,
        aside_closed=aside_closed,
        bside_closed=bside_closed,
        notes=notes,
    )
    verdict = MatchVerdict(status=status, unit=unit, corrections=corrections)
    return verdict, report


# -- full-matrix spot checks ------------------------------------------------------


@dataclass
class InvarianceReport:
    case: Case
    trials: int
    failures: int
    note: str = ""


def _sample_dual_matrices(case: Case, rng: SplitMix64, bound: int = 9) -> list:
    """Random integer elements of the dual-side Lie algebras."""
    kind, n = case.kind, case.n

    def draw() -> Fraction:
        return Fraction(rng.randint(-bound, bound))

    if kind == RANKIN_SELBERG:
        x1 = [[draw() for _ in range(n)] for _ in range(n)]
        x2 = [[draw() for _ in range(n + 1)] for _ in range(n + 1)]
        return [x1, x2]
    if kind == JACQUET_ICHINO:
        out = []
        for _ in range(3):
            a, b, c = draw(), draw(), draw()
            out.append([[a, b], [c, -a]])
        return out
    if kind == FRIEDBERG_JACQUET:
        return [_sample_sp_split(n, rng, bound)]
    if kind == GROSS_PRASAD:
        return [_sample_so_split(n, rng, bound), _sample_sp_split(n, rng, bound)]
    raise PolyError(f"no dual-side sampler for {kind!r}")


def _sample_sp_split(n: int, rng: SplitMix64, bound: int) -> linalg.Mat:
    """[[A, B], [C, -A^t]] with symmetric B, C (form [[0, I], [-I, 0]])."""
    a = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)]
         for _ in range(n)]
    b = [[Fraction(0)] * n for _ in range(n)]
    c = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            b[i][j] = b[j][i] = Fraction(rng.randint(-bound, bound))
            c[i][j] = c[j][i] = Fraction(rng.randint(-bound, bound))
    top = [a[i] + b[i] for i in range(n)]
    bottom = [c[i] + [-a[j][i] for j in range(n)] for i in range(n)]
    return top + bottom


def _sample_so_split(n: int, rng: SplitMix64, bound: int) -> linalg.Mat:
    """[[A, B], [C, -A^t]] with skew B, C (form [[0, I], [I, 0]])."""
    a = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)]
         for _ in range(n)]
    b = [[Fraction(0)] * n for _ in range(n)]
    c = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            value = Fraction(rng.randint(-bound, bound))
            b[i][j], b[j][i] = value, -value
            value = Fraction(rng.randint(-bound, bound))
            c[i][j], c[j][i] = value, -value
    top = [a[i] + b[i] for i in range(n)]
    bottom = [c[i] + [-a[j][i] for j in range(n)] for i in range(n)]
    return top + bottom


def random_invariance_check(case: Case, seed: int = 0,
                            trials: int = 100) -> InvarianceReport:
    """det(dual matrix at a random integer point) == coordinate polynomial.

    This certifies the diagonalized-variables reduction used by b_side_det:
    the expanded coordinate polynomial agrees with the honest full-matrix
    determinant at random non-diagonal points, exactly.
    """
    if case.kind in TRIVIAL_DUAL:
        return InvarianceReport(case=case, trials=0, failures=0,
                                note="trivial dual representation")
    det_poly = b_side_det(case)
    rng = SplitMix64(seed)
    failures = 0
    for _ in range(trials):
        mats = _sample_dual_matrices(case, rng)
        full = dual_rep_matrix(case, mats)
        direct = linalg.mat_det(full)
        coords = dual_git_coords(case, mats)
        value = det_poly.eval(coords.as_assignment(case))
        if direct != value:
            failures += 1
    return InvarianceReport(case=case, trials=trials, failures=failures)
