"""The acceptance grid: every exit criterion as a callable check.

Each criterion returns (ok, detail).  The same list drives the pytest
acceptance module and the command-line self test, so "the suite is green"
and "selftest exits 0" are the same statement.  All comparisons are exact;
the only latitude anywhere is an explicitly reported nonzero rational unit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

from . import divisors, fibers, symfun
from .centralizer import action_spec, stabilizer_dim
from .liealg import (
    Case,
    DIAGONAL,
    FRIEDBERG_JACQUET,
    GROSS_PRASAD,
    JACQUET_ICHINO,
    ODD_GL,
    RANKIN_SELBERG,
    build_hperp,
)
from .poly import (
    MultiPoly,
    PolyMatrix,
    VarContext,
    poly_det,
    poly_det_cofactor,
    render_poly,
    unit_multiple,
)
from .rng import SplitMix64
from .symfun import (
    elem_expand,
    elementary_sym,
    family_context,
    newton_correction_pairs,
    newton_residual,
    partitions_in_rect,
)

ACCEPTANCE_GRID = (
    Case(DIAGONAL),
    Case(ODD_GL, 1),
    Case(ODD_GL, 2),
    Case(FRIEDBERG_JACQUET, 1),
    Case(FRIEDBERG_JACQUET, 2),
    Case(RANKIN_SELBERG, 1),
    Case(RANKIN_SELBERG, 2),
    Case(RANKIN_SELBERG, 3),
    Case(JACQUET_ICHINO,),
    Case(GROSS_PRASAD, 1),
    Case(GROSS_PRASAD, 2),
)

FIBER_GRID = (
    Case(DIAGONAL),
    Case(ODD_GL, 1),
    Case(FRIEDBERG_JACQUET, 1),
    Case(RANKIN_SELBERG, 1),
    Case(RANKIN_SELBERG, 2),
    Case(RANKIN_SELBERG, 3),
    Case(JACQUET_ICHINO,),
    Case(GROSS_PRASAD, 1),
    Case(GROSS_PRASAD, 2),
)

INVARIANCE_GRID = (
    Case(FRIEDBERG_JACQUET, 1),
    Case(FRIEDBERG_JACQUET, 2),
    Case(RANKIN_SELBERG, 1),
    Case(RANKIN_SELBERG, 2),
    Case(RANKIN_SELBERG, 3),
    Case(JACQUET_ICHINO,),
    Case(GROSS_PRASAD, 1),
    Case(GROSS_PRASAD, 2),
)


@dataclass
class Criterion:
    ident: str
    description: str
    limit_seconds: float
    run: Callable[[], Tuple[bool, str]]


def _criterion_ichino_pfaffian() -> Tuple[bool, str]:
    case = Case(JACQUET_ICHINO)
    det = divisors.b_side_det(case)
    ctx = case.coordinate_context()
    d1, d2, d3 = (MultiPoly.var(ctx, f"d{j}") for j in (1, 2, 3))
    target = (
        d1 ** 2 + d2 ** 2 + d3 ** 2
        - 2 * (d1 * d2 + d1 * d3 + d2 * d3)
    )
    ok = det == target * target
    return ok, f"dual determinant {'==' if ok else '!='} square of "\
               f"{render_poly(target)}"


def _criterion_ichino_match() -> Tuple[bool, str]:
    verdict, _ = divisors.verify_matching(Case(JACQUET_ICHINO))
    ok = verdict.status == divisors.EXACT_MATCH
    return ok, f"status={verdict.status} unit={verdict.unit}"


def _criterion_rankin_selberg() -> Tuple[bool, str]:
    details = []
    ok = True
    for n in (1, 2, 3):
        case = Case(RANKIN_SELBERG, n)
        verdict, report = divisors.verify_matching(case)
        if verdict.status not in (divisors.EXACT_MATCH,
                                  divisors.MATCH_UP_TO_UNIT):
            ok = False
        four = [
            report.aside_groundtruth,
            report.aside_closed,
            report.bside_det,
            report.bside_closed,
        ]
        units = []
        for other in four[1:]:
            unit = unit_multiple(four[0], other)
            units.append(unit)
            if unit is None:
                ok = False
        details.append(f"n={n}:{verdict.status} units={units}")
    return ok, "; ".join(details)


def _criterion_gross_prasad() -> Tuple[bool, str]:
    details = []
    ok = True
    for n in (1, 2):
        case = Case(GROSS_PRASAD, n)
        det = divisors.b_side_det(case)
        root = det.sqrt()
        if root is None:
            return False, f"n={n}: dual determinant is not a perfect square"
        verdict, report = divisors.verify_matching(case)
        unit = unit_multiple(report.aside_groundtruth, report.bside_pfaffian)
        if unit is None:
            ok = False
        recorded = any("rectangle" in c for c in verdict.corrections) and \
            any("squared eigenvalues" in c for c in verdict.corrections)
        if not recorded:
            ok = False
        details.append(f"n={n}: square ok, unit={unit}, resolutions recorded")
    return ok, "; ".join(details)


def _criterion_friedberg_jacquet() -> Tuple[bool, str]:
    details = []
    ok = True
    for n in (1, 2):
        case = Case(FRIEDBERG_JACQUET, n)
        verdict, report = divisors.verify_matching(case)
        if report.bside_pfaffian != report.bside_det and \
                report.bside_pfaffian != -report.bside_det:
            ok = False
        top = MultiPoly.var(case.coordinate_context(), f"a{n}")
        if unit_multiple(report.aside_groundtruth, top) is None:
            ok = False
        details.append(f"n={n}:{verdict.status}")
    origin = fibers.base_point(Case(FRIEDBERG_JACQUET, 1), a=[0])
    away = fibers.base_point(Case(FRIEDBERG_JACQUET, 1), a=[5])
    two = fibers.count_orbit_classes(origin)
    one = fibers.count_orbit_classes(away)
    if (two, one) != (2, 1):
        ok = False
    details.append(f"orbits over origin={two}, elsewhere={one}")
    return ok, "; ".join(details)


def _criterion_trivial_cases() -> Tuple[bool, str]:
    ok = True
    details = []
    for case in (Case(DIAGONAL), Case(ODD_GL, 1), Case(ODD_GL, 2)):
        verdict, report = divisors.verify_matching(case)
        good = (
            verdict.status == divisors.EXACT_MATCH
            and report.aside_groundtruth == 1
            and report.bside_pfaffian == 1
        )
        ok = ok and good
        details.append(f"{case.label()}:{verdict.status}")
    return ok, "; ".join(details)


def newton_sweep(max_part: int = 5, max_n: int = 5):
    """All (mu, n) with parts <= max_part, length <= n-1, n <= max_n."""
    for n in range(2, max_n + 1):
        for mu in partitions_in_rect(n - 1, max_part):
            yield mu, n


def _criterion_newton() -> Tuple[bool, str]:
    checked = 0
    nonzero = []
    pair_count = 0
    for mu, n in newton_sweep():
        residual = newton_residual(mu, n, corrected=True)
        checked += 1
        if not residual.is_zero():
            nonzero.append((mu, n))
        pair_count += len(newton_correction_pairs(mu, n))
    ok = not nonzero
    return ok, (
        f"{checked} corrected identities all zero; "
        f"{pair_count} (mu,k) pairs need a multiplicity factor != 1"
        if ok else f"nonzero residuals at {nonzero[:3]}"
    )


def _criterion_centralizer() -> Tuple[bool, str]:
    rng = SplitMix64(2024)
    exceptions = 0
    checked = 0
    for n in (1, 2, 3):
        case = Case(RANKIN_SELBERG, n)
        spec = action_spec(case)
        for _ in range(200):
            alpha = [Fraction(x) for x in rng.distinct_ints(n, -20, 20)]
            u, v = [], []
            zero_pairs = 0
            for _ in range(n):
                mode = rng.randint(0, 3)
                if mode == 0:
                    u.append(Fraction(0))
                    v.append(Fraction(0))
                    zero_pairs += 1
                elif mode == 1:
                    u.append(Fraction(0))
                    v.append(Fraction(rng.nonzero_randint(-20, 20)))
                elif mode == 2:
                    u.append(Fraction(rng.nonzero_randint(-20, 20)))
                    v.append(Fraction(0))
                else:
                    u.append(Fraction(rng.nonzero_randint(-20, 20)))
                    v.append(Fraction(rng.nonzero_randint(-20, 20)))
            pt = build_hperp(case, alpha=alpha, u=u, v=v,
                             d=Fraction(rng.randint(-20, 20)))
            checked += 1
            if stabilizer_dim(spec, pt) != zero_pairs:
                exceptions += 1
    ok = exceptions == 0
    return ok, f"{checked} points, {exceptions} exceptions"


def _criterion_invariance() -> Tuple[bool, str]:
    total_failures = 0
    pieces = []
    for case in INVARIANCE_GRID:
        report = divisors.random_invariance_check(case, seed=11, trials=100)
        total_failures += report.failures
        pieces.append(f"{case.label()}:{report.failures}/{report.trials}")
    return total_failures == 0, "; ".join(pieces)


def _criterion_fibers() -> Tuple[bool, str]:
    total = 0
    pieces = []
    for case in FIBER_GRID:
        report = fibers.fiber_divisor_consistency(case, seed=5, trials=50)
        total += report.violations
        pieces.append(f"{case.label()}:{report.violations}/{report.trials}")
    return total == 0, "; ".join(pieces)


def _random_poly(ctx: VarContext, rng: SplitMix64, terms: int = 4,
                 max_exp: int = 3) -> MultiPoly:
    data = {}
    for _ in range(terms):
        exps = tuple(rng.randint(0, max_exp) for _ in range(len(ctx)))
        data[exps] = Fraction(rng.randint(-6, 6))
    return MultiPoly(ctx, data)


def _criterion_kernel_algebra() -> Tuple[bool, str]:
    rng = SplitMix64(99)
    ctx = VarContext(("x", "y"))
    det_ok = 0
    for _ in range(100):
        size = rng.randint(1, 4)
        rows = [[_random_poly(ctx, rng, terms=2, max_exp=1)
                 for _ in range(size)] for _ in range(size)]
        matrix = PolyMatrix.from_rows(ctx, rows)
        if poly_det(matrix) == poly_det_cofactor(matrix):
            det_ok += 1
    expand_ok = 0
    for _ in range(100):
        n = rng.randint(1, 4)
        e_ctx = family_context("e", n)
        e_poly = _random_poly(e_ctx, rng, terms=3, max_exp=2)
        alpha_ctx = family_context("al", n)
        images = {
            f"e{k}": elementary_sym(k, "al", n, ctx=alpha_ctx).poly
            for k in range(1, n + 1)
        }
        symmetric = e_poly.substitute(images)
        e_images = [MultiPoly.var(e_ctx, f"e{k}") for k in range(1, n + 1)]
        recovered = elem_expand(symmetric, "al", n, e_images, {})
        if recovered == e_poly:
            expand_ok += 1
    sqrt_ok = 0
    for _ in range(100):
        p = _random_poly(ctx, rng, terms=3, max_exp=2)
        root = (p * p).sqrt()
        if p.is_zero():
            good = root is not None and root.is_zero()
        else:
            good = root is not None and (root == p or root == -p) and \
                root.lead()[1] > 0
        if good:
            sqrt_ok += 1
    ok = det_ok == 100 and expand_ok == 100 and sqrt_ok == 100
    return ok, (
        f"determinants {det_ok}/100, basis roundtrips {expand_ok}/100, "
        f"square roots {sqrt_ok}/100"
    )


CRITERIA: List[Criterion] = [
    Criterion("C1", "triple-product dual determinant is the expected square",
              5.0, _criterion_ichino_pfaffian),
    Criterion("C2", "triple-product divisors match exactly",
              5.0, _criterion_ichino_match),
    Criterion("C3", "tensor-pair case matches for n=1,2,3 with all four "
                    "polynomials pairwise consistent",
              120.0, _criterion_rankin_selberg),
    Criterion("C4", "orthogonal-pair case: perfect square, unit match, "
                    "resolutions recorded (n=1,2)",
              120.0, _criterion_gross_prasad),
    Criterion("C5", "block-ratio case: Pfaffian is the summand determinant, "
                    "divisor is the top coefficient, origin fiber doubles",
              10.0, _criterion_friedberg_jacquet),
    Criterion("C6", "trivial-dual cases have both sides equal to 1",
              1.0, _criterion_trivial_cases),
    Criterion("C7", "corrected Newton identities vanish for all parts<=5, "
                    "n<=5",
              30.0, _criterion_newton),
    Criterion("C8", "stabilizer dimension counts vanishing coordinate pairs "
                    "(600 random points)",
              30.0, _criterion_centralizer),
    Criterion("C9", "full-matrix determinants agree with coordinate "
                    "polynomials (100 trials per case)",
              60.0, _criterion_invariance),
    Criterion("C10", "orbit doubling iff divisor vanishing (50 samples per "
                     "case)",
              60.0, _criterion_fibers),
    Criterion("C11", "kernel algebra oracles (determinant, basis roundtrip, "
                     "square root)",
              30.0, _criterion_kernel_algebra),
]


@dataclass
class CriterionResult:
    ident: str
    description: str
    ok: bool
    detail: str
    seconds: float
    within_limit: bool


def run_criterion(criterion: Criterion) -> CriterionResult:
    start = time.monotonic()
    ok, detail = criterion.run()
    elapsed = time.monotonic() - start
    return CriterionResult(
        ident=criterion.ident,
        description=criterion.description,
        ok=ok,
        detail=detail,
        seconds=elapsed,
        within_limit=elapsed < criterion.limit_seconds,
    )


def run_all() -> List[CriterionResult]:
    return [run_criterion(criterion) for criterion in CRITERIA]
