"""Numeric fiber analysis over rational base points.

Given invariant coordinates on the regular-semisimple chart of a case, the
linear elimination system recovers the products u_j * v_j exactly; the
number of orbit classes in the fiber is 2^(number of vanishing products)
(each vanishing product splits into the two coordinate axes), and the
divisor polynomial vanishes at the point iff some product vanishes.  The
consistency driver samples mixed on/off points and certifies

    orbit_count >= 2  <=>  divisor polynomial evaluates to zero

with zero tolerance.  Points where two or more products vanish lie in
codimension two and are excluded from sampling on purpose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg
from .divisors import (
    EliminationError,
    a_side_ground_truth,
    elimination_system,
    solved_system,
)
from .liealg import (
    Case,
    DIAGONAL,
    FRIEDBERG_JACQUET,
    GROSS_PRASAD,
    JACQUET_ICHINO,
    ODD_GL,
    RANKIN_SELBERG,
    StructureError,
    build_hperp,
    git_coords,
)
from .rng import SplitMix64
from .symfun import family_names


@dataclass
class BasePoint:
    """A rational point of the invariant quotient on the good chart."""

    case: Case
    alpha: List[Fraction]
    coords: Dict[str, Fraction]
    note: str = ""


@dataclass
class FiberDiagnostic:
    uv_products: List[Fraction]
    zero_indices: List[int]
    orbit_count: int
    divisor_value: Fraction


@dataclass
class FiberConsistencyReport:
    case: Case
    trials: int
    violations: int
    on_divisor_samples: int
    off_divisor_samples: int
    notes: List[str] = field(default_factory=list)


def _e_values(values: List[Fraction], k: int) -> Fraction:
    return sum(
        (prod_fr(combo) for combo in itertools.combinations(values, k)),
        Fraction(0),
    ) if k else Fraction(1)


def prod_fr(values) -> Fraction:
    out = Fraction(1)
    for value in values:
        out *= value
    return out


def base_point(case: Case, alpha: Optional[List] = None,
               b: Optional[List] = None,
               d: Optional[Tuple] = None,
               a: Optional[List] = None) -> BasePoint:
    """Assemble and validate a base point from case-appropriate data.

    rankin-selberg: alpha (distinct) and b (length n+1).
    gross-prasad: alpha (squares distinct, nonzero) and b (length n).
    jacquet-ichino: d (three values, not all zero).
    friedberg-jacquet n=1: a (the single coordinate).
    diagonal / odd-gl: a (coordinate values, unconstrained).
    """
    kind, n = case.kind, case.n
    if kind == RANKIN_SELBERG:
        alpha = [Fraction(x) for x in alpha]
        if len(set(alpha)) != n:
            raise StructureError("eigenvalues must be pairwise distinct")
        b = [Fraction(x) for x in b]
        if len(b) != n + 1:
            raise StructureError(f"need {n + 1} second-factor coordinates")
        coords = {f"a{i + 1}": _e_values(alpha, i + 1) for i in range(n)}
        coords.update({f"b{j + 1}": b[j] for j in range(n + 1)})
        return BasePoint(case, alpha, coords)
    if kind == GROSS_PRASAD:
        alpha = [Fraction(x) for x in alpha]
        squares = [x * x for x in alpha]
        if 0 in squares or len(set(squares)) != n:
            raise StructureError(
                "squared eigenvalues must be distinct and nonzero"
            )
        b = [Fraction(x) for x in b]
        if len(b) != n:
            raise StructureError(f"need {n} second-factor coordinates")
        coords = {
            f"a{i + 1}": (-1) ** (i + 1) * _e_values(squares, i + 1)
            for i in range(n)
        }
        coords.update({f"b{j + 1}": b[j] for j in range(n)})
        return BasePoint(case, alpha, coords)
    if kind == JACQUET_ICHINO:
        d = tuple(Fraction(x) for x in d)
        if len(d) != 3 or all(value == 0 for value in d):
            raise StructureError("need three determinant values, not all zero")
        coords = {f"d{j + 1}": d[j] for j in range(3)}
        return BasePoint(case, [], coords)
    if kind == FRIEDBERG_JACQUET:
        if n != 1:
            raise StructureError(
                "fiber analysis for the block-ratio case is rank one only"
            )
        coords = {"a1": Fraction(a[0])}
        return BasePoint(case, [], coords)
    if kind in (DIAGONAL, ODD_GL):
        values = [Fraction(x) for x in (a or [])]
        coords = dict(zip(case.coordinate_names(), values))
        for name in case.coordinate_names():
            coords.setdefault(name, Fraction(0))
        return BasePoint(case, [], coords)
    raise StructureError(f"unknown case kind {kind!r}")


def _chart_product_jacquet_ichino(coords: Dict[str, Fraction]) -> Tuple[Fraction, str]:
    """The off-diagonal product b*c on a chart with one coordinate invertible.

    The three determinant coordinates play symmetric roles; if the first one
    vanishes the factors are relabeled to keep the chart valid, and the
    relabeling is reported.
    """
    d = [coords["d1"], coords["d2"], coords["d3"]]
    order = [0, 1, 2]
    note = ""
    if d[0] == 0:
        pivot = next(i for i in range(3) if d[i] != 0)
        order = [pivot] + [i for i in range(3) if i != pivot]
        note = f"chart relabeled to keep d{pivot + 1} invertible"
    d1, d2, d3 = (d[i] for i in order)
    product = -d2 + (d3 - d1 - d2) ** 2 / (4 * d1)
    return product, note


def solve_uv_products(pt: BasePoint) -> List[Fraction]:
    """Exact product recovery; substitution back is verified internally."""
    case = pt.case
    kind, n = case.kind, case.n
    if kind in (DIAGONAL, ODD_GL):
        return []
    if kind == FRIEDBERG_JACQUET:
        return [-pt.coords["a1"]]
    if kind == JACQUET_ICHINO:
        product, _ = _chart_product_jacquet_ichino(pt.coords)
        return [product]
    system = elimination_system(case)
    assignment = {name: Fraction(0) for name in system.work_ctx.names}
    for i, value in enumerate(pt.alpha, start=1):
        assignment[f"al{i}"] = value
    for name, value in pt.coords.items():
        if name in assignment:
            assignment[name] = value
    matrix, rhs = system.eval_numeric(assignment)
    result = linalg.linear_solve(matrix, rhs)
    if result.kind != "unique":
        raise EliminationError(
            f"elimination system {result.kind} at this point "
            "(base point violates the chart constraints)"
        )
    products = result.solution
    _verify_roundtrip(pt, products)
    return products


def _verify_roundtrip(pt: BasePoint, products: List[Fraction]) -> None:
    """Rebuild a slice point with u_j = w_j, v_j = 1 and compare coordinates."""
    case = pt.case
    n = case.n
    ones = [Fraction(1)] * n
    if case.kind == RANKIN_SELBERG:
        d = pt.coords["b1"] + pt.coords["a1"]
        rebuilt = build_hperp(case, alpha=pt.alpha, u=products, v=ones, d=d)
        coords = git_coords(rebuilt)
        expected = [pt.coords[f"b{j}"] for j in range(1, n + 2)]
        if coords.b != expected:
            raise EliminationError("roundtrip failed to reproduce coordinates")
    elif case.kind == GROSS_PRASAD:
        rebuilt = build_hperp(case, alpha=pt.alpha, u=products, v=ones)
        coords = git_coords(rebuilt)
        expected = [pt.coords[f"b{j}"] for j in range(1, n + 1)]
        if coords.b != expected:
            raise EliminationError("roundtrip failed to reproduce coordinates")


def count_orbit_classes(pt: BasePoint) -> int:
    """2^(number of vanishing products); 1 away from the divisor."""
    products = solve_uv_products(pt)
    zeros = sum(1 for value in products if value == 0)
    return 2 ** zeros


def divisor_value(pt: BasePoint) -> Fraction:
    return a_side_ground_truth(pt.case).eval(pt.coords)


def diagnose(pt: BasePoint) -> FiberDiagnostic:
    products = solve_uv_products(pt)
    zeros = [i for i, value in enumerate(products) if value == 0]
    return FiberDiagnostic(
        uv_products=products,
        zero_indices=zeros,
        orbit_count=2 ** len(zeros),
        divisor_value=divisor_value(pt),
    )


def elimination_certificate(pt: BasePoint) -> bool:
    """divisor(pt) == product of (diagonal factor * u_j v_j), exactly.

    The diagonal factors are the evaluated pivots of the symbolically
    diagonalized system, so this ties the divisor polynomial to the product
    of recovered coordinates with no unit left unexplained.
    """
    case = pt.case
    if case.kind not in (RANKIN_SELBERG, GROSS_PRASAD):
        raise StructureError("certificate applies to the elimination cases")
    products = solve_uv_products(pt)
    solved = solved_system(case)
    system = elimination_system(case)
    assignment = {name: Fraction(0) for name in system.work_ctx.names}
    for i, value in enumerate(pt.alpha, start=1):
        assignment[f"al{i}"] = value
    for name, value in pt.coords.items():
        if name in assignment:
            assignment[name] = value
    diag_values = [entry.eval(assignment) for entry in solved.diagonal]
    expected = prod_fr(
        d * w for d, w in zip(diag_values, products)
    )
    return divisor_value(pt) == expected


def sample_point(case: Case, on_divisor: bool, rng: SplitMix64) -> BasePoint:
    """Deterministic chart sample with exactly one vanishing product (on)
    or none (off); never more than one (codimension-two exclusion)."""
    kind, n = case.kind, case.n
    if kind in (DIAGONAL, ODD_GL):
        if on_divisor:
            raise StructureError("trivial cases have an empty divisor")
        values = [rng.randint(-9, 9) for _ in case.coordinate_names()]
        return base_point(case, a=values)
    if kind == FRIEDBERG_JACQUET:
        if n != 1:
            raise StructureError(
                "fiber analysis for the block-ratio case is rank one only"
            )
        b = rng.nonzero_randint(-9, 9)
        c = 0 if on_divisor else rng.nonzero_randint(-9, 9)
        pt = build_hperp(case, B=[[b]], C=[[c]])
        return base_point(case, a=[git_coords(pt).a[0]])
    if kind == JACQUET_ICHINO:
        w = rng.nonzero_randint(-9, 9)
        a = rng.randint(-9, 9)
        if on_divisor:
            b, c = (rng.nonzero_randint(-9, 9), 0)
            if rng.randint(0, 1):
                b, c = c, rng.nonzero_randint(-9, 9)
        else:
            b, c = rng.nonzero_randint(-9, 9), rng.nonzero_randint(-9, 9)
        pt = build_hperp(case, w=w, a=a, b=b, c=c)
        return base_point(case, d=git_coords(pt).ichino_d)
    if kind == RANKIN_SELBERG:
        alpha = [Fraction(x) for x in rng.distinct_ints(n, -9, 9)]
        products = [Fraction(rng.nonzero_randint(-9, 9)) for _ in range(n)]
        if on_divisor:
            products[rng.randint(0, n - 1)] = Fraction(0)
        d = Fraction(rng.randint(-9, 9))
        pt = build_hperp(case, alpha=alpha, u=products,
                         v=[Fraction(1)] * n, d=d)
        return base_point(case, alpha=alpha, b=git_coords(pt).b)
    if kind == GROSS_PRASAD:
        magnitudes = rng.distinct_ints(n, 1, 9)
        alpha = [Fraction(m if rng.randint(0, 1) else -m) for m in magnitudes]
        products = [Fraction(rng.nonzero_randint(-9, 9)) for _ in range(n)]
        if on_divisor:
            products[rng.randint(0, n - 1)] = Fraction(0)
        pt = build_hperp(case, alpha=alpha, u=products, v=[Fraction(1)] * n)
        return base_point(case, alpha=alpha, b=git_coords(pt).b)
    raise StructureError(f"unknown case kind {kind!r}")


def fiber_divisor_consistency(case: Case, seed: int = 0,
                              trials: int = 50) -> FiberConsistencyReport:
    """orbit_count >= 2 iff the divisor polynomial vanishes, over samples."""
    rng = SplitMix64(seed)
    notes: List[str] = []
    if case.kind in (DIAGONAL, ODD_GL):
        notes.append("empty divisor: every sample is off-divisor")
    violations = 0
    on_count = off_count = 0
    for trial in range(trials):
        on = (trial % 2 == 1) and case.kind not in (DIAGONAL, ODD_GL)
        pt = sample_point(case, on_divisor=on, rng=rng)
        if on:
            on_count += 1
        else:
            off_count += 1
        diag = diagnose(pt)
        doubled = diag.orbit_count >= 2
        vanishes = diag.divisor_value == 0
        if doubled != vanishes:
            violations += 1
        if case.kind == JACQUET_ICHINO and pt.coords["d1"] == 0:
            notes.append("a sample needed chart relabeling")
    return FiberConsistencyReport(
        case=case, trials=trials, violations=violations,
        on_divisor_samples=on_count, off_divisor_samples=off_count,
        notes=notes,
    )
