"""Partitions and symmetric functions in named variable families.

A partition is a tuple of weakly decreasing nonnegative ints, stored in
canonical form (no trailing zeros); renders as "(3,1)" and "()" for the
empty partition.  A variable family is a name prefix plus a count: family
"al" with n = 3 means variables al1, al2, al3 inside some VarContext.

The basis-conversion workhorse is elem_expand: rewrite a polynomial that is
symmetric in one family as a polynomial in the elementary symmetric values
of that family (classical leading-term subtraction under graded lex), with
all other context variables carried along as inert coefficients.

The generalized Newton identity implemented here relates augmented monomial
sums to elementary symmetric polynomials:

    sum_{k=0}^{n} (-1)^(n-k) * (1 + mult_k(mu)) * m_{mu(k)} * e_{n-k} == 0

where mu has at most n-1 parts, mu(k) is mu with k inserted, and mult_k(mu)
counts occurrences of k in mu zero-padded to length n-1.  The multiplicity
factor is forced: for mu = () and n = 2 the identity reduces to the
classical p_2 - e_1 p_1 + 2 e_2 = 0, whose final coefficient is 2, not 1.
The literal all-ones version (kept for reporting) fails exactly when some
k in 0..n occurs in the padded mu.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple

from .poly import MultiPoly, PolyError, VarContext, grlex_key

Partition = Tuple[int, ...]


class PartitionError(PolyError):
    pass


class NotSymmetricError(PolyError):
    pass


# -- partitions --------------------------------------------------------------


def partition(parts: Sequence[int]) -> Partition:
    """Canonical partition: validated weakly decreasing, trailing zeros cut."""
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts):
        raise PartitionError(f"negative part in {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise PartitionError(f"parts not weakly decreasing: {parts}")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def render_partition(mu: Partition) -> str:
    return "(" + ",".join(str(p) for p in mu) + ")"


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise PartitionError(f"partition text must be parenthesized: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    try:
        parts = [int(piece) for piece in body.split(",")]
    except ValueError as exc:
        raise PartitionError(f"bad partition text {text!r}") from exc
    return partition(parts)


def pad(mu: Partition, length: int) -> Partition:
    if len(mu) > length:
        raise PartitionError(f"partition {mu} longer than {length}")
    return tuple(mu) + (0,) * (length - len(mu))


def partitions_in_rect(rows: int, cols: int) -> List[Partition]:
    """All partitions with at most `rows` parts, each at most `cols`.

    Deterministic order: ascending by (size, parts).  The count is always
    binomial(rows + cols, rows).
    """
    out = [()]

    def extend(prefix: tuple, remaining_rows: int, cap: int) -> None:
        if remaining_rows == 0:
            return
        for part in range(1, cap + 1):
            mu = prefix + (part,)
            out.append(mu)
            extend(mu, remaining_rows - 1, part)

    extend((), rows, cols)
    out.sort(key=lambda mu: (sum(mu), mu))
    assert len(out) == comb(rows + cols, rows)
    return out


def complement_partition(mu: Partition, rows: int, cols: int) -> Partition:
    """The reversed complement of mu inside a rows x cols rectangle."""
    padded = pad(partition(mu), rows)
    if padded and padded[0] > cols:
        raise PartitionError(f"{mu} does not fit in {rows}x{cols}")
    return partition(tuple(cols - p for p in reversed(padded)))


def mu_insert(mu: Partition, k: int) -> Partition:
    """Sorted insertion of k into the multiset of parts."""
    return partition(tuple(sorted(tuple(mu) + (k,), reverse=True)))


def aug_multiplicity(mu: Partition, k: int, ambient: int) -> int:
    """1 + multiplicity of k among the parts of mu zero-padded to `ambient`."""
    return 1 + pad(partition(mu), ambient).count(k)


# -- variable families -------------------------------------------------------


def family_names(family: str, n: int) -> Tuple[str, ...]:
    return tuple(f"{family}{i}" for i in range(1, n + 1))


def family_context(family: str, n: int) -> VarContext:
    return VarContext(family_names(family, n))


def _family_positions(ctx: VarContext, family: str, n: int) -> List[int]:
    positions = []
    for name in family_names(family, n):
        if name not in ctx.index:
            raise PolyError(f"context {ctx} lacks family variable {name!r}")
        positions.append(ctx.index[name])
    return positions


class SymPolyHandle:
    """A polynomial tagged with the variable family it is symmetric in."""

    __slots__ = ("family", "n", "poly")

    def __init__(self, family: str, n: int, poly: MultiPoly):
        self.family = family
        self.n = n
        self.poly = poly

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymPolyHandle)
            and (self.family, self.n) == (other.family, other.n)
            and self.poly == other.poly
        )

    def __repr__(self) -> str:
        return f"SymPolyHandle({self.family}, {self.n}, {self.poly!r})"


def elementary_sym(k: int, family: str, n: int,
                   ctx: Optional[VarContext] = None) -> SymPolyHandle:
    """e_k in the n family variables; e_0 = 1 and e_k = 0 for k > n."""
    ctx = ctx or family_context(family, n)
    positions = _family_positions(ctx, family, n)
    if k < 0 or k > n:
        return SymPolyHandle(family, n, MultiPoly.zero(ctx))
    terms = {}
    for combo in itertools.combinations(positions, k):
        exps = [0] * len(ctx)
        for pos in combo:
            exps[pos] = 1
        terms[tuple(exps)] = Fraction(1)
    return SymPolyHandle(family, n, MultiPoly(ctx, terms))


def elementary_sym_hat(k: int, family: str, n: int, omit: int,
                       ctx: Optional[VarContext] = None) -> SymPolyHandle:
    """e_k over the family with the 1-based variable `omit` removed."""
    if not 1 <= omit <= n:
        raise PolyError(f"omitted index {omit} out of range 1..{n}")
    ctx = ctx or family_context(family, n)
    positions = _family_positions(ctx, family, n)
    kept = [pos for i, pos in enumerate(positions, start=1) if i != omit]
    if k < 0 or k > len(kept):
        return SymPolyHandle(family, n, MultiPoly.zero(ctx))
    terms = {}
    for combo in itertools.combinations(kept, k):
        exps = [0] * len(ctx)
        for pos in combo:
            exps[pos] = 1
        terms[tuple(exps)] = Fraction(1)
    return SymPolyHandle(family, n, MultiPoly(ctx, terms))


def monomial_sym(mu: Partition, family: str, n: int,
                 ctx: Optional[VarContext] = None,
                 omit: Optional[int] = None) -> SymPolyHandle:
    """Orbit sum of the monomial with exponent multiset mu, coefficients 1.

    With `omit` (1-based) the orbit runs over the other n-1 family variables,
    which is the hatted monomial function that appears in the Newton-identity
    bookkeeping.
    """
    mu = partition(mu)
    ctx = ctx or family_context(family, n)
    positions = _family_positions(ctx, family, n)
    if omit is not None:
        if not 1 <= omit <= n:
            raise PolyError(f"omitted index {omit} out of range 1..{n}")
        positions = [p for i, p in enumerate(positions, start=1) if i != omit]
    if len(mu) > len(positions):
        raise PartitionError(
            f"partition {mu} has more parts than available variables"
        )
    padded = pad(mu, len(positions))
    terms = {}
    for arrangement in set(itertools.permutations(padded)):
        exps = [0] * len(ctx)
        for pos, e in zip(positions, arrangement):
            exps[pos] = e
        terms[tuple(exps)] = Fraction(1)
    return SymPolyHandle(family, n, MultiPoly(ctx, terms))


def complete_homogeneous(d: int, family: str, n: int,
                         ctx: Optional[VarContext] = None) -> MultiPoly:
    """h_d: the sum of every degree-d monomial in the family variables."""
    ctx = ctx or family_context(family, n)
    positions = _family_positions(ctx, family, n)
    terms = {}
    for combo in itertools.combinations_with_replacement(range(n), d):
        exps = [0] * len(ctx)
        for idx in combo:
            exps[positions[idx]] += 1
        terms[tuple(exps)] = Fraction(1)
    return MultiPoly(ctx, terms)


# -- symmetry testing and basis conversion -----------------------------------


def _swap_exponents(p: MultiPoly, i: int, j: int) -> MultiPoly:
    terms = {}
    for exps, coeff in p.terms.items():
        swapped = list(exps)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        terms[tuple(swapped)] = coeff
    return MultiPoly(p.ctx, terms)


def is_symmetric(p: MultiPoly, family: str, n: int) -> bool:
    """Invariance under the n-1 adjacent family transpositions."""
    positions = _family_positions(p.ctx, family, n)
    return all(
        _swap_exponents(p, positions[i], positions[i + 1]) == p
        for i in range(n - 1)
    )


def elem_expand(p: MultiPoly, family: str, n: int,
                e_images: Sequence[MultiPoly],
                inert_images: dict) -> MultiPoly:
    """Rewrite p through the elementary symmetric values of one family.

    p must be symmetric in the family; all other variables of p's context
    are inert coefficients.  The result substitutes e_images[k-1] for
    e_k(family) and inert_images[name] for each inert variable; images share
    one target context.  Uniqueness comes from the fundamental theorem of
    symmetric polynomials; the loop subtracts the leading family slice as a
    product of elementary symmetric polynomials until nothing remains.
    """
    if n < 1:
        raise PolyError("elem_expand needs a nonempty family")
    if len(e_images) != n:
        raise PolyError(f"need {n} elementary images, got {len(e_images)}")
    positions = _family_positions(p.ctx, family, n)
    if not is_symmetric(p, family, n):
        raise NotSymmetricError(f"input not symmetric in family {family!r}")
    target_ctx = e_images[0].ctx if n else None
    for img in e_images:
        if img.ctx != target_ctx:
            raise PolyError("elementary images mix contexts")
    full_images = dict(inert_images)
    zero = MultiPoly.zero(target_ctx)
    for name in family_names(family, n):
        full_images[name] = zero
    e_work = [elementary_sym(k, family, n, ctx=p.ctx).poly
              for k in range(1, n + 1)]

    work = p
    result = MultiPoly.zero(target_ctx)
    guard = 0
    while not work.is_zero():
        guard += 1
        if guard > 100000:
            raise PolyError("elem_expand failed to terminate")
        lam = max(
            (tuple(exps[pos] for pos in positions) for exps in work.terms),
            key=grlex_key,
        )
        if any(lam[i] < lam[i + 1] for i in range(n - 1)):
            raise NotSymmetricError(
                f"leading family exponent {lam} not weakly decreasing"
            )
        slice_terms = {}
        for exps, coeff in work.terms.items():
            if tuple(exps[pos] for pos in positions) == lam:
                zeroed = list(exps)
                for pos in positions:
                    zeroed[pos] = 0
                slice_terms[tuple(zeroed)] = coeff
        coeff_poly = MultiPoly(p.ctx, slice_terms)
        mults = [lam[i] - lam[i + 1] for i in range(n - 1)] + [lam[n - 1]]
        e_prod_work = MultiPoly.const(p.ctx, 1)
        e_prod_target = MultiPoly.const(target_ctx, 1)
        for k, m in enumerate(mults):
            if m:
                e_prod_work = e_prod_work * e_work[k] ** m
                e_prod_target = e_prod_target * e_images[k] ** m
        work = work - coeff_poly * e_prod_work
        result = result + coeff_poly.substitute(full_images) * e_prod_target
    return result


def elem_expand_handle(handle: SymPolyHandle,
                       e_prefix: str = "e") -> MultiPoly:
    """elem_expand into fresh variables e1..en (no inert variables allowed)."""
    inert = [
        name for name in handle.poly.variables_used()
        if name not in family_names(handle.family, handle.n)
    ]
    if inert:
        raise PolyError(f"unexpected inert variables {inert}")
    ctx = VarContext(family_names(e_prefix, handle.n))
    e_images = [MultiPoly.var(ctx, name) for name in ctx.names]
    return elem_expand(handle.poly, handle.family, handle.n, e_images, {})


# -- generalized Newton identities -------------------------------------------

NEWTON_FAMILY = "al"


def newton_residual(mu: Partition, n: int, corrected: bool = True) -> MultiPoly:
    """Residual of the multiplicity-corrected Newton identity (see module doc).

    corrected=True: the corrected alternating sum minus the independent
    expansion sum_j m_mu(hat alpha_j) * f(alpha_j), where f is the monic
    degree-n polynomial with the family variables as roots, written out
    through its elementary-symmetric coefficients.  Both routes expand to
    honest polynomials in the alpha variables; the residual must be zero.

    corrected=False: the literal all-ones alternating sum, returned as is so
    callers can see exactly where the uncorrected form fails.
    """
    mu = partition(mu)
    if len(mu) > n - 1:
        raise PartitionError(f"partition {mu} longer than n-1 = {n - 1}")
    ctx = family_context(NEWTON_FAMILY, n)
    e_polys = [elementary_sym(k, NEWTON_FAMILY, n, ctx=ctx).poly
               for k in range(0, n + 1)]
    literal = MultiPoly.zero(ctx)
    corrected_sum = MultiPoly.zero(ctx)
    for k in range(0, n + 1):
        sign = -1 if (n - k) % 2 else 1
        term = monomial_sym(mu_insert(mu, k), NEWTON_FAMILY, n, ctx=ctx).poly \
            * e_polys[n - k]
        term = term if sign == 1 else -term
        literal = literal + term
        corrected_sum = corrected_sum + term * aug_multiplicity(mu, k, n - 1)
    if not corrected:
        return literal
    oracle = MultiPoly.zero(ctx)
    for j in range(1, n + 1):
        m_hat = monomial_sym(mu, NEWTON_FAMILY, n, ctx=ctx, omit=j).poly
        alpha_j = MultiPoly.var(ctx, f"{NEWTON_FAMILY}{j}")
        f_at = MultiPoly.zero(ctx)
        for k in range(0, n + 1):
            piece = e_polys[n - k] * alpha_j ** k
            f_at = f_at + (piece if (n - k) % 2 == 0 else -piece)
        oracle = oracle + m_hat * f_at
    return corrected_sum - oracle


def newton_correction_pairs(mu: Partition, n: int) -> List[Tuple[int, int]]:
    """The (k, factor) pairs where the corrected identity needs factor != 1."""
    mu = partition(mu)
    return [
        (k, aug_multiplicity(mu, k, n - 1))
        for k in range(0, n + 1)
        if aug_multiplicity(mu, k, n - 1) != 1
    ]
