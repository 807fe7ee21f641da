"""Sparse exact multivariate polynomials over arbitrary-precision rationals.

Representation: a polynomial is a dict mapping exponent tuples (one
nonnegative int per variable of its VarContext) to nonzero Fraction
coefficients.  The zero polynomial is the empty dict.  Values are immutable
by convention: no operation mutates an existing MultiPoly, so instances can
be shared freely.

Monomial order: graded lexicographic with respect to the context's declared
variable order (higher total degree first, ties broken lexicographically on
the exponent tuple).  This order fixes leading terms, the sign normalization
of square roots, and the canonical text rendering.

Canonical text format ("-3/4*a1^2*b2 + b1 - 1"): terms sorted descending in
graded lex, coefficients as "n" or "n/d" with explicit sign, monomials as
'*'-joined "var^exp" factors with "^1" omitted.  parse_poly inverts
render exactly.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

Coeff = Union[int, Fraction]


class PolyError(Exception):
    """Base class for polynomial-layer errors."""


class ContextMismatchError(PolyError):
    """Operands live in variable contexts that cannot be aligned."""


class ExactDivisionError(PolyError):
    """An exact division that must succeed (Bareiss pivot) failed: a bug."""


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class VarContext:
    """An ordered tuple of distinct variable names.

    The order is fixed for the context's lifetime and defines the monomial
    order.  Two polynomials interoperate iff their contexts are equal or one
    context extends the other without reordering (prefix extension).
    """

    __slots__ = ("names", "index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in context {names}")
        for name in names:
            if not _NAME_RE.match(name):
                raise PolyError(f"bad variable name {name!r}")
        self.names = names
        self.index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarContext) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarContext{self.names}"

    def extends(self, other: "VarContext") -> bool:
        """True if self's variable list begins with other's (prefix rule)."""
        return self.names[: len(other.names)] == other.names


def _as_fraction(value: Coeff) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise PolyError(f"not an exact rational: {value!r}")


def grlex_key(exponents: tuple) -> tuple:
    return (sum(exponents), exponents)


class MultiPoly:
    """Immutable sparse polynomial attached to a VarContext."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VarContext, terms: Mapping[tuple, Coeff]):
        clean = {}
        width = len(ctx)
        for exps, coeff in terms.items():
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            if len(exps) != width or any(e < 0 for e in exps):
                raise PolyError(f"bad exponent vector {exps} for context {ctx}")
            clean[tuple(exps)] = coeff
        self.ctx = ctx
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ctx: VarContext) -> "MultiPoly":
        return MultiPoly(ctx, {})

    @staticmethod
    def const(ctx: VarContext, value: Coeff) -> "MultiPoly":
        return MultiPoly(ctx, {(0,) * len(ctx): _as_fraction(value)})

    @staticmethod
    def var(ctx: VarContext, name: str) -> "MultiPoly":
        if name not in ctx.index:
            raise PolyError(f"variable {name!r} not in {ctx}")
        exps = [0] * len(ctx)
        exps[ctx.index[name]] = 1
        return MultiPoly(ctx, {tuple(exps): Fraction(1)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (zero included)."""
        if not self.terms:
            return Fraction(0)
        ((exps, coeff),) = self.terms.items()
        if sum(exps) != 0:
            raise PolyError("not a constant polynomial")
        return coeff

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def lead(self) -> tuple:
        """(exponent tuple, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def variables_used(self) -> set:
        used = set()
        for exps in self.terms:
            for name, e in zip(self.ctx.names, exps):
                if e:
                    used.add(name)
        return used

    # -- context alignment -------------------------------------------------

    def in_context(self, ctx: VarContext) -> "MultiPoly":
        """Reinterpret in an extending context (zero-pad exponent vectors)."""
        if ctx == self.ctx:
            return self
        if not ctx.extends(self.ctx):
            raise ContextMismatchError(f"{ctx} does not extend {self.ctx}")
        pad = (0,) * (len(ctx) - len(self.ctx))
        return MultiPoly(ctx, {exps + pad: c for exps, c in self.terms.items()})

    def _aligned(self, other: "MultiPoly") -> tuple:
        if self.ctx == other.ctx:
            return self, other
        if self.ctx.extends(other.ctx):
            return self, other.in_context(self.ctx)
        if other.ctx.extends(self.ctx):
            return self.in_context(other.ctx), other
        raise ContextMismatchError(
            f"incompatible contexts {self.ctx} and {other.ctx}"
        )

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(self.ctx, other)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        a, b = self._aligned(self._coerce(other))
        out = dict(a.terms)
        for exps, coeff in b.terms.items():
            total = out.get(exps, Fraction(0)) + coeff
            if total == 0:
                out.pop(exps, None)
            else:
                out[exps] = total
        return MultiPoly(a.ctx, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        a, b = self._aligned(self._coerce(other))
        if not a.terms or not b.terms:
            return MultiPoly.zero(a.ctx)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                total = out.get(exps, Fraction(0)) + c1 * c2
                if total == 0:
                    out.pop(exps, None)
                else:
                    out[exps] = total
        return MultiPoly(a.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise PolyError("exponent must be a nonnegative int")
        result = MultiPoly.const(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        try:
            a, b = self._aligned(other)
        except ContextMismatchError:
            return False
        return a.terms == b.terms

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({render_poly(self)!r})"

    # -- evaluation and substitution ----------------------------------------

    def eval(self, assignment: Mapping[str, Coeff]) -> Fraction:
        """Exact evaluation; every variable of the context must be assigned."""
        values = []
        for name in self.ctx.names:
            if name not in assignment:
                raise PolyError(f"missing assignment for {name!r}")
            values.append(_as_fraction(assignment[name]))
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for value, e in zip(values, exps):
                if e:
                    term *= value ** e
            total += term
        return total

    def substitute(self, images: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Ring homomorphism sending each variable to its image polynomial.

        All images must share one context; every variable of self must have
        an image (constants may be given as MultiPoly constants).
        """
        target: Optional[VarContext] = None
        for img in images.values():
            if target is None:
                target = img.ctx
            elif img.ctx != target:
                raise ContextMismatchError("substitution images mix contexts")
        if target is None:
            raise PolyError("empty substitution")
        for name in self.ctx.names:
            if name not in images:
                raise PolyError(f"missing image for {name!r}")
        power_cache: dict = {}

        def img_pow(name: str, e: int) -> MultiPoly:
            key = (name, e)
            if key not in power_cache:
                power_cache[key] = images[name] ** e
            return power_cache[key]

        total = MultiPoly.zero(target)
        for exps, coeff in self.terms.items():
            term = MultiPoly.const(target, coeff)
            for name, e in zip(self.ctx.names, exps):
                if e:
                    term = term * img_pow(name, e)
            total = total + term
        return total

    # -- exact division and square root -------------------------------------

    def divide_exact(self, divisor: "MultiPoly") -> Optional["MultiPoly"]:
        """Quotient q with self == q * divisor, or None if none exists."""
        a, d = self._aligned(divisor)
        if d.is_zero():
            return None
        if a.is_zero():
            return MultiPoly.zero(a.ctx)
        d_exps, d_coeff = d.lead()
        quotient: dict = {}
        rem = a
        while not rem.is_zero():
            r_exps, r_coeff = rem.lead()
            q_exps = tuple(x - y for x, y in zip(r_exps, d_exps))
            if any(e < 0 for e in q_exps):
                return None
            q_coeff = r_coeff / d_coeff
            quotient[q_exps] = quotient.get(q_exps, Fraction(0)) + q_coeff
            rem = rem - MultiPoly(a.ctx, {q_exps: q_coeff}) * d
        return MultiPoly(a.ctx, quotient)

    def sqrt(self) -> Optional["MultiPoly"]:
        """Exact square root, or None when self is not a square over Q.

        Leading-term extraction under graded lex: the root's leading term is
        the (rational) square root of the leading term, each later root term
        comes from dividing the current remainder's leading term by twice the
        root's leading term.  The result is normalized to positive leading
        coefficient, which makes it unique and deterministic.
        """
        if self.is_zero():
            return self
        exps, coeff = self.lead()
        if any(e % 2 for e in exps):
            return None
        root_coeff = _fraction_sqrt(coeff)
        if root_coeff is None:
            return None
        root_lead = MultiPoly(
            self.ctx, {tuple(e // 2 for e in exps): root_coeff}
        )
        root = root_lead
        rem = self - root * root
        lead_half = tuple(e // 2 for e in exps)
        prev_key = None
        while not rem.is_zero():
            r_exps, r_coeff = rem.lead()
            key = grlex_key(r_exps)
            if prev_key is not None and key >= prev_key:
                return None
            prev_key = key
            t_exps = tuple(x - y for x, y in zip(r_exps, lead_half))
            if any(e < 0 for e in t_exps):
                return None
            term = MultiPoly(self.ctx, {t_exps: r_coeff / (2 * root_coeff)})
            root = root + term
            rem = self - root * root
        return root

    def __bool__(self) -> bool:
        return not self.is_zero()


def _fraction_sqrt(value: Fraction) -> Optional[Fraction]:
    """Square root of a rational if it is a perfect square, else None."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def unit_multiple(p: MultiPoly, q: MultiPoly) -> Optional[Fraction]:
    """The nonzero rational c with p == c*q, or None if no such c exists.

    Both zero counts as c = 1 (equal divisors); exactly one zero has no unit.
    """
    if p.is_zero() and q.is_zero():
        return Fraction(1)
    if p.is_zero() or q.is_zero():
        return None
    a, b = p._aligned(q)
    q_exps, q_coeff = b.lead()
    pa_exps, pa_coeff = a.lead()
    if pa_exps != q_exps:
        return None
    c = pa_coeff / q_coeff
    return c if a == b * MultiPoly.const(b.ctx, c) else None


# -- canonical text ---------------------------------------------------------


def render_coeff(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_poly(p: MultiPoly) -> str:
    """Canonical text: terms descending in graded lex, explicit signs."""
    if p.is_zero():
        return "0"
    pieces = []
    for exps in sorted(p.terms, key=grlex_key, reverse=True):
        coeff = p.terms[exps]
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(p.ctx.names, exps)
            if e
        ]
        magnitude = abs(coeff)
        if factors and magnitude == 1:
            body = "*".join(factors)
        elif factors:
            body = render_coeff(magnitude) + "*" + "*".join(factors)
        else:
            body = render_coeff(magnitude)
        pieces.append(("-" if coeff < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def parse_poly(text: str, ctx: VarContext) -> MultiPoly:
    """Inverse of render_poly for the given context."""
    text = text.strip()
    if not text:
        raise PolyError("empty polynomial text")
    # split into signed chunks: insert explicit separators then scan
    chunks = re.split(r"\s*([+-])\s*", text)
    if chunks[0] == "":
        chunks = chunks[1:]
    else:
        chunks = ["+"] + chunks
    if len(chunks) % 2 != 0:
        raise PolyError(f"malformed polynomial text {text!r}")
    total = MultiPoly.zero(ctx)
    for sign, body in zip(chunks[0::2], chunks[1::2]):
        if not body:
            raise PolyError(f"malformed polynomial text {text!r}")
        coeff = Fraction(1) if sign == "+" else Fraction(-1)
        exps = [0] * len(ctx)
        for factor in body.split("*"):
            factor = factor.strip()
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?", factor)
            if not m:
                raise PolyError(f"bad factor {factor!r}")
            name, power = m.group(1), int(m.group(2) or 1)
            if name not in ctx.index:
                raise PolyError(f"unknown variable {name!r}")
            exps[ctx.index[name]] += power
        total = total + MultiPoly(ctx, {tuple(exps): coeff})
    return total


# -- polynomial matrices ----------------------------------------------------


class PolyMatrix:
    """Dense matrix of MultiPoly entries sharing one context."""

    __slots__ = ("rows", "cols", "ctx", "entries")

    def __init__(self, rows: int, cols: int, ctx: VarContext,
                 entries: Sequence[MultiPoly]):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise PolyError("entry count does not match shape")
        self.rows, self.cols, self.ctx = rows, cols, ctx
        self.entries = [e.in_context(ctx) for e in entries]

    @staticmethod
    def from_rows(ctx: VarContext, rows: Sequence[Sequence]) -> "PolyMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        flat = []
        for row in rows:
            if len(row) != n_cols:
                raise PolyError("ragged rows")
            for value in row:
                if isinstance(value, MultiPoly):
                    flat.append(value)
                else:
                    flat.append(MultiPoly.const(ctx, value))
        return PolyMatrix(n_rows, n_cols, ctx, flat)

    @staticmethod
    def identity(ctx: VarContext, n: int) -> "PolyMatrix":
        one, zero = MultiPoly.const(ctx, 1), MultiPoly.zero(ctx)
        return PolyMatrix(
            n, n, ctx,
            [one if i == j else zero for i in range(n) for j in range(n)],
        )

    @staticmethod
    def zeros(ctx: VarContext, rows: int, cols: int) -> "PolyMatrix":
        zero = MultiPoly.zero(ctx)
        return PolyMatrix(rows, cols, ctx, [zero] * (rows * cols))

    def __getitem__(self, key) -> MultiPoly:
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return self.entries[i * self.cols: (i + 1) * self.cols]

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise PolyError("shape mismatch in matrix addition")
        return PolyMatrix(
            self.rows, self.cols, self.ctx,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, self.ctx,
                          [-a for a in self.entries])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise PolyError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = MultiPoly.zero(self.ctx)
                for k in range(self.cols):
                    acc = acc + self[i, k] * other[k, j]
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, self.ctx, out)

    def scale(self, value) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, self.ctx,
                          [e * value for e in self.entries])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.cols, self.rows, self.ctx,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
        )

    def trace(self) -> MultiPoly:
        if self.rows != self.cols:
            raise PolyError("trace of a non-square matrix")
        acc = MultiPoly.zero(self.ctx)
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def map_entries(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, self.ctx,
                          [fn(e) for e in self.entries])

    def render(self) -> str:
        rows = []
        for i in range(self.rows):
            rows.append("[" + ", ".join(render_poly(e) for e in self.row(i)) + "]")
        return "[" + ", ".join(rows) + "]"


def poly_det(matrix: PolyMatrix) -> MultiPoly:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Every division performed is exact in the polynomial ring; a failed
    division indicates a bug and raises ExactDivisionError.
    """
    if matrix.rows != matrix.cols:
        raise PolyError("determinant of a non-square matrix")
    n = matrix.rows
    if n == 0:
        return MultiPoly.const(matrix.ctx, 1)
    lower = all(matrix[i, j].is_zero() for i in range(n) for j in range(i + 1, n))
    upper = all(matrix[i, j].is_zero() for j in range(n) for i in range(j + 1, n))
    if lower or upper:
        det = MultiPoly.const(matrix.ctx, 1)
        for i in range(n):
            det = det * matrix[i, i]
        return det
    work = [[matrix[i, j] for j in range(n)] for i in range(n)]
    ctx = matrix.ctx
    sign = 1
    prev_pivot = MultiPoly.const(ctx, 1)
    for k in range(n - 1):
        if work[k][k].is_zero():
            for swap in range(k + 1, n):
                if not work[swap][k].is_zero():
                    work[k], work[swap] = work[swap], work[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(ctx)
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = work[i][j] * pivot - work[i][k] * work[k][j]
                quotient = numerator.divide_exact(prev_pivot)
                if quotient is None:
                    raise ExactDivisionError("Bareiss division failed")
                work[i][j] = quotient
            work[i][k] = MultiPoly.zero(ctx)
        prev_pivot = pivot
    det = work[n - 1][n - 1]
    return det if sign == 1 else -det


def poly_det_cofactor(matrix: PolyMatrix) -> MultiPoly:
    """Cofactor-expansion determinant; the independent oracle for poly_det."""
    if matrix.rows != matrix.cols:
        raise PolyError("determinant of a non-square matrix")
    n = matrix.rows
    if n == 0:
        return MultiPoly.const(matrix.ctx, 1)
    if n == 1:
        return matrix[0, 0]
    total = MultiPoly.zero(matrix.ctx)
    for j in range(n):
        if matrix[0, j].is_zero():
            continue
        minor = PolyMatrix.from_rows(
            matrix.ctx,
            [[matrix[i, jj] for jj in range(n) if jj != j] for i in range(1, n)],
        )
        term = matrix[0, j] * poly_det_cofactor(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total
