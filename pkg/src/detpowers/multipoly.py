"""Sparse multivariate polynomials in the matrix entries x[i,j].

Variables are 1-based (row, col) pairs. A monomial is a canonical sorted
tuple of (row, col, exponent) triples with strictly positive exponents, so
it is hashable and cheap to compare; polynomials are hash maps from
monomials to nonzero cyclotomic coefficients. Powers of linear forms are
expanded with the multinomial theorem over weak compositions, never by
repeated multiplication (the repeated-multiplication route exists only as
a test oracle).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .cyclotomic import Cyc

Var = tuple[int, int]
Monomial = tuple[tuple[int, int, int], ...]

MONO_ONE: Monomial = ()


def monomial(exponents: Mapping[Var, int] | Iterable[tuple[Var, int]]) -> Monomial:
    """Canonical monomial from a {(row, col): exponent} mapping."""
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    merged: dict[Var, int] = {}
    for var, e in items:
        if e < 0:
            raise ValueError(f"negative exponent {e} for variable {var}")
        if e:
            merged[var] = merged.get(var, 0) + e
    return tuple((i, j, e) for (i, j), e in sorted(merged.items()))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    """Product of two canonical monomials (merge of sorted triple lists)."""
    if not a:
        return b
    if not b:
        return a
    out: list[tuple[int, int, int]] = []
    ia, ib = 0, 0
    while ia < len(a) and ib < len(b):
        ra, ca, ea = a[ia]
        rb, cb, eb = b[ib]
        if (ra, ca) == (rb, cb):
            out.append((ra, ca, ea + eb))
            ia += 1
            ib += 1
        elif (ra, ca) < (rb, cb):
            out.append(a[ia])
            ia += 1
        else:
            out.append(b[ib])
            ib += 1
    out.extend(a[ia:])
    out.extend(b[ib:])
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(t[2] for t in m)


def mono_divides(divisor: Monomial, m: Monomial) -> bool:
    exps = {(i, j): e for i, j, e in m}
    return all(exps.get((i, j), 0) >= e for i, j, e in divisor)


def multinomial(total: int, parts: Iterable[int]) -> int:
    """total! / prod(part!) for a weak composition of `total`."""
    parts = tuple(parts)
    if any(p < 0 for p in parts):
        raise ValueError("multinomial parts must be nonnegative")
    if sum(parts) != total:
        raise ValueError(f"parts {parts} do not sum to {total}")
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out


def weak_compositions(total: int, length: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `length` nonnegative ints summing to `total`."""
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in weak_compositions(total - first, length - 1):
            yield (first,) + rest


class SparsePoly:
    """A polynomial stored as {monomial: coefficient} with no zero values."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: Mapping[Monomial, Cyc] | None = None):
        self.order = order
        self.terms: dict[Monomial, Cyc] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    @classmethod
    def zero(cls, order: int) -> "SparsePoly":
        return cls(order)

    @classmethod
    def constant(cls, order: int, value: Cyc | int | Fraction) -> "SparsePoly":
        c = _as_cyc(order, value)
        return cls(order, {MONO_ONE: c})

    @classmethod
    def variable(cls, order: int, var: Var) -> "SparsePoly":
        return cls(order, {monomial({var: 1}): Cyc.one(order)})

    # views -------------------------------------------------------------------

    def coefficient(self, m: Monomial) -> Cyc:
        return self.terms.get(m, Cyc.zero(self.order))

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms)

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    # arithmetic --------------------------------------------------------------

    def _check(self, other: "SparsePoly") -> None:
        if self.order != other.order:
            raise ValueError(f"mixed root orders {self.order} and {other.order}")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            if cur is None:
                out[m] = c
            else:
                s = cur + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        res = SparsePoly.__new__(SparsePoly)
        res.order = self.order
        res.terms = out
        return res

    def __neg__(self) -> "SparsePoly":
        res = SparsePoly.__new__(SparsePoly)
        res.order = self.order
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.__add__(-other)

    def __mul__(self, other):
        if isinstance(other, SparsePoly):
            self._check(other)
            out: dict[Monomial, Cyc] = {}
            for ma, ca in self.terms.items():
                for mb, cb in other.terms.items():
                    m = mono_mul(ma, mb)
                    c = ca * cb
                    cur = out.get(m)
                    if cur is None:
                        out[m] = c
                    else:
                        s = cur + c
                        if s:
                            out[m] = s
                        else:
                            del out[m]
            res = SparsePoly.__new__(SparsePoly)
            res.order = self.order
            res.terms = out
            return res
        if isinstance(other, (Cyc, int, Fraction)):
            c = _as_cyc(self.order, other)
            if not c:
                return SparsePoly.zero(self.order)
            res = SparsePoly.__new__(SparsePoly)
            res.order = self.order
            res.terms = {m: v * c for m, v in self.terms.items()}
            return res
        return NotImplemented

    __rmul__ = __mul__

    def evaluate(self, coords: Mapping[Var, Cyc]) -> Cyc:
        """Value at a point given as a sparse {(row, col): value} mapping;
        missing coordinates are zero."""
        total = Cyc.zero(self.order)
        for m, c in self.terms.items():
            val = c
            for i, j, e in m:
                coord = coords.get((i, j))
                if coord is None or not coord:
                    val = None
                    break
                val = val * coord ** e
            if val is not None:
                total = total + val
        return total

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return f"SparsePoly({self.order}: 0)"
        parts = []
        for m in self.monomials()[:6]:
            vars_txt = "*".join(
                f"x[{i},{j}]" + (f"^{e}" if e > 1 else "") for i, j, e in m)
            parts.append(f"({self.terms[m]!r})*{vars_txt}" if m else repr(self.terms[m]))
        more = "" if len(self.terms) <= 6 else f" + ... ({len(self.terms)} terms)"
        return f"SparsePoly({self.order}: " + " + ".join(parts) + more + ")"


def _as_cyc(order: int, value) -> Cyc:
    if isinstance(value, Cyc):
        if value.order != order:
            raise ValueError(f"mixed root orders {order} and {value.order}")
        return value
    if isinstance(value, int):
        return Cyc.from_int(order, value)
    if isinstance(value, Fraction):
        return Cyc.from_fraction(order, value)
    raise TypeError(f"cannot coerce {value!r} to a cyclotomic scalar")


class LinForm:
    """A linear form sum c[i,j] * x[i,j], stored as a dense d x d grid."""

    __slots__ = ("order", "entries")

    def __init__(self, order: int, entries: tuple[tuple[Cyc, ...], ...]):
        d = len(entries)
        for row in entries:
            if len(row) != d:
                raise ValueError("coefficient grid must be square")
        self.order = order
        self.entries = entries

    @classmethod
    def from_entries(cls, order: int, d: int,
                     coeffs: Mapping[Var, Cyc | int | Fraction]) -> "LinForm":
        zero = Cyc.zero(order)
        grid = [[zero] * d for _ in range(d)]
        for (i, j), c in coeffs.items():
            if not (1 <= i <= d and 1 <= j <= d):
                raise ValueError(f"variable index {(i, j)} out of range for d={d}")
            grid[i - 1][j - 1] = _as_cyc(order, c)
        return cls(order, tuple(tuple(row) for row in grid))

    @property
    def d(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> Cyc:
        return self.entries[i - 1][j - 1]

    def support(self) -> list[tuple[Var, Cyc]]:
        """Nonzero coefficients in row-major variable order."""
        out = []
        for i, row in enumerate(self.entries, start=1):
            for j, c in enumerate(row, start=1):
                if c:
                    out.append(((i, j), c))
        return out

    @property
    def is_zero(self) -> bool:
        return all(not c for row in self.entries for c in row)

    def as_poly(self) -> SparsePoly:
        return SparsePoly(self.order, {
            monomial({var: 1}): c for var, c in self.support()})

    def __eq__(self, other):
        if not isinstance(other, LinForm):
            return NotImplemented
        return self.order == other.order and self.entries == other.entries

    def __hash__(self):
        return hash((self.order, self.entries))

    def __repr__(self):
        body = " + ".join(f"({c!r})*x[{i},{j}]" for (i, j), c in self.support())
        return f"LinForm({self.order}: {body or '0'})"


def expand_power(form: LinForm, exponent: int) -> SparsePoly:
    """(linear form)^exponent via the multinomial theorem.

    One pass over the weak compositions of the exponent across the form's
    support; coefficient powers are precomputed per variable, so each
    composition costs a handful of scalar multiplications.
    """
    if exponent < 1:
        raise ValueError(f"exponent must be >= 1, got {exponent}")
    order = form.order
    support = form.support()
    if not support:
        return SparsePoly.zero(order)
    svars = [var for var, _ in support]
    powers: list[list[Cyc]] = []
    for _, c in support:
        row = [Cyc.one(order)]
        for _ in range(exponent):
            row.append(row[-1] * c)
        powers.append(row)
    fact = [math.factorial(k) for k in range(exponent + 1)]
    top = fact[exponent]
    terms: dict[Monomial, Cyc] = {}
    for comp in weak_compositions(exponent, len(support)):
        coeff_int = top
        val: Cyc | None = None
        mono: list[tuple[int, int, int]] = []
        for k, e in enumerate(comp):
            if not e:
                continue
            coeff_int //= fact[e]
            p = powers[k][e]
            val = p if val is None else val * p
            i, j = svars[k]
            mono.append((i, j, e))
        terms[tuple(mono)] = val * coeff_int if coeff_int != 1 else val
    return SparsePoly(order, terms)


def _perm_sign(images: tuple[int, ...]) -> int:
    inv = 0
    for a in range(len(images)):
        for b in range(a + 1, len(images)):
            if images[a] > images[b]:
                inv += 1
    return -1 if inv & 1 else 1


def determinant_poly(d: int, order: int = 1) -> SparsePoly:
    """The generic d x d determinant as a sparse polynomial (d! terms, +-1)."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    terms: dict[Monomial, Cyc] = {}
    plus, minus = Cyc.from_int(order, 1), Cyc.from_int(order, -1)
    for images in itertools.permutations(range(1, d + 1)):
        m = tuple((i, images[i - 1], 1) for i in range(1, d + 1))
        terms[m] = plus if _perm_sign(images) > 0 else minus
    return SparsePoly(order, terms)


def permanent_poly(rows: tuple[int, ...], cols: tuple[int, ...],
                   order: int = 1) -> SparsePoly:
    """Permanent of the submatrix with the given rows and columns."""
    if len(rows) != len(cols):
        raise ValueError(f"permanent needs equally many rows and columns, "
                         f"got {len(rows)} and {len(cols)}")
    one = Cyc.from_int(order, 1)
    terms: dict[Monomial, Cyc] = {}
    for assignment in itertools.permutations(cols):
        m = monomial({(r, c): 1 for r, c in zip(rows, assignment)})
        cur = terms.get(m)
        terms[m] = one if cur is None else cur + one
    return SparsePoly(order, terms)


def diagonal_product_poly(d: int, order: int = 1) -> SparsePoly:
    """The monomial x[1,1] x[2,2] ... x[d,d] as a polynomial."""
    m = tuple((i, i, 1) for i in range(1, d + 1))
    return SparsePoly(order, {m: Cyc.from_int(order, 1)})
