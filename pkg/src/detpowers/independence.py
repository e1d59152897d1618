"""Linear independence of the main decomposition's terms.

Each term T_{sigma,j} is a d-th power of a linear form; its coefficient
matrix is a point in d^2-space. For every term there is a degree-(d-1)
"dual" form, built from the products of all-but-one coordinate along sigma's
diagonal, that evaluates to (-1)^((d+1)j) * d at the term's own point and to
exactly zero at every other term point. That separation pattern proves the
terms linearly independent; an exact Gaussian-elimination rank over the
cyclotomic field confirms it independently at small d.
"""

from __future__ import annotations

import dataclasses
import math

from .cyclotomic import Cyc, omega
from .decompositions import Perm, main_decomposition
from .multipoly import Monomial, SparsePoly, monomial, expand_power


@dataclasses.dataclass(frozen=True)
class TermPoint:
    """Coefficient matrix of one term's linear form, as a point."""
    index: tuple
    coords: tuple[tuple[Cyc, ...], ...]

    @property
    def d(self) -> int:
        return len(self.coords)

    def sparse(self) -> dict[tuple[int, int], Cyc]:
        d = self.d
        return {(i, k): self.coords[i - 1][k - 1]
                for i in range(1, d + 1) for k in range(1, d + 1)
                if not self.coords[i - 1][k - 1].is_zero}


@dataclasses.dataclass(frozen=True)
class DualForm:
    """A homogeneous form paired with points by plain evaluation."""
    poly: SparsePoly
    degree: int

    def __post_init__(self):
        if self.poly.total_degree() != self.degree:
            raise ValueError("form degree does not match the declared degree")

    def at(self, point: TermPoint) -> Cyc:
        return self.poly.evaluate(point.sparse())


def term_point(d: int, sigma: Perm, j: int) -> TermPoint:
    """The point whose (i, sigma i) coordinate is w^(ij), all others zero."""
    if not 1 <= j <= d:
        raise ValueError(f"j must be in [1, {d}], got {j}")
    zero = Cyc.zero(d)
    rows = []
    for i in range(1, d + 1):
        row = [zero] * d
        row[sigma(i) - 1] = omega(d, i * j)
        rows.append(tuple(row))
    return TermPoint((sigma.images, j), tuple(rows))


def diagonal_cofactor_monomial(d: int, sigma: Perm, k: int) -> Monomial:
    """The product of x[i, sigma i] over all i except k."""
    return monomial({(i, sigma(i)): 1 for i in range(1, d + 1) if i != k})


def dual_form(d: int, sigma: Perm, j: int) -> DualForm:
    """L_{sigma,j} = sum_k w^(kj) * (product of x[i, sigma i], i != k)."""
    if not 1 <= j <= d:
        raise ValueError(f"j must be in [1, {d}], got {j}")
    terms = {diagonal_cofactor_monomial(d, sigma, k): omega(d, k * j)
             for k in range(1, d + 1)}
    return DualForm(SparsePoly(d, terms), d - 1)


def promoted_dual_form(d: int, sigma: Perm, j: int) -> DualForm:
    """The degree-d promotion: L multiplied by x[1, sigma 1], a linear form
    that does not vanish at the matching point."""
    base = dual_form(d, sigma, j)
    riser = SparsePoly.variable(d, (1, sigma(1)))
    return DualForm(base.poly * riser, d)


def term_index_list(d: int) -> list[tuple[tuple[int, ...], int]]:
    """All (sigma images, j) in lexicographic sigma order, then j = 1..d."""
    return [(sigma.images, j)
            for sigma in Perm.all_perms(d) for j in range(1, d + 1)]


def separation_matrix(d: int) -> tuple[list[tuple[tuple[int, ...], int]],
                                       list[list[Cyc]]]:
    """The full pairing table: entry [r][c] is the r-th dual form evaluated
    at the c-th term point."""
    if not 2 <= d <= 5:
        raise ValueError(f"d must be in [2, 5], got {d}")
    indices = term_index_list(d)
    points = [term_point(d, Perm(images), j) for images, j in indices]
    matrix = []
    for images, j in indices:
        form = dual_form(d, Perm(images), j)
        matrix.append([form.at(p) for p in points])
    return indices, matrix


def separation_violations(d: int) -> list[tuple[int, int, Cyc]]:
    """Entries breaking the expected pattern: diagonal (-1)^((d+1)j) * d,
    zero off the diagonal. Empty means the pattern holds exactly."""
    indices, matrix = separation_matrix(d)
    zero = Cyc.zero(d)
    bad = []
    for r, (_, j) in enumerate(indices):
        expected_diag = Cyc.from_int(d, (-1) ** ((d + 1) * j) * d)
        for c in range(len(indices)):
            expected = expected_diag if r == c else zero
            if matrix[r][c] != expected:
                bad.append((r, c, matrix[r][c]))
    return bad


def check_separation(d: int) -> bool:
    return not separation_violations(d)


def check_promotion(d: int) -> bool:
    """The degree-d promoted functionals keep the separation pattern:
    nonzero at their own point, zero at all the others."""
    indices = term_index_list(d)
    points = [term_point(d, Perm(images), j) for images, j in indices]
    for r, (images, j) in enumerate(indices):
        form = promoted_dual_form(d, Perm(images), j)
        for c, p in enumerate(points):
            value = form.at(p)
            if (r == c) == value.is_zero:
                return False
    return True


def rank_of_rows(rows: list[dict]) -> int:
    """Exact rank of sparse vectors over the cyclotomic field. Row reduction
    pivots on each row's first nonzero position in sorted column order;
    exact arithmetic needs no pivot-size policy.

    Pivots are applied in creation order: each stored pivot row is already
    zero at every earlier pivot column, so a fully reduced row is zero at
    all of them and its leading column is guaranteed fresh.
    """
    pivots: list[tuple[object, dict]] = []
    for row in rows:
        work = dict(row)
        for col, pivot in pivots:
            factor = work.get(col)
            if factor is None or factor.is_zero:
                continue
            for c, v in pivot.items():
                delta = v * factor
                prior = work.get(c)
                updated = -delta if prior is None else prior - delta
                if updated.is_zero:
                    work.pop(c, None)
                else:
                    work[c] = updated
        work = {c: v for c, v in work.items() if not v.is_zero}
        if not work:
            continue
        lead = min(work)
        inv = work[lead].inverse()
        pivots.append((lead, {c: v * inv for c, v in work.items()}))
    return len(pivots)


def rank_oracle(d: int, allow_large: bool = False) -> int:
    """Rank of the expanded terms T_{sigma,j} in the degree-d monomial
    basis. d = 5 means exact elimination on a 600-row system and takes
    minutes; it is gated behind allow_large."""
    if d < 2 or d > 5 or (d == 5 and not allow_large):
        limit = "in [2, 5] with allow_large" if d == 5 else "in [2, 4]"
        raise ValueError(f"d must be {limit}, got {d}")
    dec = main_decomposition(d)
    rows = []
    for term in dec.terms:
        expanded = expand_power(term.form, term.exponent) * term.coeff
        rows.append(dict(expanded.terms))
    return rank_of_rows(rows)
