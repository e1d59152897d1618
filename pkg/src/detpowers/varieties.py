"""Quadric equations cutting out the scaled permutation matrices.

The projective points [D^j P_sigma] are the common zeros of three families
of quadrics: products of two entries in a common row, products of two
entries in a common column, and rho_i^2 - rho_{i-1} rho_{i+1} in the row
sums rho_i (indices cyclic mod d). The module builds the families exactly,
checks vanishing on the point set, constructs the extra generator families
recorded for d = 3 and d = 4 together with vanishing and reduction reports,
and counts the GF(p) solution locus by brute force to test the converse
direction at desk scale. The d = 4 square family is reproduced exactly as
stated; it does not vanish on the point set, and its report keeps explicit
failure witnesses rather than papering over the discrepancy.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from .cyclotomic import Cyc, PrimeScalar, omega
from .decompositions import Perm
from .multipoly import (
    Monomial,
    SparsePoly,
    mono_degree,
    monomial,
    permanent_poly,
)

FULL_SPACE_LIMIT = 10 ** 8      # largest p^(d^2) allowed in full mode
STAGED_LIMIT = 10 ** 6          # largest d! (p-1)^d allowed in staged mode
_BLOCK_LIMIT = 2_000_000        # rows held in one vectorized block


def _wrap(i: int, d: int) -> int:
    return (i - 1) % d + 1


def _row_sum_poly(d: int, i: int) -> SparsePoly:
    total = SparsePoly.zero(d)
    for j in range(1, d + 1):
        total = total + SparsePoly.variable(d, (_wrap(i, d), j))
    return total


@dataclasses.dataclass(frozen=True)
class QuadricSet:
    """The three quadric families, in fixed partition order."""
    d: int
    row_monomials: tuple[SparsePoly, ...]
    column_monomials: tuple[SparsePoly, ...]
    rho_quadrics: tuple[SparsePoly, ...]

    def __post_init__(self):
        d = self.d
        pairs = math.comb(d, 2)
        if len(self.row_monomials) != d * pairs:
            raise ValueError("wrong number of row monomial generators")
        if len(self.column_monomials) != d * pairs:
            raise ValueError("wrong number of column monomial generators")
        if len(self.rho_quadrics) != d:
            raise ValueError("wrong number of row-sum quadrics")
        for poly in self.generators:
            if poly.is_zero or any(mono_degree(m) != 2
                                   for m in poly.monomials()):
                raise ValueError("generators must be homogeneous of degree 2")

    @property
    def generators(self) -> tuple[SparsePoly, ...]:
        return self.row_monomials + self.column_monomials + self.rho_quadrics


def quadric_generators(d: int) -> QuadricSet:
    """Row products x[i,j1]x[i,j2], column products x[i1,j]x[i2,j], and the
    cyclic row-sum quadrics rho_i^2 - rho_{i-1} rho_{i+1}."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    one = Cyc.one(d)
    rows = tuple(
        SparsePoly(d, {monomial({(i, j1): 1, (i, j2): 1}): one})
        for i in range(1, d + 1)
        for j1, j2 in itertools.combinations(range(1, d + 1), 2))
    cols = tuple(
        SparsePoly(d, {monomial({(i1, j): 1, (i2, j): 1}): one})
        for j in range(1, d + 1)
        for i1, i2 in itertools.combinations(range(1, d + 1), 2))
    sums = [_row_sum_poly(d, i) for i in range(0, d + 2)]
    rho = tuple(sums[i] * sums[i] - sums[i - 1] * sums[i + 1]
                for i in range(1, d + 1))
    return QuadricSet(d, rows, cols, rho)


# ---------------------------------------------------------------------------
# the point set and vanishing checks


def point_assignment(d: int, j: int, sigma: Perm) -> dict:
    """Sparse coordinates of D^j P_sigma: w^(ij) at (i, sigma i)."""
    return {(i, sigma(i)): omega(d, i * j) for i in range(1, d + 1)}


def point_set(d: int):
    """All d * d! pairs (j, sigma) indexing the matrices D^j P_sigma."""
    return ((j, sigma) for j in range(d) for sigma in Perm.all_perms(d))


def _family_violations(polys, d: int, cap: int = 12):
    """Count evaluation failures of the given polynomials over the point
    set, keeping at most ``cap`` witnesses (poly position, j, sigma)."""
    count = 0
    witnesses = []
    for j, sigma in point_set(d):
        coords = point_assignment(d, j, sigma)
        for pos, poly in enumerate(polys):
            if not poly.evaluate(coords).is_zero:
                count += 1
                if len(witnesses) < cap:
                    witnesses.append((pos, j, sigma.images))
    return count, tuple(witnesses)


def vanish_on_points(d: int) -> bool:
    """Do all three quadric families vanish at every point D^j P_sigma?"""
    if not 2 <= d <= 6:
        raise ValueError(f"d must be in [2, 6], got {d}")
    count, _ = _family_violations(quadric_generators(d).generators, d, cap=1)
    return count == 0


# ---------------------------------------------------------------------------
# extra generators for d = 3 and d = 4


@dataclasses.dataclass(frozen=True)
class ReductionReport:
    """Outcome of rewriting each row-sum quadric as a combination of the
    square generators modulo the monomial quadrics (d = 3 only)."""
    coefficients: tuple[tuple[Fraction, ...], ...]
    solvable: bool
    residual_contained: bool
    natural_combination: bool


@dataclasses.dataclass(frozen=True)
class ExtraGeneratorReport:
    d: int
    squares: tuple[SparsePoly, ...]
    square_labels: tuple[tuple[int, ...], ...]
    squares_vanish: bool
    square_failure_count: int
    square_failures: tuple[tuple, ...]
    differences: tuple[SparsePoly, ...]
    difference_labels: tuple[tuple, ...]
    raw_difference_count: int
    differences_vanish: bool
    reduction: ReductionReport | None


def _square_poly(d: int, i: int, j: int) -> SparsePoly:
    return SparsePoly(d, {monomial({(i, j): 2}): Cyc.one(d)})


def _monomial_in_quadric_ideal(m: Monomial) -> bool:
    """Is the degree-2 monomial divisible by a row or column product of two
    distinct entries?"""
    if len(m) != 2:
        return False
    (i1, j1, _), (i2, j2, _) = m
    return i1 == i2 or j1 == j2


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Particular rational solution of rows * c = rhs (free variables set
    to zero), or None when the system is inconsistent."""
    if not rows:
        return []
    width = len(rows[0])
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivot_cols = []
    rank = 0
    for col in range(width):
        pivot = next((k for k in range(rank, len(aug)) if aug[k][col]), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        scale = aug[rank][col]
        aug[rank] = [v / scale for v in aug[rank]]
        for k in range(len(aug)):
            if k != rank and aug[k][col]:
                factor = aug[k][col]
                aug[k] = [v - factor * w for v, w in zip(aug[k], aug[rank])]
        pivot_cols.append(col)
        rank += 1
        if rank == len(aug):
            break
    if any(row[width] for row in aug[rank:]):
        return None
    solution = [Fraction(0)] * width
    for r, col in enumerate(pivot_cols):
        solution[col] = aug[r][width]
    return solution


def _rational_coefficient(value: Cyc) -> Fraction:
    rat = value.rational()
    if rat is None:
        raise ArithmeticError(f"non-rational coefficient {value!r}")
    return rat


def _residual_contained(residual: SparsePoly) -> bool:
    return all(_monomial_in_quadric_ideal(m) for m in residual.monomials())


def _combine(target: SparsePoly, squares, coefficients) -> SparsePoly:
    residual = target
    for poly, c in zip(squares, coefficients):
        if c:
            residual = residual - poly * c
    return residual


def _reduce_rho_quadrics(qs: QuadricSet, squares, labels) -> ReductionReport:
    """Solve, exactly over the rationals, for a combination of the square
    generators matching each row-sum quadric on every monomial outside the
    monomial-quadric ideal; then confirm the residual support really is
    contained, and that unit coefficients on the matching row do the job."""
    forbidden = sorted(
        {m for poly in (*squares, *qs.rho_quadrics) for m in poly.monomials()
         if not _monomial_in_quadric_ideal(m)})
    matrix = [[_rational_coefficient(g.coefficient(m)) for g in squares]
              for m in forbidden]
    all_coeffs = []
    solvable = True
    contained = True
    natural = True
    for i, target in enumerate(qs.rho_quadrics, start=1):
        rhs = [_rational_coefficient(target.coefficient(m)) for m in forbidden]
        solution = _solve_exact(matrix, rhs)
        if solution is None:
            solvable = False
            all_coeffs.append(tuple(Fraction(0) for _ in squares))
            contained = False
            continue
        all_coeffs.append(tuple(solution))
        if not _residual_contained(_combine(target, squares, solution)):
            contained = False
        unit = [Fraction(1) if label[0] == i else Fraction(0)
                for label in labels]
        if not _residual_contained(_combine(target, squares, unit)):
            natural = False
    return ReductionReport(
        coefficients=tuple(all_coeffs), solvable=solvable,
        residual_contained=contained, natural_combination=natural)


def _extra_generators_d3():
    d = 3
    squares = []
    labels = []
    for i in range(1, 4):
        for j in range(1, 4):
            rows = tuple(r for r in range(1, 4) if r != i)
            cols = tuple(c for c in range(1, 4) if c != j)
            squares.append(_square_poly(d, i, j)
                           - permanent_poly(rows, cols, order=d))
            labels.append((i, j))
    return tuple(squares), tuple(labels)


def _extra_generators_d4():
    d = 4
    squares = []
    labels = []
    for i in range(1, 5):
        perm_rows = tuple(sorted((_wrap(i - 1, d), _wrap(i + 1, d))))
        for j1, j2 in itertools.combinations(range(1, 5), 2):
            perm_cols = tuple(c for c in range(1, 5) if c not in (j1, j2))
            squares.append(_square_poly(d, i, j1) + _square_poly(d, i, j2)
                           - permanent_poly(perm_rows, perm_cols, order=d))
            labels.append((i, j1, j2))
    # permanent differences: excluded row pairs with equal sums mod 4
    row_pairs = [pair for pair in itertools.combinations(range(1, 5), 2)
                 if (sum(pair) - sum(r for r in range(1, 5)
                                     if r not in pair)) % 4 == 0]
    # the four qualifying subsets each occur once as the excluded rows,
    # covering both orientations of both balanced partitions
    ordered_rows = []
    for pair in row_pairs:
        comp = tuple(r for r in range(1, 5) if r not in pair)
        ordered_rows.append((pair, comp))
    # each 2-subset occurs once as the excluded column pair, so the six
    # subsets give the six ordered column splits
    ordered_cols = []
    for pair in itertools.combinations(range(1, 5), 2):
        comp = tuple(c for c in range(1, 5) if c not in pair)
        ordered_cols.append((pair, comp))
    raw = []
    raw_labels = []
    for ex_rows, other_rows in ordered_rows:
        for ex_cols, other_cols in ordered_cols:
            # P_{ex_rows; ex_cols} is the permanent over the complements
            gen = permanent_poly(other_rows, other_cols, order=d) \
                - permanent_poly(ex_rows, ex_cols, order=d)
            raw.append(gen)
            raw_labels.append((ex_rows, ex_cols))
    deduped = []
    deduped_labels = []
    for gen, (ex_rows, ex_cols) in zip(raw, raw_labels):
        if 1 in ex_rows:
            deduped.append(gen)
            deduped_labels.append((ex_rows, ex_cols))
    return (tuple(squares), tuple(labels), tuple(raw),
            tuple(deduped), tuple(deduped_labels))


def extra_generators(d: int) -> ExtraGeneratorReport:
    """The extra generator families for d = 3 (entry squares minus the
    complementary 2x2 permanents) and d = 4 (square pairs minus permanents,
    and permanent differences over balanced index splits), with vanishing
    checks over the full point set."""
    if d == 3:
        squares, labels = _extra_generators_d3()
        fail_count, witnesses = _family_violations(squares, d)
        qs = quadric_generators(3)
        reduction = _reduce_rho_quadrics(qs, squares, labels)
        return ExtraGeneratorReport(
            d=3, squares=squares, square_labels=labels,
            squares_vanish=fail_count == 0,
            square_failure_count=fail_count, square_failures=witnesses,
            differences=(), difference_labels=(), raw_difference_count=0,
            differences_vanish=True, reduction=reduction)
    if d == 4:
        squares, labels, raw, deduped, dlabels = _extra_generators_d4()
        fail_count, witnesses = _family_violations(squares, d)
        diff_fail_count, _ = _family_violations(raw, d, cap=1)
        return ExtraGeneratorReport(
            d=4, squares=squares, square_labels=labels,
            squares_vanish=fail_count == 0,
            square_failure_count=fail_count, square_failures=witnesses,
            differences=deduped, difference_labels=dlabels,
            raw_difference_count=len(raw),
            differences_vanish=diff_fail_count == 0, reduction=None)
    raise ValueError(f"extra generators are recorded for d in {{3, 4}}, "
                     f"got {d}")


# ---------------------------------------------------------------------------
# finite-field locus counting


@dataclasses.dataclass(frozen=True)
class LocusCount:
    d: int
    p: int
    mode: str
    affine_solutions: int
    projective_points: int
    expected: int

    @property
    def matches_expected(self) -> bool:
        return self.projective_points == self.expected


def _full_block_count(args) -> int:
    """Solutions of all quadrics among matrices whose leading entries are
    fixed to ``block`` and whose remaining entries range over GF(p)."""
    d, p, block = args
    cells = d * d
    fixed = len(block)
    tail = cells - fixed
    size = p ** tail
    idx = np.arange(size, dtype=np.int64)
    values = list(block)
    for k in range(tail):
        values.append(((idx // p ** k) % p).astype(np.int32))
    def cell(i, j):
        return values[(i - 1) * d + (j - 1)]
    mask = np.ones(size, dtype=bool)
    for i in range(1, d + 1):
        for j1, j2 in itertools.combinations(range(1, d + 1), 2):
            mask &= (cell(i, j1) * cell(i, j2)) % p == 0
    for j in range(1, d + 1):
        for i1, i2 in itertools.combinations(range(1, d + 1), 2):
            mask &= (cell(i1, j) * cell(i2, j)) % p == 0
    rho = [None] * (d + 2)
    for i in range(1, d + 1):
        rho[i] = sum(cell(i, j) for j in range(1, d + 1)) % p
    rho[0] = rho[d]
    rho[d + 1] = rho[1]
    for i in range(1, d + 1):
        mask &= (rho[i] * rho[i] - rho[i - 1] * rho[i + 1]) % p == 0
    return int(np.count_nonzero(mask))


def _full_affine_count(d: int, p: int, jobs: int) -> int:
    cells = d * d
    fixed = 0
    while p ** (cells - fixed) > _BLOCK_LIMIT:
        fixed += 1
    blocks = [(d, p, block)
              for block in itertools.product(range(p), repeat=fixed)]
    if jobs > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            total = sum(pool.map(_full_block_count, blocks,
                                 chunksize=max(1, len(blocks) // (4 * jobs))))
    else:
        total = sum(_full_block_count(args) for args in blocks)
    return total - 1  # the zero matrix satisfies everything


def _poly_value_mod_p(poly: SparsePoly, coords: dict, p: int) -> PrimeScalar:
    total = PrimeScalar(p, 0)
    for m, c in poly.terms.items():
        rat = _rational_coefficient(c)
        if rat.denominator != 1:
            raise ArithmeticError(f"non-integral coefficient {rat}")
        value = PrimeScalar(p, int(rat))
        for i, j, e in m:
            coord = coords.get((i, j))
            if coord is None or coord.is_zero:
                value = None
                break
            value = value * coord ** e
        if value is not None:
            total = total + value
    return total


@functools.lru_cache(maxsize=None)
def _staged_solutions(d: int, p: int):
    """Support-restricted candidates Delta P_sigma over GF(p) surviving all
    generators. The monomial quadrics are evaluated too, as a consistency
    check: they must vanish identically on these supports."""
    qs = quadric_generators(d)
    monomial_gens = qs.row_monomials + qs.column_monomials
    solutions = []
    for sigma in Perm.all_perms(d):
        for deltas in itertools.product(range(1, p), repeat=d):
            coords = {(i, sigma(i)): PrimeScalar(p, deltas[i - 1])
                      for i in range(1, d + 1)}
            for gen in monomial_gens:
                if not _poly_value_mod_p(gen, coords, p).is_zero:
                    raise ArithmeticError(
                        "a monomial quadric failed on a one-entry-per-row "
                        "support; the staged construction is wrong")
            if all(_poly_value_mod_p(gen, coords, p).is_zero
                   for gen in qs.rho_quadrics):
                solutions.append((sigma.images, deltas))
    return tuple(solutions)


def check_geometric_ratios(d: int, p: int) -> bool:
    """Every staged solution's diagonal is a geometric progression whose
    ratio is a d-th root of unity in GF(p)."""
    solutions = _staged_solutions(d, p)
    if not solutions:
        return False
    for _, deltas in solutions:
        values = [PrimeScalar(p, v) for v in deltas]
        ratio = values[1] / values[0] if d > 1 else PrimeScalar(p, 1)
        if any(values[i + 1] != values[i] * ratio
               for i in range(d - 1)):
            return False
        if ratio ** d != 1:
            return False
        # cyclic wrap: the same ratio carries the last entry to the first
        if values[0] != values[d - 1] * ratio:
            return False
    return True


def finite_field_locus_count(d: int, p: int, mode: str = "auto",
                             jobs: int = 1) -> LocusCount:
    """Projective count of GF(p) solutions of all quadric generators.

    Full mode enumerates every matrix (needs p^(d^2) <= 10^8); staged mode
    walks only the supports with one nonzero entry per row and column,
    which the monomial quadrics force, and applies the row-sum quadrics.
    """
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    PrimeScalar(p, 0)  # validates primality
    if (p - 1) % d != 0:
        raise ValueError(f"d = {d} must divide p - 1 = {p - 1} so that "
                         f"GF({p}) has the needed roots of unity")
    if mode == "auto":
        mode = "full" if p ** (d * d) <= FULL_SPACE_LIMIT else "staged"
    if mode == "full":
        if p ** (d * d) > FULL_SPACE_LIMIT:
            raise ValueError(f"full mode needs p^(d^2) <= {FULL_SPACE_LIMIT}")
        affine = _full_affine_count(d, p, jobs)
    elif mode == "staged":
        if math.factorial(d) * (p - 1) ** d > STAGED_LIMIT:
            raise ValueError(f"staged mode needs d! (p-1)^d <= {STAGED_LIMIT}")
        affine = len(_staged_solutions(d, p))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if affine % (p - 1) != 0:
        raise ArithmeticError(
            f"affine count {affine} is not divisible by p - 1 = {p - 1}; "
            f"the locus is not scalar-invariant")
    return LocusCount(d=d, p=p, mode=mode, affine_solutions=affine,
                      projective_points=affine // (p - 1),
                      expected=d * math.factorial(d))
