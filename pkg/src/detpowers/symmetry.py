"""Symmetries of the main decomposition.

The set M of monomial matrices w^k D^j P_sigma (D = diag(w, w^2, ..., w^d))
has a canonical normal form (k, j, sigma). Maps X -> w^m D^n P_pi X P_sigma
with pi affine permute M, hence permute the decomposition's terms; the
subgroup H of such maps that additionally preserve the determinant
multiplier acts by sign-preserving term bijections. The module provides the
normal form, membership testing, the affine characterization and its sign
formulas, subgroup enumeration with order bookkeeping, the term action, the
transpose closure test, and conjugation by arbitrary unimodular pairs.
"""

from __future__ import annotations

import dataclasses
import math
import random

from .cyclotomic import Cyc, omega
from .decompositions import (
    Perm,
    PowerDecomposition,
    PowerTerm,
    main_decomposition,
)
from .multipoly import LinForm

# value printed for |H| in the source table, per dimension
PRINTED_SUBGROUP_ORDERS = {2: 8, 3: 162, 4: 1536, 5: 37500, 6: 15552}


def euler_totient(d: int) -> int:
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    return sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1)


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n, by quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"n must be odd and positive, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def cycle_sign(perm: Perm) -> int:
    """Parity from the cycle decomposition: (-1)^(d - number of cycles)."""
    seen = [False] * perm.d
    cycles = 0
    for start in range(1, perm.d + 1):
        if seen[start - 1]:
            continue
        cycles += 1
        i = start
        while not seen[i - 1]:
            seen[i - 1] = True
            i = perm(i)
    return -1 if (perm.d - cycles) & 1 else 1


# ---------------------------------------------------------------------------
# monomial matrices and their normal form


@dataclasses.dataclass(frozen=True)
class MonoMatrix:
    """Canonical triple for w^k D^j P_sigma: entry w^(k+ij) at (i, sigma i)."""
    k: int
    j: int
    sigma: Perm

    def __post_init__(self):
        d = self.sigma.d
        if not (0 <= self.k < d and 0 <= self.j < d):
            raise ValueError("k and j must be reduced mod d")

    @property
    def d(self) -> int:
        return self.sigma.d

    def entry_exponents(self) -> tuple[int, ...]:
        """Exponent of w in the row-i entry, for i = 1..d."""
        d = self.d
        return tuple((self.k + i * self.j) % d for i in range(1, d + 1))

    def matrix(self) -> tuple[tuple[Cyc, ...], ...]:
        d = self.d
        zero = Cyc.zero(d)
        rows = []
        for i, t in zip(range(1, d + 1), self.entry_exponents()):
            row = [zero] * d
            row[self.sigma(i) - 1] = omega(d, t)
            rows.append(tuple(row))
        return tuple(rows)

    def transpose_matrix(self) -> tuple[tuple[Cyc, ...], ...]:
        m = self.matrix()
        d = self.d
        return tuple(tuple(m[c][r] for c in range(d)) for r in range(d))


def mono_membership_sparse(d: int, images: tuple[int, ...],
                           exponents: tuple[int, ...]) -> MonoMatrix | None:
    """Decide whether the monomial matrix with entry w^(exponents[i-1]) at
    (i, images[i-1]) lies in M, returning its normal form.

    Membership needs k, j with k + i*j = exponents[i-1] (mod d) for all i;
    the candidate j values are tried directly.
    """
    for j in range(d):
        k = (exponents[0] - j) % d
        if all((k + i * j) % d == t
               for i, t in enumerate(exponents[1:], start=2)):
            return MonoMatrix(k, j, Perm(images))
    return None


def mono_membership(matrix) -> MonoMatrix | None:
    """Normal form of an arbitrary square Cyc matrix if it lies in M.

    Decision: the support must be a permutation pattern, every nonzero
    entry must be a power of w, and the exponents must fit k + i*j.
    """
    d = len(matrix)
    images = []
    exponents = []
    for i in range(d):
        row = matrix[i]
        nonzero = [c for c in range(d) if row[c]]
        if len(nonzero) != 1:
            return None
        power = row[nonzero[0]].root_power()
        if power is None:
            return None
        images.append(nonzero[0] + 1)
        exponents.append(power)
    if sorted(images) != list(range(1, d + 1)):
        return None
    return mono_membership_sparse(d, tuple(images), tuple(exponents))


# ---------------------------------------------------------------------------
# affine permutations


@dataclasses.dataclass(frozen=True)
class AffinePerm:
    """The permutation i -> a*i + b mod d, with values taken in [1, d]."""
    a: int
    b: int
    d: int

    def __post_init__(self):
        if not (0 <= self.a < self.d and 0 <= self.b < self.d):
            raise ValueError("a and b must be reduced mod d")
        if math.gcd(self.a, self.d) != 1:
            raise ValueError(f"a = {self.a} is not a unit mod {self.d}")

    def __call__(self, i: int) -> int:
        return (self.a * i + self.b - 1) % self.d + 1

    def perm(self) -> Perm:
        return Perm(tuple(self(i) for i in range(1, self.d + 1)))

    def compose(self, other: "AffinePerm") -> "AffinePerm":
        """(a,b) o (a',b') = (aa', ab'+b): apply ``other`` first."""
        if other.d != self.d:
            raise ValueError("mixed moduli")
        return AffinePerm((self.a * other.a) % self.d,
                          (self.a * other.b + self.b) % self.d, self.d)

    def inverse(self) -> "AffinePerm":
        a_inv = pow(self.a, -1, self.d)
        return AffinePerm(a_inv, (-a_inv * self.b) % self.d, self.d)


def affine_group(d: int) -> list[AffinePerm]:
    """All d*phi(d) affine permutations, ordered by (a, b)."""
    return [AffinePerm(a, b, d)
            for a in range(d) if math.gcd(a, d) == 1
            for b in range(d)]


def is_affine(perm: Perm) -> bool:
    images = perm.images
    return any(aff.perm().images == images for aff in affine_group(perm.d))


def check_affine_characterization(d: int) -> bool:
    """P_pi * D lies in M exactly when pi is affine; and for affine
    sigma: i -> ai+b the identity P_sigma D = w^b D^a P_sigma holds."""
    if not 2 <= d <= 6:
        raise ValueError(f"d must be in [2, 6], got {d}")
    affine_images = {aff.perm().images for aff in affine_group(d)}
    for pi in Perm.all_perms(d):
        # P_pi * D has entry w^(pi i) at (i, pi i)
        exponents = tuple(pi(i) % d for i in range(1, d + 1))
        member = mono_membership_sparse(d, pi.images, exponents)
        if (member is not None) != (pi.images in affine_images):
            return False
    for aff in affine_group(d):
        sigma = aff.perm()
        exponents = tuple(sigma(i) % d for i in range(1, d + 1))
        member = mono_membership_sparse(d, sigma.images, exponents)
        if member is None:
            return False
        if member.k != aff.b % d or member.j != aff.a % d:
            return False
        if member.sigma != sigma:
            return False
    return True


def check_sign_formulas(d: int) -> bool:
    """Shift parity (-1)^(b(d+1)) and multiplication parity (the Jacobi
    symbol for odd d, (-1)^((d/2+1)(a-1)/2) for even d), both against the
    cycle-decomposition sign."""
    if not 2 <= d <= 12:
        raise ValueError(f"d must be in [2, 12], got {d}")
    for b in range(d):
        shift = AffinePerm(1, b, d).perm()
        if cycle_sign(shift) != (-1) ** (b * (d + 1)):
            return False
    for a in range(1, d):
        if math.gcd(a, d) != 1:
            continue
        mult = AffinePerm(a, 0, d).perm()
        if d % 2 == 1:
            expected = jacobi_symbol(a, d)
        else:
            expected = (-1) ** ((d // 2 + 1) * (a - 1) // 2)
        if cycle_sign(mult) != expected:
            return False
    return True


# ---------------------------------------------------------------------------
# the symmetry group


@dataclasses.dataclass(frozen=True)
class SymElement:
    """The map X -> w^m D^n P_pi X P_sigma."""
    m: int
    n: int
    pi: AffinePerm
    sigma: Perm

    @property
    def d(self) -> int:
        return self.sigma.d

    def signature(self) -> tuple:
        """Canonical description of the induced variable map: the image
        entry (r, c) equals w^(m + n r) X[pi r, sigma^-1 c]."""
        d = self.d
        inv_sigma = self.sigma.inverse()
        return tuple(((self.m + self.n * r) % d, self.pi(r), inv_sigma(c))
                     for r in range(1, d + 1) for c in range(1, d + 1))

    def compose(self, other: "SymElement") -> "SymElement":
        """The element inducing ``self`` applied after ``other``.

        Pulling other's phase through self's row permutation (an affine
        map r -> ar + b) gives the semidirect-product law
        m'' = m2 + m1 + n1*b, n'' = n2 + n1*a, pi'' = pi1 o pi2,
        sigma''^-1 = sigma1^-1 o sigma2^-1 (subscript 2 = self, 1 = other).
        """
        d = self.d
        if other.d != d:
            raise ValueError("mixed dimensions")
        return SymElement(
            (self.m + other.m + other.n * self.pi.b) % d,
            (self.n + other.n * self.pi.a) % d,
            other.pi.compose(self.pi),
            other.sigma.then(self.sigma))

    def determinant_multiplier(self) -> Cyc:
        """det of the image over det of the source: w^(dm) det(D)^n times
        the two permutation signs, computed honestly from det(D) = w^(1+2+...+d)."""
        d = self.d
        det_d_power = omega(d, self.n * math.comb(d + 1, 2))
        value = omega(d, d * self.m) * det_d_power
        return value * (cycle_sign(self.pi.perm()) * cycle_sign(self.sigma))


@dataclasses.dataclass(frozen=True)
class SymmetryEnumeration:
    d: int
    full_order: int          # |H~|, all (m, n, pi, sigma)
    preserving_order: int    # |H|, multiplier +1
    reversing_order: int
    formula_order: int       # d^3 phi(d) d! / 2
    printed_order: int | None
    faithful: bool | None    # None when the check was skipped (order-only)
    elements: tuple[SymElement, ...] | None

    @property
    def matches_formula(self) -> bool:
        return self.preserving_order == self.formula_order

    @property
    def matches_printed(self) -> bool | None:
        if self.printed_order is None:
            return None
        return self.preserving_order == self.printed_order


def check_faithfulness(d: int) -> bool:
    """No two tuples (m, n, pi, sigma) induce the same variable map.

    A signature carries pi and sigma^-1 verbatim, so two signatures can only
    collide when pi and sigma agree; it then suffices that distinct (m, n)
    give distinct phase sequences (m + n*r mod d). For d <= 4 the full
    signature sets are also built directly, cross-checking that reduction.
    """
    phases = {tuple((m + n * r) % d for r in range(1, d + 1))
              for m in range(d) for n in range(d)}
    if len(phases) != d * d:
        return False
    if d <= 4:
        signatures = set()
        total = 0
        for m in range(d):
            for n in range(d):
                for pi in affine_group(d):
                    for sigma in Perm.all_perms(d):
                        signatures.add(SymElement(m, n, pi, sigma).signature())
                        total += 1
        return len(signatures) == total
    return True


def enumerate_symmetries(d: int, with_elements: bool = True,
                         check_faithful: bool = True) -> SymmetryEnumeration:
    """Walk all (m, n, pi, sigma), split by determinant multiplier, and
    compare |H| against both the closed formula and the printed table.

    For d = 6 call with with_elements=False (order-only mode); the full
    element list is supported for d <= 5.
    """
    if not 2 <= d <= 6:
        raise ValueError(f"d must be in [2, 6], got {d}")
    if with_elements and d > 5:
        raise ValueError("element lists are limited to d <= 5")
    one = Cyc.one(d)
    minus_one = Cyc.from_int(d, -1)
    preserving = 0
    reversing = 0
    elements = [] if with_elements else None
    total = 0
    for m in range(d):
        for n in range(d):
            for pi in affine_group(d):
                for sigma in Perm.all_perms(d):
                    elem = SymElement(m, n, pi, sigma)
                    total += 1
                    mult = elem.determinant_multiplier()
                    if mult == one:
                        preserving += 1
                    elif mult == minus_one:
                        reversing += 1
                    else:
                        raise ArithmeticError(
                            f"multiplier {mult!r} is not a sign")
                    if elements is not None:
                        elements.append(elem)
    faithful = check_faithfulness(d) if check_faithful else None
    return SymmetryEnumeration(
        d=d, full_order=total, preserving_order=preserving,
        reversing_order=reversing,
        formula_order=d ** 3 * euler_totient(d) * math.factorial(d) // 2,
        printed_order=PRINTED_SUBGROUP_ORDERS.get(d),
        faithful=faithful,
        elements=tuple(elements) if elements is not None else None)


# ---------------------------------------------------------------------------
# action on the decomposition


@dataclasses.dataclass(frozen=True)
class ActionOutcome:
    bijection: bool
    preserved: int
    flipped: int
    structural_failures: int

    @property
    def sign_preserving(self) -> bool:
        return self.bijection and self.flipped == 0 \
            and self.structural_failures == 0

    @property
    def sign_reversing(self) -> bool:
        return self.bijection and self.preserved == 0 \
            and self.structural_failures == 0 and self.flipped > 0


def apply_symmetry(h: SymElement, dec: PowerDecomposition) -> ActionOutcome:
    """Map each term's coefficient matrix through h, renormalize (the w^k
    scalar dies in the d-th power), find which term the image is, and
    compare the +-1 coefficients."""
    if dec.scheme != "main":
        raise ValueError("the symmetry action is defined for the main scheme")
    d = dec.d
    if h.d != d:
        raise ValueError("element dimension does not match the decomposition")
    coeff_by_index = {t.index: t.coeff for t in dec.terms}
    seen_images = set()
    preserved = flipped = failures = 0
    for term in dec.terms:
        images, j = term.index
        source = Perm(images)
        # image entry (r, c): w^(m + nr) * A[pi r, sigma^-1 c]; A has entry
        # w^(j * pi r) at (pi r, source(pi r)), so the image row r holds
        # w^(m + nr + j*pi r) at column sigma(source(pi r))
        img_images = []
        img_exponents = []
        for r in range(1, d + 1):
            pr = h.pi(r)
            img_images.append(h.sigma(source(pr)))
            img_exponents.append((h.m + h.n * r + j * pr) % d)
        member = mono_membership_sparse(d, tuple(img_images),
                                        tuple(img_exponents))
        if member is None:
            failures += 1
            continue
        image_j = member.j if member.j else d
        image_index = (member.sigma.images, image_j)
        seen_images.add(image_index)
        if coeff_by_index[image_index] == term.coeff:
            preserved += 1
        else:
            flipped += 1
    return ActionOutcome(
        bijection=len(seen_images) == len(dec.terms) and failures == 0,
        preserved=preserved, flipped=flipped, structural_failures=failures)


def check_symmetry_action(d: int) -> bool:
    """Every element of H acts as a sign-preserving term bijection."""
    if not 2 <= d <= 4:
        raise ValueError(f"d must be in [2, 4], got {d}")
    dec = main_decomposition(d)
    enum = enumerate_symmetries(d, with_elements=True, check_faithful=False)
    one = Cyc.one(d)
    for elem in enum.elements:
        if elem.determinant_multiplier() != one:
            continue
        if not apply_symmetry(elem, dec).sign_preserving:
            return False
    return True


def sample_symmetry_actions(d: int, count: int, seed: int = 0) -> dict:
    """Random elements of H~ acted on the decomposition: preserving
    elements must be sign-preserving, reversing ones sign-reversing."""
    rng = random.Random(seed)
    dec = main_decomposition(d)
    aff = affine_group(d)
    perms = list(Perm.all_perms(d))
    one = Cyc.one(d)
    stats = {"checked": 0, "preserving_ok": 0, "reversing_ok": 0, "bad": 0}
    for _ in range(count):
        elem = SymElement(rng.randrange(d), rng.randrange(d),
                          rng.choice(aff), rng.choice(perms))
        outcome = apply_symmetry(elem, dec)
        stats["checked"] += 1
        if elem.determinant_multiplier() == one:
            key = "preserving_ok" if outcome.sign_preserving else "bad"
        else:
            key = "reversing_ok" if outcome.sign_reversing else "bad"
        stats[key] += 1
    return stats


# ---------------------------------------------------------------------------
# transpose closure and conjugation


def transpose_closure(d: int) -> tuple[bool, list[tuple[int, tuple[int, ...]]]]:
    """Is M closed under transposition? Returns the verdict and the list of
    (j, sigma images) whose transpose leaves M (k is irrelevant: it scales
    the whole matrix and survives transposition unchanged)."""
    if not 2 <= d <= 6:
        raise ValueError(f"d must be in [2, 6], got {d}")
    witnesses = []
    for sigma in Perm.all_perms(d):
        inv = sigma.inverse()
        for j in range(d):
            # transpose of D^j P_sigma has entry w^(j * inv(r)) at (r, inv r)
            exponents = tuple((j * inv(r)) % d for r in range(1, d + 1))
            if mono_membership_sparse(d, inv.images, exponents) is None:
                witnesses.append((j, sigma.images))
    return not witnesses, witnesses


def matrix_product(a, b, order: int):
    d = len(a)
    zero = Cyc.zero(order)
    out = []
    for r in range(d):
        row = []
        for c in range(d):
            total = zero
            for k in range(d):
                total = total + a[r][k] * b[k][c]
            row.append(total)
        out.append(tuple(row))
    return tuple(out)


def matrix_determinant(m, order: int) -> Cyc:
    d = len(m)
    total = Cyc.zero(order)
    for perm in Perm.all_perms(d):
        prod = Cyc.one(order)
        for r in range(1, d + 1):
            prod = prod * m[r - 1][perm(r) - 1]
        total = total + prod * perm.sign
    return total


def conjugate_decomposition(a, b, dec: PowerDecomposition) -> PowerDecomposition:
    """Replace each term's coefficient matrix C by a*C*b. Requires
    det(a*b) = 1, which keeps the target determinant unscaled."""
    order = dec.order
    d = dec.d
    if matrix_determinant(matrix_product(a, b, order), order) != Cyc.one(order):
        raise ValueError("det(a*b) must be exactly 1")
    new_terms = []
    for term in dec.terms:
        coeffs = tuple(tuple(term.form.entry(r, c) for c in range(1, d + 1))
                       for r in range(1, d + 1))
        image = matrix_product(matrix_product(a, coeffs, order), b, order)
        entries = {(r, c): image[r - 1][c - 1]
                   for r in range(1, d + 1) for c in range(1, d + 1)
                   if not image[r - 1][c - 1].is_zero}
        form = LinForm.from_entries(order, d, entries)
        new_terms.append(PowerTerm(term.index, term.coeff, form,
                                   term.exponent))
    return PowerDecomposition(d, "conjugated", dec.scale, dec.target, order,
                              tuple(new_terms))
