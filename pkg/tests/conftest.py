"""Shared generators and independent oracles for the test suite.

Oracles here recompute expected values by routes independent of the code
under test (permutation-sum determinants, Laplace expansion over
polynomial entries, literal axiom searches), so agreement is evidence
rather than tautology.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from hiranoinv import Polynomial, Q, SquareMatrix


@pytest.fixture
def rng():
    return random.Random(20260810)


# ---------------------------------------------------------------------------
# independent oracles


def perm_det(a: SquareMatrix):
    """Permutation-sum determinant; independent of the library's route."""
    ring = a.ring
    k = a.dim
    total = ring.zero()
    for perm in permutations(range(k)):
        sign = 1
        seen = list(perm)
        for i in range(k):  # count inversions
            for j in range(i + 1, k):
                if seen[i] > seen[j]:
                    sign = -sign
        term = ring.one()
        for i in range(k):
            term = ring.mul(term, a.rows[i][perm[i]])
        total = ring.add(total, term if sign == 1 else ring.neg(term))
    return total


def naive_char_poly(a: SquareMatrix) -> Polynomial:
    """det(tI - A) by cofactor expansion over polynomial entries."""
    ring = a.ring
    k = a.dim
    cells = [
        [
            Polynomial(ring, (ring.neg(a.rows[i][j]),) if i != j else (ring.neg(a.rows[i][j]), ring.one()))
            for j in range(k)
        ]
        for i in range(k)
    ]

    def pdet(rows):
        if len(rows) == 1:
            return rows[0][0]
        total = Polynomial.zero(ring)
        for j, cell in enumerate(rows[0]):
            minor = [[r[c] for c in range(len(r)) if c != j] for r in rows[1:]]
            term = cell * pdet(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return pdet(cells)


def search_hirano_small(a: SquareMatrix, values) -> list[SquareMatrix]:
    """All b over the given entry values passing the cheap necessary axioms
    (fixed point, commuting, nilpotent square gap); superset filter for
    nonexistence arguments over Q."""
    found = []
    k = a.dim
    for flat in product(values, repeat=k * k):
        b = SquareMatrix(a.ring, [flat[i * k : (i + 1) * k] for i in range(k)])
        if b * a * b != b or a * b != b * a:
            continue
        if not (a * a - a * b).is_quasinilpotent():
            continue
        found.append(b)
    return found


# ---------------------------------------------------------------------------
# random families


def rand_matrix(rng, ring, k, lo=-4, hi=4) -> SquareMatrix:
    return SquareMatrix(
        ring, [[ring.element(rng.randint(lo, hi)) for _ in range(k)] for _ in range(k)]
    )


def rand_unimodular(rng, ring, k, lo=-2, hi=2) -> SquareMatrix:
    """L U with unit diagonals: determinant one, exactly invertible."""
    lower = [[ring.element(rng.randint(lo, hi)) if i > j else (ring.one() if i == j else ring.zero()) for j in range(k)] for i in range(k)]
    upper = [[ring.element(rng.randint(lo, hi)) if i < j else (ring.one() if i == j else ring.zero()) for j in range(k)] for i in range(k)]
    return SquareMatrix(ring, lower) * SquareMatrix(ring, upper)


def rand_hirano_friendly(rng, k, ring=Q) -> SquareMatrix:
    """Conjugated triangular matrix with diagonal in {0, 1, -1}: its inverse
    exists by the spectral criterion."""
    diag = [rng.choice([0, 1, -1]) for _ in range(k)]
    rows = [
        [
            ring.element(diag[i]) if i == j else (ring.element(rng.randint(-2, 2)) if j > i else ring.zero())
            for j in range(k)
        ]
        for i in range(k)
    ]
    t = SquareMatrix(ring, rows)
    s = rand_unimodular(rng, ring, k)
    return s * t * s.try_inverse()


def strict_upper_nilpotent(rng, ring, k) -> SquareMatrix:
    rows = [
        [ring.element(rng.randint(-2, 2)) if j > i else ring.zero() for j in range(k)]
        for i in range(k)
    ]
    return SquareMatrix(ring, rows)


def signed_unipotent(rng, ring, k) -> SquareMatrix:
    """Invertible with spectrum in {1, -1}: signs on the diagonal plus
    strictly upper junk."""
    rows = [
        [
            ring.element(rng.choice([1, -1])) if i == j else (ring.element(rng.randint(-2, 2)) if j > i else ring.zero())
            for j in range(k)
        ]
        for i in range(k)
    ]
    return SquareMatrix(ring, rows)


def additive_hypothesis_pair(rng, k, ring=Q):
    """A pair (a, b) satisfying the additive series hypotheses by construction.

    b = core (spectrum +-1) + quasinilpotent part; a reads only b's
    quasinilpotent rows, and inside that corner a splits into a core of its
    own plus a nilpotent commuting with b's tail.  Conjugated by a random
    unimodular so nothing is visibly block shaped.
    """
    while True:
        kp = rng.randint(0, k - 1)
        kr = k - kp
        kq = rng.randint(0, kr)
        kt = kr - kq
        if kr >= 1:
            break
    b1 = signed_unipotent(rng, ring, kp) if kp else None
    alpha = signed_unipotent(rng, ring, kq) if kq else None
    nu = strict_upper_nilpotent(rng, ring, kt) if kt else None

    # a's corner: diag(alpha, nu); b's corner: [[0, c2], [0, t2]] with t2 a
    # multiple-of-powers of nu so the two tails commute.
    if kq and kt:
        c2 = rand_matrix(rng, ring, max(kq, kt), -2, 2)
        c2rect = [[c2.rows[i][j] for j in range(kt)] for i in range(kq)]
    else:
        c2rect = None
    t2 = None
    if kt:
        t2 = SquareMatrix.zero(ring, kt)
        power = nu
        for _ in range(2):
            t2 = t2 + power.scale(rng.randint(-1, 1))
            power = power * nu
    # assemble the kr x kr corners
    zero = ring.zero()
    a2_rows, b2_rows = [], []
    for i in range(kr):
        arow, brow = [], []
        for j in range(kr):
            if i < kq and j < kq:
                arow.append(alpha.rows[i][j])
                brow.append(zero)
            elif i < kq <= j:
                arow.append(zero)
                brow.append(c2rect[i][j - kq] if c2rect else zero)
            elif j < kq <= i:
                arow.append(zero)
                brow.append(zero)
            else:
                arow.append(nu.rows[i - kq][j - kq])
                brow.append(t2.rows[i - kq][j - kq])
        a2_rows.append(arow)
        b2_rows.append(brow)
    a2 = SquareMatrix(ring, a2_rows)
    b2 = SquareMatrix(ring, b2_rows)

    a1 = [[ring.element(rng.randint(-2, 2)) for _ in range(kr)] for _ in range(kp)]
    arows = []
    for i in range(kp):
        arows.append([zero] * kp + a1[i])
    for i in range(kr):
        arows.append([zero] * kp + list(a2.rows[i]))
    a = SquareMatrix(ring, arows)
    brows = []
    for i in range(kp):
        brows.append(list(b1.rows[i]) + [zero] * kr)
    for i in range(kr):
        brows.append([zero] * kp + list(b2.rows[i]))
    b = SquareMatrix(ring, brows)

    s = rand_unimodular(rng, ring, k)
    s_inv = s.try_inverse()
    return s * a * s_inv, s * b * s_inv


# polynomials mapping {0, 1, -1} into itself: evaluating them at a
# spectrum-{0,1,-1} matrix keeps the spectrum inside {0,1,-1}
SPECTRUM_SAFE_POLYS = [
    [0, 1],            # t
    [0, -1],           # -t
    [0, 0, 1],         # t^2
    [0, 0, -1],        # -t^2
    [0, 0, 0, 1],      # t^3
    [0, 2, 0, -1],     # 2t - t^3
    [0, 1, 1, -1],     # t + t^2 - t^3
    [1, 0, -1],        # 1 - t^2
    [1],               # 1
    [0],               # 0
]


def commuting_poly_pair(rng, k, ring=Q):
    """Two polynomials in one spectrum-{0,1,-1} matrix; they commute, and we
    also report whether each polynomial maps {0,1,-1} into itself (the exact
    criterion for its inverse to exist).  Sampling favors compatible
    polynomials so both branches appear often."""
    m = rand_hirano_friendly(rng, k, ring)

    def sample_poly():
        if rng.random() < 0.7:
            coeffs = rng.choice(SPECTRUM_SAFE_POLYS)
        else:
            coeffs = [rng.randint(-2, 2) for _ in range(rng.randint(1, 4))]
        poly = Polynomial.from_coeffs(ring, coeffs)
        ok = all(
            poly.evaluate(ring.element(v)) in (Fraction(0), Fraction(1), Fraction(-1))
            for v in (0, 1, -1)
        )
        return poly, ok

    pa, ok_a = sample_poly()
    pb, ok_b = sample_poly()
    return pa.evaluate_matrix(m), pb.evaluate_matrix(m), ok_a, ok_b


