from fractions import Fraction
from itertools import product

import pytest

from hiranoinv import (
    IntegersMod,
    PLocal,
    Q,
    RingMismatchError,
    SquareMatrix,
    Z,
    centralizer_generators,
    in_double_commutant,
    peirce_blocks,
)
from hiranoinv.errors import PreconditionError, UnsupportedRingError
from hiranoinv.matrices import (
    _howell_form,
    _howell_span_size,
    crt_project_matrix,
    crt_reconstruct_matrix,
)

from conftest import naive_char_poly, perm_det, rand_matrix

Z2LOCAL = PLocal(2)


def all_matrices(n, k):
    ring = IntegersMod(n)
    for flat in product(range(n), repeat=k * k):
        yield SquareMatrix(ring, [flat[i * k : (i + 1) * k] for i in range(k)])


def test_power_examples():
    a = SquareMatrix(Z2LOCAL, [[1, 2], [3, 4]])
    assert (a * a).rows == ((Fraction(7), Fraction(10)), (Fraction(15), Fraction(22)))
    b = SquareMatrix(Z2LOCAL, [[5, 6], [3, 2]])
    assert (b * b).rows == ((Fraction(43), Fraction(42)), (Fraction(21), Fraction(22)))
    assert a**0 == SquareMatrix.identity(Z2LOCAL, 2)


def test_mismatch_rejected():
    a = SquareMatrix(Q, [[1]])
    b = SquareMatrix(Z, [[1]])
    with pytest.raises(RingMismatchError):
        a + b
    with pytest.raises(RingMismatchError):
        a * SquareMatrix(Q, [[1, 0], [0, 1]])


def test_det_and_trace():
    b = SquareMatrix(Z2LOCAL, [[5, 6], [3, 2]])
    assert b.det() == -8
    assert (b * b).det() == 64
    assert (b * b).trace() == 65
    assert SquareMatrix.identity(Q, 4).det() == 1
    a = SquareMatrix(Z2LOCAL, [[1, 2], [3, 4]])
    assert (a * a).trace() == 29


def test_det_matches_permutation_sum(rng):
    for ring in (Q, Z, IntegersMod(12), Z2LOCAL):
        for k in (1, 2, 3, 4):
            for _ in range(10):
                m = rand_matrix(rng, ring, k)
                assert m.det() == perm_det(m)


def test_char_poly_examples():
    a2 = SquareMatrix(Q, [[7, 10], [15, 22]])
    assert a2.char_poly().coeffs == (Fraction(4), Fraction(-29), Fraction(1))
    zero3 = SquareMatrix.zero(Q, 3)
    assert zero3.char_poly().coeffs == (Fraction(0),) * 3 + (Fraction(1),)


def test_char_poly_matches_laplace_oracle(rng):
    for ring in (Q, IntegersMod(6), IntegersMod(4), Z2LOCAL, Z):
        for k in (1, 2, 3, 4):
            for _ in range(8):
                m = rand_matrix(rng, ring, k)
                assert m.char_poly() == naive_char_poly(m)


def test_cayley_hamilton(rng):
    for ring in (Q, IntegersMod(12), Z2LOCAL):
        for k in (2, 3):
            for _ in range(12):
                m = rand_matrix(rng, ring, k)
                assert m.char_poly().evaluate_matrix(m).is_zero()


def test_inverse_examples():
    u = SquareMatrix(Z2LOCAL, [[42, -21], [21, 21]])
    assert u.det() == 1323  # odd, so invertible 2-locally
    inv = u.try_inverse()
    assert inv is not None
    assert u * inv == SquareMatrix.identity(Z2LOCAL, 2)
    singular = SquareMatrix(Q, [[1, 1], [1, 1]])
    assert singular.try_inverse() is None
    ident = SquareMatrix.identity(Q, 3)
    assert ident.try_inverse() == ident


def test_inverse_iff_unit_determinant(rng):
    for ring in (IntegersMod(12), Z, Z2LOCAL, Q):
        for _ in range(25):
            m = rand_matrix(rng, ring, 2)
            inv = m.try_inverse()
            assert (inv is not None) == ring.is_unit(m.det())
            if inv is not None:
                assert m * inv == SquareMatrix.identity(ring, 2)
                assert inv * m == SquareMatrix.identity(ring, 2)


def test_nilpotence():
    n = SquareMatrix(Q, [[0, 1], [0, 0]])
    assert n.is_nilpotent() and n.nilpotency_index() == 2
    m = SquareMatrix(Z, [[0, -2], [0, 0]])  # I - A^2 for A = [[1,1],[0,1]]
    assert m.is_nilpotent()
    assert not SquareMatrix.identity(Q, 2).is_nilpotent()
    assert SquareMatrix.zero(Q, 2).nilpotency_index() == 1
    assert SquareMatrix.identity(Q, 2).nilpotency_index() is None


def test_quasinilpotent_matrix_examples():
    a = SquareMatrix(Z2LOCAL, [[7, 10], [15, 22]])
    assert not a.is_quasinilpotent()
    b = SquareMatrix(Z2LOCAL, [[0, 2], [2, 0]])
    assert b.is_quasinilpotent()  # square is diag(4, 4), inside M_2(J)
    n = SquareMatrix(Q, [[0, 5], [0, 0]])
    assert n.is_quasinilpotent()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_matrix_quasinilpotence_matches_definition(n):
    # definitional: 1 + A X a unit for every X in comm(A), by enumeration
    mats = list(all_matrices(n, 2))
    ident = SquareMatrix.identity(IntegersMod(n), 2)
    for a in mats:
        definitional = True
        for x in mats:
            if a * x != x * a:
                continue
            if (ident + a * x).try_inverse() is None:
                definitional = False
                break
        assert a.is_quasinilpotent() == definitional
        # and the dim-2 shape: qnil iff every entry of A^2 is in J
        in_j = a.ring.in_jacobson_radical
        assert a.is_quasinilpotent() == all(in_j(v) for row in (a * a).rows for v in row)


def test_qnil_times_commuting_idempotent_stays_qnil():
    for n in (2, 3):
        mats = list(all_matrices(n, 2))
        qnils = [a for a in mats if a.is_quasinilpotent()]
        idems = [e for e in mats if e * e == e]
        for a in qnils:
            for e in idems:
                if a * e == e * a:
                    assert (a * e).is_quasinilpotent()


def test_commuting_qnil_closure_under_sum_and_product():
    for n in (2, 3):
        mats = list(all_matrices(n, 2))
        qnils = [a for a in mats if a.is_quasinilpotent()]
        for a in qnils:
            for b in qnils:
                if a * b == b * a:
                    assert (a + b).is_quasinilpotent()
                    assert (a * b).is_quasinilpotent()


def test_centralizer_identity_spans_everything():
    gens = centralizer_generators(SquareMatrix.identity(Q, 2))
    assert len(gens) == 4


def test_centralizer_distinct_eigenvalues_is_diagonal():
    gens = centralizer_generators(SquareMatrix.diagonal(Q, [1, 2]))
    assert len(gens) == 2
    for g in gens:
        assert g.rows[0][1] == 0 and g.rows[1][0] == 0


def test_centralizer_mod4_complete():
    # exhaustive check over all 256 matrices of M_2(Z/4)
    ring = IntegersMod(4)
    a = SquareMatrix(ring, [[0, 1], [0, 0]])
    gens = centralizer_generators(a)
    for g in gens:
        assert a * g == g * a
    commuting = [x for x in all_matrices(4, 2) if a * x == x * a]
    flat = [[v for row in g.rows for v in row] for g in gens]
    assert _howell_span_size(flat, 4) == len(commuting)


def test_centralizer_unsupported_rings():
    with pytest.raises(UnsupportedRingError):
        centralizer_generators(SquareMatrix(Z2LOCAL, [[1, 0], [0, 1]]))


def test_double_commutant_basics():
    a = SquareMatrix(Q, [[1, 2], [3, 4]])
    assert in_double_commutant(a * a, a)
    ident2 = SquareMatrix.diagonal(Q, [1, 1])
    off = SquareMatrix(Q, [[0, 1], [0, 0]])
    assert not in_double_commutant(off, ident2)


@pytest.mark.parametrize("n", [2, 3])
def test_double_commutant_matches_enumeration(n):
    mats = list(all_matrices(n, 2))
    for a in mats:
        comm = [x for x in mats if a * x == x * a]
        comm2 = {b for b in mats if all(b * y == y * b for y in comm)}
        for b in mats:
            assert in_double_commutant(b, a) == (b in comm2)


def test_double_commutant_over_p_local_uses_embedding():
    a = SquareMatrix(Z2LOCAL, [[5, 6], [3, 2]])
    assert in_double_commutant(a * a, a)
    off = SquareMatrix(Z2LOCAL, [[0, 1], [0, 0]])
    assert not in_double_commutant(off, SquareMatrix.identity(Z2LOCAL, 2))


def test_howell_form_preserves_span_mod_12():
    rows = [[2, 4, 6], [3, 3, 0], [6, 0, 6]]
    before = _howell_span_size(rows, 12)
    reduced = _howell_form([r[:] for r in rows], 12)
    assert _howell_span_size(reduced, 12) == before


def test_peirce_blocks():
    x = SquareMatrix(Q, [[1, 2], [3, 4]])
    ident = SquareMatrix.identity(Q, 2)
    view = peirce_blocks(x, ident)
    assert view.pp == x and view.pq.is_zero() and view.qp.is_zero() and view.qq.is_zero()
    view0 = peirce_blocks(x, SquareMatrix.zero(Q, 2))
    assert view0.qq == x
    with pytest.raises(PreconditionError):
        peirce_blocks(x, x)  # x is not idempotent


def test_peirce_corner_decomposition(rng):
    p = SquareMatrix.diagonal(Q, [1, 0])
    for _ in range(10):
        x = rand_matrix(rng, Q, 2)
        view = peirce_blocks(x, p)
        assert view.pp.rows[0][0] == x.rows[0][0]
        assert view.recompose() == x


def test_crt_matrix_roundtrip(rng):
    ring = IntegersMod(12)
    for _ in range(20):
        m = rand_matrix(rng, ring, 2, 0, 11)
        parts = [crt_project_matrix(m, p**e) for p, e in [(2, 2), (3, 1)]]
        assert crt_reconstruct_matrix(parts, ring) == m


def test_nilpotent_2x2_over_prime_field_has_square_char_poly():
    # the missing-citation step: chi of a nilpotent 2x2 over a field is t^2
    for n in (2, 3):
        for a in all_matrices(n, 2):
            if a.is_nilpotent():
                assert a.char_poly().coeffs == (0, 0, 1)


def test_matrix_serialization():
    m = SquareMatrix(Q, [["1/2", 1], [0, "-3"]])
    assert m.to_json() == [["1/2", "1"], ["0", "-3"]]
    z = SquareMatrix(IntegersMod(5), [[4, 0], [1, 2]])
    assert z.to_json() == [[4, 0], [1, 2]]
