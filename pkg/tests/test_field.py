import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import PolyField
from toricq.field import (
    GF,
    field_new,
    field_of_order,
    format_matrix,
    is_irreducible,
    parse_matrix,
    prime_power,
)

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)]


@pytest.mark.parametrize(
    "p, m, modulus",
    [
        (2, 1, (0, 1)),
        (2, 2, (1, 1, 1)),
        (3, 2, (1, 0, 1)),
    ],
)
def test_modulus_choice(p, m, modulus):
    assert field_new(p, m).modulus == modulus


def test_modulus_is_least_irreducible_by_scan():
    # every monic cubic over F_2 below x^3+x+1 factors
    for low in range(3):
        f = [low % 2, (low // 2) % 2, 0, 1]
        assert not is_irreducible(f, 2)
    assert field_new(2, 3).modulus == (1, 1, 0, 1)


@pytest.mark.parametrize("p, m", [(4, 1), (1, 2), (2, 0), (2, 17), (257, 2)])
def test_field_new_rejects(p, m):
    with pytest.raises(ValueError):
        GF(p, m)


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(16) == (2, 4)
    with pytest.raises(ValueError):
        prime_power(12)


def test_worked_products():
    assert field_new(2, 2).mul(2, 2) == 3
    assert field_new(5).mul(3, 4) == 2


def test_trace_gf4():
    F = field_new(2, 2)
    assert [F.trace(a) for a in (0, 1, 2)] == [0, 0, 1]


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        field_new(3, 2).inv(0)


@pytest.mark.parametrize("p, m", SMALL_FIELDS)
def test_tables_match_schoolbook_arithmetic(p, m):
    F = field_new(p, m)
    ref = PolyField(p, F.modulus)
    e = F.elements()
    np.testing.assert_array_equal(F.mul(e[:, None], e[None, :]), ref.mul)
    np.testing.assert_array_equal(F.add(e[:, None], e[None, :]), ref.add)
    np.testing.assert_array_equal(F.neg(e), ref.neg)


@pytest.mark.parametrize("p, m", SMALL_FIELDS)
def test_generator_is_least_primitive(p, m):
    F = field_new(p, m)
    prim = PolyField(p, F.modulus).primitive_elements()
    assert F.generator == min(prim)


@pytest.mark.parametrize("p, m", SMALL_FIELDS + [(2, 5), (3, 3), (13, 1)])
def test_field_axioms_exhaustive(p, m):
    F = field_new(p, m)
    e = F.elements()
    a, b = e[:, None], e[None, :]
    np.testing.assert_array_equal(F.mul(a, b), F.mul(b, a))
    np.testing.assert_array_equal(F.add(a, b), F.add(b, a))
    nz = e[1:]
    np.testing.assert_array_equal(F.mul(nz, F.inv(nz)), 1)
    np.testing.assert_array_equal(F.pow(nz, F.q - 1), 1)
    np.testing.assert_array_equal(F.mul(1, e), e)
    np.testing.assert_array_equal(F.add(e, F.neg(e)), 0)
    # distributivity on all triples
    c = e[None, None, :]
    lhs = F.mul(a[..., None], F.add(b[..., None], c))
    rhs = F.add(F.mul(a[..., None], b[..., None]), F.mul(a[..., None], c))
    np.testing.assert_array_equal(lhs, rhs)


@pytest.mark.parametrize("p, m", SMALL_FIELDS + [(3, 3)])
def test_trace_is_onto_with_equal_fibres(p, m):
    F = field_new(p, m)
    tr = np.asarray(F.trace(F.elements()))
    assert tr.max() < p
    counts = np.bincount(tr, minlength=p)
    assert counts.tolist() == [p ** (m - 1)] * p


@pytest.mark.parametrize("p, m", [(2, 2), (3, 2), (2, 3)])
def test_trace_is_additive(p, m):
    F = field_new(p, m)
    e = F.elements()
    a, b = e[:, None], e[None, :]
    np.testing.assert_array_equal(F.trace(F.add(a, b)), (F.trace(a) + F.trace(b)) % p)


def test_large_field_uses_digit_addition():
    F = field_new(3, 7)  # 2187 elements, no addition table
    a = np.arange(0, F.q, 7)
    b = np.arange(0, F.q, 7)[::-1]
    s = F.add(a, b)
    np.testing.assert_array_equal(F.sub(s, b), a)
    assert F.mul(F.inv(1234), 1234) == 1


def test_pow_edge_cases():
    F = field_new(2, 2)
    assert F.pow(0, 0) == 1
    assert F.pow(0, 3) == 0
    assert F.pow(2, -1) == F.inv(2)
    with pytest.raises(ZeroDivisionError):
        F.pow(0, -1)


# -- linear algebra ----------------------------------------------------------


def test_rref_identity_and_zero():
    F = field_new(2, 2)
    eye = np.eye(3, dtype=np.int64)
    r, rank, piv = F.rref(eye)
    np.testing.assert_array_equal(r, eye)
    assert (rank, piv) == (3, (0, 1, 2))
    z = np.zeros((2, 3), dtype=np.int64)
    r, rank, piv = F.rref(z)
    np.testing.assert_array_equal(r, z)
    assert rank == 0 and piv == ()


def test_rank_of_proportional_rows():
    assert field_new(5).rank([[1, 1], [2, 2]]) == 1


def test_rref_is_reduced_and_deterministic():
    F = field_new(3, 2)
    rng = np.random.default_rng(1)
    M = rng.integers(0, F.q, size=(4, 7))
    r, rank, piv = F.rref(M)
    for i, c in enumerate(piv):
        col = r[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1
    assert not r[rank:].any()
    r2, _, _ = F.rref(M)
    np.testing.assert_array_equal(r, r2)


def test_nullspace_of_all_ones():
    F = field_new(3)
    N = F.nullspace([[1, 1, 1, 1]])
    assert N.shape == (3, 4)
    assert not (N.sum(axis=1) % 3).any()


def test_nullspace_of_full_rank_square_is_empty():
    F = field_new(5)
    assert F.nullspace([[1, 2], [3, 2]]).shape == (0, 2)


def test_repetition_code_double_dual():
    F = field_new(3)
    G = np.array([[1, 1, 1, 1]])
    N = F.nullspace(G)
    assert F.rank(N) == 3
    assert F.same_rowspace(F.nullspace(N), G)


def test_is_subspace():
    F = field_new(2, 2)
    B = np.array([[1, 0, 2], [0, 1, 3]])
    assert F.is_subspace(B[:1], B)
    assert not F.is_subspace(np.eye(3, dtype=np.int64), B)
    with pytest.raises(ValueError):
        F.is_subspace(np.eye(2, dtype=np.int64), B)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3)]),
    st.integers(1, 5),
    st.integers(1, 7),
    st.integers(0, 2**32 - 1),
)
def test_rank_nullity_and_double_dual(pm, rows, cols, seed):
    F = field_new(*pm)
    G = np.random.default_rng(seed).integers(0, F.q, size=(rows, cols))
    N = F.nullspace(G)
    assert F.rank(G) + F.rank(N) == cols
    if len(N):
        assert not F.matmul(G, N.T).any()
        assert F.same_rowspace(F.nullspace(N), G) or F.rank(G) == 0
    assert F.rank(G) <= min(rows, cols)


def test_matmul_matches_oracle():
    F = field_new(2, 3)
    ref = PolyField(2, F.modulus)
    rng = np.random.default_rng(7)
    A = rng.integers(0, 8, size=(3, 5))
    B = rng.integers(0, 8, size=(5, 4))
    expect = np.zeros((3, 4), dtype=np.int64)
    for i in range(3):
        for j in range(4):
            acc = 0
            for t in range(5):
                acc = ref.add[acc, ref.mul[A[i, t], B[t, j]]]
            expect[i, j] = acc
    np.testing.assert_array_equal(F.matmul(A, B), expect)


def test_matrix_text_round_trip():
    F = field_of_order(9)
    M = np.arange(12).reshape(3, 4) % 9
    text = format_matrix(F, M)
    assert text.splitlines()[0] == "q=9 p=3 m=2 modulus=1,0,1 rows=3 cols=4"
    F2, M2 = parse_matrix(text)
    assert F2 == F
    np.testing.assert_array_equal(M2, M)


def test_parse_matrix_rejects_wrong_modulus():
    text = "q=4 p=2 m=2 modulus=1,0,1 rows=1 cols=1\n1\n"
    with pytest.raises(ValueError):
        parse_matrix(text)


def test_field_is_picklable():
    import pickle

    F = field_new(2, 2)
    assert pickle.loads(pickle.dumps(F)) is F
