import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symfactor import config
from symfactor.errors import (
    CapExceeded,
    ConvergenceFailure,
    InvalidMatrix,
    NotSymmetric,
    ShapeMismatch,
    SingularMatrix,
)
from symfactor.generate import random_orthogonal, random_similarity, random_symmetric
from symfactor.linalg import (
    EigenvalueSet,
    Inertia,
    as_matrix,
    determinant,
    general_eigenvalues,
    inertia,
    invert,
    lu_factor,
    multiply,
    solve,
    spd_sqrt,
    symmetric_eigen,
    symmetry_defect,
)
from symfactor.spectrum import exchange_matrix


class TestInertiaType:
    def test_sum_is_blockwise(self):
        assert Inertia(1, 0, 0) + Inertia(1, 1, 0) == Inertia(2, 1, 0)

    def test_swapped_and_parse(self):
        assert Inertia(3, 1, 0).swapped() == Inertia(1, 3, 0)
        assert Inertia.parse("(2,1,0)") == Inertia(2, 1, 0)
        assert str(Inertia(2, 1, 0)) == "(2,1,0)"
        assert Inertia(2, 1, 1).m == 4


def test_eigenvalue_set_rejects_nonpositive_imag():
    with pytest.raises(ValueError):
        EigenvalueSet((), ((1.0, -2.0),))


class TestValidation:
    @pytest.mark.parametrize("bad", [[[np.nan]], [[np.inf, 0.0]], [1.0, 2.0], "abc"])
    def test_invalid(self, bad):
        with pytest.raises(InvalidMatrix):
            as_matrix(bad)

    def test_square_required(self):
        with pytest.raises(ShapeMismatch):
            as_matrix(np.zeros((2, 3)), square=True)


class TestMultiply:
    def test_identity(self):
        a = np.arange(9.0).reshape(3, 3)
        assert np.array_equal(multiply(np.eye(3), a), a)

    def test_real_pair_block(self):
        out = multiply([[0, 1], [1, 0]], [[1, 0], [0, -1]])
        assert np.array_equal(out, [[0, -1], [1, 0]])

    def test_diag_times_exchange(self):
        assert np.array_equal(multiply([[2, 0], [0, 3]], [[0, 1], [1, 0]]), [[0, 2], [3, 0]])

    def test_shape_message(self):
        with pytest.raises(ShapeMismatch, match="2x3.*2x2"):
            multiply(np.zeros((2, 3)), np.zeros((2, 2)))


class TestInvert:
    @pytest.mark.parametrize(
        "a, expected",
        [
            (np.eye(4), np.eye(4)),
            ([[0, 1], [1, 0]], [[0, 1], [1, 0]]),
            ([[2, 0], [0, 4]], [[0.5, 0], [0, 0.25]]),
        ],
    )
    def test_examples(self, a, expected):
        assert np.array_equal(invert(a), expected)

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            invert([[1.0, 2.0], [2.0, 4.0]])
        with pytest.raises(SingularMatrix):
            invert(np.zeros((3, 3)))

    def test_pivot_scaled_by_row(self):
        # tiny but perfectly conditioned: the relative pivot test must accept it
        a = 1e-20 * np.array([[2.0, 1.0], [1.0, 3.0]])
        assert np.allclose(invert(a) @ a, np.eye(2))

    def test_round_trip(self):
        rng = np.random.default_rng(11)
        for m in range(1, 13):
            a = random_similarity(m, rng)
            assert np.linalg.norm(a @ invert(a) - np.eye(m)) <= 1e-9

    def test_solve_matches(self):
        rng = np.random.default_rng(2)
        a = random_similarity(5, rng)
        b = rng.standard_normal(5)
        assert np.allclose(a @ solve(a, b), b, atol=1e-12)

    def test_lu_layout(self):
        a = np.array([[1.0, 2.0, 0.0], [4.0, 1.0, 1.0], [2.0, 0.0, 5.0]])
        lu, perm = lu_factor(a)
        L = np.tril(lu, -1) + np.eye(3)
        U = np.triu(lu)
        assert np.allclose(L @ U, a[perm])


@pytest.mark.parametrize(
    "a, expected",
    [
        ([[1, 2], [2, 3]], 0.0),
        ([[0, -1], [1, 0]], 2.0),
        ([[1, 1], [0, 1]], np.sqrt(2) / np.sqrt(3)),
    ],
)
def test_symmetry_defect(a, expected):
    assert symmetry_defect(a) == pytest.approx(expected, rel=1e-15)


def test_determinant():
    assert determinant([[0.0, 1.0], [1.0, 0.0]]) == -1.0
    assert determinant([[1.0, 2.0], [2.0, 4.0]]) == 0.0
    assert determinant(np.diag([2.0, 3.0, -1.0])) == -6.0


class TestSymmetricEigen:
    def test_diagonal(self):
        h, q = symmetric_eigen(np.diag([3.0, 1.0, 2.0]))
        assert np.array_equal(h, [3.0, 2.0, 1.0])
        assert np.allclose(np.abs(q), np.eye(3)[:, [0, 2, 1]])

    def test_exchange2(self):
        h, q = symmetric_eigen([[0.0, 1.0], [1.0, 0.0]])
        assert np.allclose(h, [1.0, -1.0], atol=1e-15)
        s = np.sqrt(0.5)
        assert np.allclose(np.abs(q), [[s, s], [s, s]])
        assert np.sign(q[0, 0]) == np.sign(q[1, 0])
        assert np.sign(q[0, 1]) == -np.sign(q[1, 1])

    def test_exchange3(self):
        # frozen from numpy.linalg.eigvalsh(E3)
        h, _ = symmetric_eigen(exchange_matrix(3))
        assert np.allclose(h, [1.0, 1.0, -1.0], atol=1e-14)

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            symmetric_eigen([[0.0, 1.0], [0.0, 0.0]])

    def test_no_convergence(self):
        rng = np.random.default_rng(0)
        a = random_symmetric(4, 4, rng)
        with config.using(config.RunConfig(max_sweeps=1)):
            with pytest.raises(ConvergenceFailure) as info:
                symmetric_eigen(a)
        assert info.value.residual > 0

    @pytest.mark.parametrize("m", [1, 2, 5, 8, 12])
    def test_residuals(self, m):
        rng = np.random.default_rng(m)
        for _ in range(10):
            a = rng.standard_normal((m, m))
            a = a + a.T
            h, q = symmetric_eigen(a)
            assert np.linalg.norm(a - (q * h) @ q.T) <= 1e-10 * np.linalg.norm(a)
            assert np.linalg.norm(q.T @ q - np.eye(m)) <= 1e-10
            assert np.all(np.diff(h) <= 0)


class TestInertia:
    @pytest.mark.parametrize(
        "a, expected",
        [
            (np.diag([1.0, -1.0, -1.0]), (1, 2, 0)),
            (exchange_matrix(5), (3, 2, 0)),
            ([[0.0, 1.0], [1.0, 0.0]], (1, 1, 0)),
            (np.diag([1.0, 0.0]), (1, 0, 1)),
        ],
    )
    def test_examples(self, a, expected):
        assert inertia(a) == expected

    def test_congruence(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            m = int(rng.integers(1, 9))
            p = int(rng.integers(0, m + 1))
            a = random_symmetric(p, m - p, rng)
            s = random_similarity(m, rng, spread=3.0)
            assert inertia(s.T @ a @ s) == inertia(a) == (p, m - p, 0)

    def test_inverse_preserves(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            a = random_symmetric(3, 2, rng)
            assert inertia(invert(a)) == inertia(a)


class TestGeneralEigenvalues:
    def test_rotation(self):
        e = general_eigenvalues([[0.0, -1.0], [1.0, 0.0]])
        assert e.real == ()
        assert e.complex_pairs == pytest.approx([(0.0, 1.0)])

    def test_diagonal(self):
        e = general_eigenvalues(np.diag([2.0, -3.0]))
        assert e.real == (2.0, -3.0)
        assert e.s == 2 and e.m == 2

    def test_real_pair_block(self):
        e = general_eigenvalues([[1.0, -2.0], [2.0, 1.0]])
        assert e.complex_pairs == pytest.approx([(1.0, 2.0)])

    def test_near_real_coerced(self):
        e = general_eigenvalues([[1.0, -1e-10], [1e-10, 1.0]])
        assert e.s == 2

    def test_matches_numpy(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            m = int(rng.integers(1, 16))
            a = rng.standard_normal((m, m))
            got = np.sort_complex(general_eigenvalues(a).values())
            ref = np.sort_complex(np.linalg.eigvals(a))
            assert np.allclose(got, ref, atol=1e-9)

    def test_symmetric_real(self):
        rng = np.random.default_rng(10)
        for m in range(1, 10):
            a = random_symmetric(m // 2, m - m // 2, rng)
            e = general_eigenvalues(a)
            assert e.complex_pairs == ()
            assert np.allclose(e.real, symmetric_eigen(a)[0], atol=1e-8)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            general_eigenvalues(np.eye(65))

    def test_jordan_exact(self):
        j = 2.0 * np.eye(4) + np.eye(4, k=1)
        assert general_eigenvalues(j).real == (2.0, 2.0, 2.0, 2.0)


def test_spd_sqrt():
    rng = np.random.default_rng(3)
    q = random_orthogonal(4, rng)
    t = (q * [1.0, 2.0, 4.0, 9.0]) @ q.T
    half, inv_half = spd_sqrt(t)
    assert np.allclose(half @ half, t)
    assert np.allclose(half @ inv_half, np.eye(4))
    with pytest.raises(SingularMatrix):
        spd_sqrt(np.diag([1.0, -1.0]))


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=7).flatmap(
        lambda m: st.lists(
            st.floats(min_value=-10, max_value=10, allow_nan=False), min_size=m * m, max_size=m * m
        )
    )
)
def test_jacobi_property(entries):
    m = int(round(np.sqrt(len(entries))))
    a = np.array(entries).reshape(m, m)
    a = a + a.T
    h, q = symmetric_eigen(a)
    scale = max(np.linalg.norm(a), 1.0)
    assert np.linalg.norm(a - (q * h) @ q.T) <= 1e-10 * scale
    assert np.linalg.norm(q.T @ q - np.eye(m)) <= 1e-10
