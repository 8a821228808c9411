
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import quatpole as qp
from quatpole.quaternion import I, J, K, ONE, Quaternion, similar, standard_rep

finite = st.floats(min_value=-10.0, max_value=10.0,
                   allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, finite, finite, finite, finite)
nonzero_quaternions = quaternions.filter(lambda q: q.norm() > 1e-3)


def left_mul_matrix(q):
    """4x4 real matrix representing r -> q*r on (w, x, y, z) vectors."""
    w, x, y, z = q.wxyz
    return np.array([[w, -x, -y, -z],
                     [x, w, -z, y],
                     [y, z, w, -x],
                     [z, -y, x, w]])


class TestProducts:
    def test_unit_table(self):
        assert I * J == K
        assert J * I == -K
        assert J * K == I
        assert K * J == -I
        assert K * I == J
        assert I * K == -J
        assert I * I == Quaternion(-1)
        assert I * J * K == Quaternion(-1)

    def test_multiplicative_identity(self):
        q = Quaternion(1.5, -2, 0.25, 3)
        assert q * ONE == q
        assert ONE * q == q
        assert q * 1 == q

    def test_against_matrix_representation(self):
        # (1+i)(1-i) through the 4x4 left-multiplication representation
        q = Quaternion(1, 1)
        r = Quaternion(1, -1)
        via_matrix = left_mul_matrix(q) @ np.array(r.wxyz)
        assert (q * r).wxyz == tuple(via_matrix)
        assert q * r == Quaternion(2)

    def test_matrix_representation_random(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            q = qp.random_quaternion(rng)
            r = qp.random_quaternion(rng)
            via_matrix = left_mul_matrix(q) @ np.array(r.wxyz)
            assert np.allclose(np.array((q * r).wxyz), via_matrix,
                               atol=1e-14)

    def test_complex_promotion(self):
        assert Quaternion.from_complex(1 + 2j) == Quaternion(1, 2)
        assert (1 + 2j) * J == Quaternion(1, 2) * J

    @settings(max_examples=200)
    @given(quaternions, quaternions)
    def test_norm_multiplicative(self, q, r):
        assert abs((q * r).norm() - q.norm() * r.norm()) <= \
            1e-12 * max(1.0, q.norm() * r.norm())

    @settings(max_examples=200)
    @given(quaternions, quaternions)
    def test_conjugate_antihomomorphism(self, q, r):
        lhs = (q * r).conjugate()
        rhs = r.conjugate() * q.conjugate()
        assert lhs.isclose(rhs, 1e-12 * max(1.0, q.norm() * r.norm()))

    @settings(max_examples=200)
    @given(quaternions, quaternions, quaternions)
    def test_associative(self, q, r, s):
        scale = max(1.0, q.norm() * r.norm() * s.norm())
        assert ((q * r) * s).isclose(q * (r * s), 1e-12 * scale)

    @given(quaternions)
    def test_conjugate_times_self_is_norm_squared(self, q):
        p = q.conjugate() * q
        assert abs(p.w - q.norm_sq()) <= 1e-12 * max(1.0, q.norm_sq())
        assert p.im_norm() <= 1e-12 * max(1.0, q.norm_sq())


class TestInverse:
    def test_unit_imaginary(self):
        assert K.inverse() == -K

    def test_worked_example(self):
        q = Quaternion(-1, 0, -1, 1)
        inv = q.inverse()
        assert inv.isclose(Quaternion(-1 / 3, 0, 1 / 3, -1 / 3), 1e-15)
        assert (q * inv).isclose(ONE, 1e-15)
        assert (inv * q).isclose(ONE, 1e-15)

    def test_real_scalar(self):
        assert Quaternion(2).inverse() == Quaternion(0.5)

    def test_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            Quaternion().inverse()

    @settings(max_examples=200)
    @given(nonzero_quaternions)
    def test_two_sided(self, q):
        assert (q * q.inverse()).isclose(ONE, 1e-10)
        assert (q.inverse() * q).isclose(ONE, 1e-10)


class TestSimilarity:
    def test_imaginary_units_share_a_class(self):
        assert similar(K, I, 1e-9)
        assert similar(J, I, 1e-9)

    def test_distinct_reals_are_isolated(self):
        assert not similar(Quaternion(3), Quaternion(3.5), 1e-9)

    def test_conjugate_complex_pair(self):
        assert similar(Quaternion(1, 2), Quaternion(1, -2), 1e-9)

    def test_tol_must_be_positive(self):
        with pytest.raises(ValueError):
            similar(I, J, 0.0)

    def test_standard_reps(self):
        assert standard_rep(K) == 1j
        assert standard_rep(Quaternion(-1, 0, 1, 0)) == -1 + 1j
        assert standard_rep(Quaternion(3)) == 3 + 0j

    def test_conjugation_invariance(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            q = qp.random_quaternion(rng)
            r = qp.random_quaternion(rng)
            if r.norm() < 1e-3:
                continue
            conj = r.inverse() * q * r
            assert abs(standard_rep(conj) - standard_rep(q)) <= 1e-12 * \
                max(1.0, abs(standard_rep(q)))

    def test_similar_iff_reps_close(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            q = qp.random_quaternion(rng)
            r = qp.random_quaternion(rng)
            by_rep = (abs(standard_rep(q).real - standard_rep(r).real) <= 1e-6
                      and abs(standard_rep(q).imag
                              - standard_rep(r).imag) <= 1e-6)
            assert similar(q, r, 1e-6) == by_rep


class TestSimilarityClass:
    def test_membership_is_conjugation_invariant(self):
        rng = np.random.default_rng(3)
        q = Quaternion(0.5, 1, -2, 0.25)
        cls = qp.SimilarityClass.of(q)
        for _ in range(25):
            a = qp.random_quaternion(rng)
            if a.norm() < 1e-3:
                continue
            assert cls.contains(a.inverse() * q * a, 1e-9)

    def test_nonnegative_imaginary(self):
        with pytest.raises(ValueError):
            qp.SimilarityClass(0.0, -1.0)

    def test_distance_and_rep(self):
        c = qp.SimilarityClass.from_complex(-1 - 2j)
        assert c.standard_rep == -1 + 2j
        assert c.distance(qp.SimilarityClass(-1, 2)) == 0.0
        assert c.distance(qp.SimilarityClass(-1.5, 2.25)) == 0.5


def test_format():
    assert qp.format_quaternion(Quaternion(1, -2, 0, 0.5)) == "1-2i+0.5k"
    assert qp.format_quaternion(Quaternion()) == "0"
    assert qp.format_quaternion(Quaternion(0, 1, 0, -1)) == "i-k"
    assert str(Quaternion(2.5, 0, 1, 0)) == "2.5+j"


def test_immutability():
    q = Quaternion(1, 2, 3, 4)
    with pytest.raises(AttributeError):
        q.w = 5.0


def test_division_by_real_only():
    q = Quaternion(2, 4, 0, 0)
    assert q / 2 == Quaternion(1, 2)
    with pytest.raises(TypeError):
        _ = q / J
