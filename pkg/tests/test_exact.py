"""Exact arithmetic: ring laws, the realification identity, cross products."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ksembed.exact import (
    E_ONE,
    E_ZERO,
    EISENSTEIN_UNITS,
    OMEGA,
    OMEGA2,
    EisensteinInt,
    EisRational,
    ParallelInput,
    QuadReal,
    VecC3,
    conj_cross,
    cross,
    dot6,
    eis_gcd,
    hermitian_inner,
    permutation_equivalent,
    phi0,
    re_im,
    re_part,
    swap_permutations,
)

small_int = st.integers(min_value=-6, max_value=6)
eis = st.builds(EisensteinInt, small_int, small_int)


def vec(z1, z2, z3):
    return VecC3.make(z1, z2, z3)


nonzero_vec = st.builds(
    VecC3.make, eis, eis, eis
).filter(lambda v: not v.is_zero())


class TestEisensteinRing:
    def test_omega_squared(self):
        assert OMEGA * OMEGA == EisensteinInt(-1, -1)

    def test_conjugate_of_omega_is_omega_squared(self):
        assert OMEGA.conjugate() == EisensteinInt(-1, -1) == OMEGA2

    def test_addition(self):
        assert EisensteinInt(1, 1) + EisensteinInt(1, -1) == EisensteinInt(2, 0)

    def test_triple_reduction(self):
        # 1 + w + w^2 = 0
        assert EisensteinInt.from_triple(1, 1, 1) == E_ZERO
        # 2w^2 = -2 - 2w
        assert EisensteinInt.from_triple(0, 0, 2) == EisensteinInt(-2, -2)
        assert EisensteinInt.from_triple(0, 0, 2) == OMEGA * OMEGA * 2

    def test_units_all_norm_one(self):
        assert [u.norm() for u in EISENSTEIN_UNITS] == [1] * 6
        assert len(set(EISENSTEIN_UNITS)) == 6

    @given(eis, eis)
    def test_norm_multiplicative(self, z, w):
        assert (z * w).norm() == z.norm() * w.norm()

    @given(eis)
    def test_norm_nonnegative_definite(self, z):
        assert z.norm() >= 0
        assert (z.norm() == 0) == z.is_zero()

    @given(eis)
    def test_conjugate_involution(self, z):
        assert z.conjugate().conjugate() == z

    @given(eis, eis)
    def test_conjugate_multiplicative(self, z, w):
        assert (z * w).conjugate() == z.conjugate() * w.conjugate()

    @given(eis)
    def test_norm_is_z_times_conj(self, z):
        assert z * z.conjugate() == EisensteinInt(z.norm(), 0)


class TestReIm:
    def test_omega(self):
        re, im = re_im(0, 1, 0)
        assert re == QuadReal.of(Fraction(-1, 2))
        assert im == QuadReal.of(0, Fraction(1, 2))

    def test_two_omega_squared(self):
        re, im = re_im(0, 0, 2)
        assert re == QuadReal.of(-1)
        assert im == QuadReal.of(0, -1)

    def test_unity_sum(self):
        re, im = re_im(1, 1, 1)
        assert re.is_zero() and im.is_zero()

    @given(small_int, small_int, small_int)
    def test_matches_two_coefficient_form(self, a, b, c):
        z = EisensteinInt.from_triple(a, b, c)
        assert z.re_im() == re_im(a, b, c)


class TestHermitianInner:
    def test_self_norm(self):
        u = vec(1, 1, 1)
        assert hermitian_inner(u, u) == EisensteinInt(3, 0)

    def test_fourier_orthogonality(self):
        assert hermitian_inner(vec(1, 1, 1), vec(1, OMEGA, OMEGA2)).is_zero()

    def test_purely_imaginary_pair(self):
        c = hermitian_inner(vec(1, 1, 0), vec(1, 2 * OMEGA, 0))
        assert c == EisensteinInt(1, 2)
        assert re_part(c).is_zero()
        assert c.is_purely_imaginary()

    @given(nonzero_vec, nonzero_vec)
    def test_conjugate_symmetry(self, u, v):
        assert hermitian_inner(u, v) == hermitian_inner(v, u).conjugate()


class TestConjCross:
    def test_standard_basis(self):
        assert conj_cross(vec(1, 0, 0), vec(0, 1, 0)) == vec(0, 0, 1)

    def test_fourier_pair_parallel_to_expected(self):
        w = conj_cross(vec(1, 1, 1), vec(1, OMEGA, OMEGA2))
        assert hermitian_inner(vec(1, 1, 1), w).is_zero()
        assert hermitian_inner(vec(1, OMEGA, OMEGA2), w).is_zero()
        # parallel to (1, w^2, w): their ordinary cross product vanishes
        assert cross(w, vec(1, OMEGA2, OMEGA)).is_zero()

    def test_direct_expansion(self):
        w = conj_cross(vec(1, 0, 0), vec(0, 1, OMEGA))
        assert w == vec(0, -OMEGA2, 1)
        assert hermitian_inner(vec(0, 1, OMEGA), w).is_zero()

    def test_parallel_input_raises(self):
        with pytest.raises(ParallelInput):
            conj_cross(vec(1, 0, 0), vec(2, 0, 0))

    @given(nonzero_vec, nonzero_vec)
    def test_orthogonal_to_both(self, u, v):
        if cross(u, v).is_zero():
            return
        w = conj_cross(u, v)
        assert hermitian_inner(u, w).is_zero()
        assert hermitian_inner(v, w).is_zero()


class TestPhi0AndDot6:
    def test_real_vector_packs_in_order(self):
        image = phi0(vec(1, 1, 1))
        assert [float(x) for x in image] == [1, 1, 1, 0, 0, 0]

    def test_omega_coordinate(self):
        image = phi0(vec(OMEGA, 0, 0))
        assert image[0] == QuadReal.of(Fraction(-1, 2))
        assert image[3] == QuadReal.of(0, Fraction(1, 2))
        assert all(image[i].is_zero() for i in (1, 2, 4, 5))

    def test_fourier_vector(self):
        image = phi0(vec(1, OMEGA, OMEGA2))
        half = Fraction(1, 2)
        assert image.coords == (
            QuadReal.of(1), QuadReal.of(-half), QuadReal.of(-half),
            QuadReal.of(0), QuadReal.of(0, half), QuadReal.of(0, -half),
        )

    def test_orthogonal_preimages_stay_orthogonal(self):
        assert dot6(phi0(vec(1, 1, 1)), phi0(vec(1, OMEGA, OMEGA2))).is_zero()

    def test_spurious_pair(self):
        # preimages are NOT orthogonal (inner product i*sqrt(3)), yet the
        # canonical realification collapses them: the case motivating phases
        u, v = vec(1, 1, 0), vec(1, 2 * OMEGA, 0)
        assert not hermitian_inner(u, v).is_zero()
        assert dot6(phi0(u), phi0(v)).is_zero()

    def test_norm_three(self):
        u = vec(1, 1, 1)
        assert dot6(phi0(u), phi0(u)) == QuadReal.of(3)

    @given(nonzero_vec, nonzero_vec)
    def test_real_dot_identity(self, u, v):
        assert dot6(phi0(u), phi0(v)) == re_part(hermitian_inner(u, v))

    @given(nonzero_vec)
    def test_norm_preservation(self, u):
        assert dot6(phi0(u), phi0(u)) == QuadReal.of(u.sq_norm())


class TestPermutationEquivalence:
    def test_published_example(self):
        # (1,1,1,0,0,0) -> (1,0,1,0,1,0) under the cycle (2 4 5 3),
        # i.e. y = (x1, x4, x2, x5, x3, x6); zero-indexed sigma below
        x = phi0(vec(1, 1, 1))
        sigma = (0, 3, 1, 4, 2, 5)
        target = tuple(x[sigma[i]] for i in range(6))
        assert [float(t) for t in target] == [1, 0, 1, 0, 1, 0]
        from ksembed.exact import VecR6
        assert permutation_equivalent(x, VecR6(target), sigma)

    def test_identity(self):
        x = phi0(vec(1, OMEGA, 2))
        assert permutation_equivalent(x, x, (0, 1, 2, 3, 4, 5))

    def test_swap_that_moves_a_one_onto_a_zero(self):
        x = phi0(vec(1, 1, 1))
        sigma = (3, 1, 2, 0, 4, 5)  # swap positions 0 and 3
        assert not permutation_equivalent(x, x, sigma)

    def test_rejects_non_permutation(self):
        x = phi0(vec(1, 1, 1))
        with pytest.raises(ValueError):
            permutation_equivalent(x, x, (0, 0, 1, 2, 3, 4))

    @given(nonzero_vec, nonzero_vec)
    @settings(max_examples=25)
    def test_48_simultaneous_permutations_preserve_dots(self, u, v):
        from ksembed.exact import VecR6
        x, y = phi0(u), phi0(v)
        sigmas = swap_permutations()
        assert len(sigmas) == 48
        expected = dot6(x, y)
        for sigma in sigmas:
            xs = VecR6(tuple(x[sigma[i]] for i in range(6)))
            ys = VecR6(tuple(y[sigma[i]] for i in range(6)))
            assert dot6(xs, ys) == expected


class TestEisRational:
    def test_reduced_form(self):
        r = EisRational.make(EisensteinInt(2, 4), 6)
        assert r.num == EisensteinInt(1, 2) and r.den == 3

    def test_negative_denominator_normalized(self):
        r = EisRational.make(EisensteinInt(1, 0), -2)
        assert r.num == EisensteinInt(-1, 0) and r.den == 2

    def test_exact_division(self):
        z = EisensteinInt(1, 2)
        r = EisRational.divide(z, z)
        assert r.num == E_ONE and r.den == 1

    def test_division_by_omega(self):
        # 1/w = w^2 since w^3 = 1
        r = EisRational.divide(E_ONE, OMEGA)
        assert r.num == OMEGA2 and r.den == 1

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            EisRational.make(E_ONE, 0)

    @given(eis, st.integers(min_value=1, max_value=40))
    def test_always_reduced(self, num, den):
        from math import gcd
        r = EisRational.make(num, den)
        assert r.den > 0
        assert gcd(gcd(abs(r.num.a), abs(r.num.b)), r.den) == 1


class TestEisensteinGcd:
    def test_three_and_sqrt_minus_three_share_a_prime(self):
        # 3 ramifies: both 3 and 1+2w are divisible by (1 - w)
        g = eis_gcd(EisensteinInt(3, 0), EisensteinInt(1, 2))
        assert g.norm() == 3

    @given(eis, eis)
    def test_gcd_divides_both(self, z, w):
        g = eis_gcd(z, w)
        if g.is_zero():
            assert z.is_zero() and w.is_zero()
            return
        for x in (z, w):
            q = EisRational.divide(x, g)
            assert q.den == 1
