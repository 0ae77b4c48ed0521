import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from constants import L42_U, L42_V, L43_U, L43_V
from exceptions import FrameMismatch, InvalidElement, NotPerpendicular, NotPositive
from jordan import (
    ZERO_PRODUCT, LineFrame, PlaneFrame, VuElement, VuvElement, abs_orthogonal_check, associativity_witness,
    bilinearity_campaign, bilinearity_defect, circ, default_plane_frame, inner_product_frame, isosceles_partner,
    jb_norm_check, jordan_campaign, jordan_identity_defect, linearly_dependent, polarized_square,
    unit_ball_square_check, vu_product, vu_sqrt, vuv_product, zero_product_campaign, zero_product_classify,
)
from normed_spaces import SpaceDescriptor, inner, norm, parallelogram_defect
from order_unit import OrderElement
from tests.strategies import HILBERT_3, L2_2, element, element_pairs, scalars

E1 = np.array([1.0, 0.0])
E2 = np.array([0.0, 1.0])

bounded = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)


def assert_close(x, y, tol=1e-9):
    assert x.isclose(y, tol), f"{x!r} != {y!r}"


class TestProduct:
    def test_euclidean_basis(self, l2_2):
        assert circ(element(l2_2, E1, 0.0), element(l2_2, E2, 0.0)).is_zero()

    def test_l4_zero_product(self, l4_2):
        z = circ(element(l4_2, L42_U, 0.0), element(l4_2, L42_V, 0.0))
        assert z.order_norm <= 1e-12

    def test_rejects_raw_arrays(self, l4_2):
        with pytest.raises(InvalidElement):
            circ(element(l4_2, E1, 0.0), np.array([0.0, 1.0]))
        with pytest.raises(InvalidElement):
            circ((E1, 0.0), element(l4_2, E2, 0.0))

    def test_unit_is_identity(self, l4_2):
        x = element(l4_2, [0.3, -1.2], 0.7)
        assert_close(circ(OrderElement.unit(l4_2), x), x)

    def test_square_agrees_with_spectral_square(self, l4_2):
        x = element(l4_2, [1.0, 2.0], -0.5)
        assert_close(circ(x, x), element(l4_2, 2.0 * -0.5 * x.v, 0.25 + x.vnorm ** 2))

    @given(element_pairs())
    def test_commutative(self, pair):
        x, y = pair
        assert_close(circ(x, y), circ(y, x))

    @given(element_pairs(HILBERT_3))
    def test_spin_factor_on_hilbert(self, pair):
        x, y = pair
        expected = element(HILBERT_3, x.alpha * y.v + y.alpha * x.v, x.alpha * y.alpha + inner(HILBERT_3, x.v, y.v))
        assert_close(circ(x, y), expected, 1e-10)

    @given(element_pairs(HILBERT_3), element_pairs(HILBERT_3))
    def test_jordan_identity_on_hilbert(self, first, second):
        x, y = first[0], second[1]
        scale = (1.0 + x.order_norm) ** 3 * (1.0 + y.order_norm)
        assert jordan_identity_defect(x, y, circ) <= 1e-11 * scale


class TestBilinearity:
    def test_euclidean(self, l2_2):
        defect, pd = bilinearity_defect(l2_2, [1.0, 0.3], [-0.2, 2.0])
        assert defect == pytest.approx(0.0, abs=1e-12)
        assert pd == pytest.approx(0.0, abs=1e-12)

    def test_l4_basis(self, l4_2):
        defect, pd = bilinearity_defect(l4_2, E1, E2)
        assert defect == pytest.approx(abs(2.0 * math.sqrt(2.0) - 4.0) / 2.0, rel=1e-12)
        assert pd == pytest.approx(parallelogram_defect(l4_2, E1, E2))

    def test_zero_vector(self, l4_2):
        assert bilinearity_defect(l4_2, [0.0, 0.0], [0.4, 1.0])[0] == pytest.approx(0.0, abs=1e-12)

    def test_polarized_square(self, l2_2, l4_2):
        assert polarized_square(element(l2_2, E1, 0.5), element(l2_2, E2, -1.0), 1.5, -2.0) <= 1e-12
        assert polarized_square(element(l4_2, E1, 0.0), element(l4_2, E2, 0.0), 1.0, 1.0) == pytest.approx(
            2.0 - math.sqrt(2.0), rel=1e-12)

    def test_polarized_square_dependent(self, l4_2):
        x = element(l4_2, [1.0, 2.0], 0.3)
        y = element(l4_2, [-2.0, -4.0], 1.0)
        assert polarized_square(x, y, 0.7, 1.3) <= 1e-11


class TestZeroProducts:
    @pytest.mark.parametrize("x, y, expected", [
        (([0.5, 0.0], 0.5), ([-1.0, 0.0], 1.0), True),
        (([0.5, 0.0], -0.5), ([-1.0, 0.0], 1.0), False),
        (([1.0, 0.0], 0.0), ([0.0, 1.0], 0.0), False),
        (([0.0, 0.0], 0.0), ([0.0, 1.0], 3.0), True),
    ])
    def test_abs_orthogonal_check(self, l2_2, x, y, expected):
        assert abs_orthogonal_check(element(l2_2, *x), element(l2_2, *y)) is expected

    @pytest.mark.parametrize("eta, expected", [(0.0, True), (2e-9, True), (5e-9, False)])
    def test_abs_orthogonal_tolerance_tracks_product_size(self, l2_2, eta, expected):
        # beta u + alpha v = (0, 1000 eta) against a tolerance of about 4e-6
        x = element(l2_2, [1000.0, 0.0], 1000.0)
        y = element(l2_2, [-1.0, eta], 1.0)
        assert abs_orthogonal_check(x, y) is expected

    def test_linear_dependence(self):
        assert linearly_dependent(np.array([1.0, 2.0]), np.array([-2.0, -4.0]))
        assert linearly_dependent(np.array([1.0, 2.0]), np.zeros(2))
        assert not linearly_dependent(E1, E2)
        assert linearly_dependent(np.array([3.0]), np.array([-1.0]))

    def test_independent(self, l4_2):
        x = element(l4_2, L42_U, 0.0)
        y = element(l4_2, L42_V, 0.0)
        assert zero_product_classify(x, y) == ZERO_PRODUCT.ZERO_INDEPENDENT

    def test_dependent(self, l2_2):
        x = element(l2_2, [0.5, 0.0], 0.5)
        y = element(l2_2, [-1.0, 0.0], 1.0)
        assert zero_product_classify(x, y) == ZERO_PRODUCT.ZERO_DEPENDENT_ORTHOGONAL

    def test_unit_squared(self, l2_2):
        e = OrderElement.unit(l2_2)
        assert zero_product_classify(e, e) == ZERO_PRODUCT.NOT_ZERO

    def test_zero_with_anything(self, l4_2):
        zero = OrderElement.zero(l4_2)
        assert zero_product_classify(zero, element(l4_2, [1.0, 3.0], -2.0)) == ZERO_PRODUCT.ZERO_DEPENDENT_ORTHOGONAL

    @given(st.floats(min_value=0.1, max_value=3.0), st.floats(min_value=0.1, max_value=3.0))
    def test_scaled_independent_pair(self, k, l):
        assume(k == l or abs(k - l) > 1e-6)
        space = SpaceDescriptor.lp(4, 2)
        z = circ(element(space, k * L42_U, 0.0), element(space, l * L42_V, 0.0))
        assert (z.order_norm <= 1e-9 * (1.0 + k * k + l * l)) == (k == l)

    @given(scalars(), st.sampled_from([-1.0, 1.0]))
    def test_dependent_family(self, c, sign):
        u = np.array([0.6, -0.8])
        x = element(L2_2, u, sign)
        y = element(L2_2, c * u, -sign * c)
        assert zero_product_classify(x, y) == ZERO_PRODUCT.ZERO_DEPENDENT_ORTHOGONAL

    def test_isosceles_partner(self, l4_2):
        v = isosceles_partner(l4_2, E1, E2, r=1.5)
        assert norm(l4_2, E1 + v) == pytest.approx(norm(l4_2, E1 - v), abs=1e-12)
        assert zero_product_classify(element(l4_2, E1, 0.0), element(l4_2, v, 0.0)) == ZERO_PRODUCT.ZERO_INDEPENDENT


class TestLineSubalgebra:
    @pytest.fixture
    def frame(self, l4_3):
        return LineFrame.from_vector(l4_3, [1.0, 2.0, -1.0])

    def test_frame_is_unit(self, frame, l4_3):
        assert norm(l4_3, frame.u) == pytest.approx(1.0)
        with pytest.raises(InvalidElement):
            LineFrame(l4_3, [1.0, 1.0, 1.0])
        with pytest.raises(InvalidElement):
            LineFrame.from_vector(l4_3, [0.0, 0.0, 0.0])

    def test_product(self, frame):
        z = vu_product(VuElement(1.0, 2.0, frame), VuElement(3.0, -1.0, frame))
        assert (z.a, z.b) == (5.0, 1.0)

    def test_product_is_restricted_circ(self, frame):
        x = VuElement(0.7, -1.1, frame)
        y = VuElement(-0.4, 2.0, frame)
        assert_close(vu_product(x, y).to_order_element(), circ(x.to_order_element(), y.to_order_element()))

    @given(bounded, bounded, bounded, bounded, bounded, bounded)
    def test_associative(self, a, b, c, d, f, g):
        frame = LineFrame(L2_2, E1)
        x, y, z = VuElement(a, b, frame), VuElement(c, d, frame), VuElement(f, g, frame)
        left = vu_product(x, vu_product(y, z))
        right = vu_product(vu_product(x, y), z)
        assert left.order_norm == pytest.approx(right.order_norm, abs=1e-12)
        assert (left - right).order_norm <= 1e-12
        assert jordan_identity_defect(x, y, vu_product) <= 1e-11

    def test_unity(self, frame):
        assert jb_norm_check(VuElement.unit(frame), vu_product) == 0.0

    @pytest.mark.parametrize("a, b, root", [(0.0, 4.0, (0.0, 2.0)), (0.0, 1.0, (0.0, 1.0)), (3.0, 5.0, (2 ** -0.5, 3 * 2 ** -0.5)),
                                            (-3.0, 5.0, (-(2 ** -0.5), 3 * 2 ** -0.5))])
    def test_sqrt(self, frame, a, b, root):
        r = vu_sqrt(VuElement(a, b, frame))
        assert (r.a, r.b) == pytest.approx(root)
        sq = vu_product(r, r)
        assert (sq.a, sq.b) == pytest.approx((a, b))

    def test_sqrt_of_non_positive(self, frame):
        with pytest.raises(NotPositive):
            vu_sqrt(VuElement(3.0, 1.0, frame))

    def test_frames_do_not_mix(self, frame, l4_3):
        other = LineFrame(l4_3, [1.0, 0.0, 0.0])
        with pytest.raises(FrameMismatch):
            vu_product(VuElement(1.0, 0.0, frame), VuElement(1.0, 0.0, other))

    @given(bounded, bounded)
    def test_unit_ball(self, a, b):
        assume(abs(abs(a) + abs(b) - 1.0) > 1e-6)
        frame = LineFrame(L2_2, E2)
        assert unit_ball_square_check(VuElement(a, b, frame), vu_product)


class TestPlaneSubalgebra:
    @pytest.fixture
    def frame(self, l4_3):
        return PlaneFrame(l4_3, L43_U, L43_V)

    def test_certificate(self, frame):
        assert frame.certificate.passed
        assert frame.certificate.max_defect <= 1e-9

    def test_rejects_non_perpendicular(self, l4_2):
        with pytest.raises(NotPerpendicular):
            PlaneFrame(l4_2, E1, E2)

    def test_norm_is_euclidean_in_coordinates(self, frame):
        x = VuvElement(3.0, -4.0, 0.0, frame)
        assert x.to_order_element().vnorm == pytest.approx(5.0, rel=1e-12)

    def test_not_associative(self, frame):
        left, right = associativity_witness(frame)
        assert (left.a1, left.a2, left.b) == (1.0, 0.0, 0.0)
        assert (left - right).order_norm == pytest.approx(1.0)

    @given(st.tuples(bounded, bounded, bounded), st.tuples(bounded, bounded, bounded))
    def test_jordan_identity(self, xs, ys):
        frame = PlaneFrame(SpaceDescriptor.lp(4, 3), L43_U, L43_V)
        x = VuvElement(*xs, frame)
        y = VuvElement(*ys, frame)
        assert jordan_identity_defect(x, y, vuv_product) <= 1e-10
        assert jb_norm_check(x, vuv_product) <= 1e-10 * (1.0 + x.order_norm ** 2)

    def test_frames_do_not_mix(self, frame, l4_3):
        other = PlaneFrame(l4_3, -L43_U, L43_V)
        with pytest.raises(FrameMismatch):
            vuv_product(VuvElement.unit(frame), VuvElement.unit(other))

    def test_default_frames(self, l4_3, l4_2, hilbert_3, h1):
        assert np.allclose(default_plane_frame(l4_3).u, L43_U)
        assert default_plane_frame(l4_2) is None
        assert default_plane_frame(SpaceDescriptor.lp(2, 1)) is None
        u, v = inner_product_frame(hilbert_3)
        assert inner(hilbert_3, u, v) == pytest.approx(0.0, abs=1e-14)
        u, v = inner_product_frame(h1)
        assert inner(h1, u, v) == pytest.approx(0.0, abs=1e-14)
        assert default_plane_frame(h1).certificate.passed


class TestCampaigns:
    def test_bilinearity_on_hilbert(self, hilbert_3):
        report = bilinearity_campaign(hilbert_3, 100)
        assert [a.id for a in report.axioms] == ["bilinearity", "bounded-defect", "parallelogram-halving",
                                                 "spin-factor-formula"]
        assert all(a.passed for a in report.axioms)
        assert report.consistent

    def test_bilinearity_fails_on_l4(self, l4_2):
        report = bilinearity_campaign(l4_2, 100)
        assert not report.axiom("bilinearity").passed
        assert report.axiom("bilinearity").witness["u"] == [1.0, 0.0]
        assert not report.axiom("bounded-defect").passed
        assert report.axiom("parallelogram-halving").passed
        assert report.axiom("spin-factor-formula").expected is None
        assert report.consistent

    @pytest.mark.parametrize("space", [SpaceDescriptor.lp(4, 2), SpaceDescriptor.lp(1, 3), SpaceDescriptor.hilbert(2)])
    def test_zero_products(self, space):
        report = zero_product_campaign(space, 60, seed=4)
        assert all(a.passed for a in report.axioms)
        assert report.axiom("independent-zero-products").checked > 0
        assert report.consistent

    def test_jordan_on_l43(self, l4_3):
        report = jordan_campaign(l4_3, 60)
        assert report.axiom("vuv-jordan-identity").passed
        assert report.axiom("vuv-jb-norm").passed
        assert not report.axiom("vuv-associativity").passed
        assert report.axiom("raw-jordan-identity").expected is None
        assert report.params["plane_frame"]["u"] == pytest.approx(L43_U.tolist())
        assert report.consistent

    def test_jordan_on_hilbert(self, hilbert_3):
        report = jordan_campaign(hilbert_3, 60)
        assert report.axiom("raw-jordan-identity").passed
        assert report.consistent

    def test_jordan_without_plane(self, l4_2):
        report = jordan_campaign(l4_2, 40)
        assert [a.id for a in report.axioms] == ["vu-jordan-identity", "vu-associativity", "vu-jb-norm", "vu-unit-ball",
                                                 "vu-sqrt", "raw-jordan-identity"]
        assert report.params["plane_frame"] is None
        assert report.consistent
