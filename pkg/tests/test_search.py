import csv
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from constants import L43_U, L43_V
from exceptions import InvalidGrid, InvalidSpace
from normed_spaces import SpaceDescriptor, norm
from search import (
    CANDIDATE_FOUND, TRIVIAL_ONLY, GridSpec, f_monotone_check, f_profile, h1_frame, h1_plane_campaign, l42_scaling_campaign,
    l42_scaling_grid, lp2_sphere, lp2_triviality_campaign, perp2_defect, write_defect_surface_csv,
)
from tests.strategies import L1_3, L2_2, L4_2, vectors

SMALL_GRID = np.array([-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0])


class TestPerp2Defect:
    def test_l43_pair(self, l4_3):
        assert perp2_defect(l4_3, L43_U, L43_V) <= 1e-9

    def test_h1_frame(self, l4_3):
        u, v = h1_frame()
        assert perp2_defect(l4_3, u, v) <= 1e-9
        assert u[0] + u[1] == pytest.approx(u[2], abs=1e-15)
        assert v[0] + v[1] == pytest.approx(v[2], abs=1e-15)

    def test_zero_vector(self, l4_2):
        assert perp2_defect(l4_2, [0.3, 0.9], [0.0, 0.0]) == 0.0

    def test_l4_basis(self, l4_2):
        assert perp2_defect(l4_2, [1.0, 0.0], [0.0, 1.0]) >= 0.58

    @pytest.mark.parametrize("space", [L4_2, L2_2, L1_3], ids=["l4", "l2", "l1"])
    @given(data=st.data(), s=st.sampled_from([0.25, 0.5, 3.0, 10.0]))
    def test_scaling_both_vectors(self, space, data, s):
        u, v = data.draw(vectors(space)), data.draw(vectors(space))
        base = perp2_defect(space, u, v, k_grid=SMALL_GRID)
        assert perp2_defect(space, s * u, s * v, k_grid=SMALL_GRID) == pytest.approx(s * s * base, rel=1e-9, abs=1e-9 * s * s)

    @pytest.mark.parametrize("space", [L4_2, L2_2, L1_3], ids=["l4", "l2", "l1"])
    @given(data=st.data(), s=st.sampled_from([0.25, 0.5, 3.0, 10.0]))
    def test_scaling_v_matches_scaled_grid(self, space, data, s):
        u, v = data.draw(vectors(space)), data.draw(vectors(space))
        scaled = perp2_defect(space, u, s * v, k_grid=SMALL_GRID)
        assert scaled == pytest.approx(perp2_defect(space, u, v, k_grid=s * SMALL_GRID), rel=1e-9, abs=1e-9 * (1.0 + s * s))

    def test_custom_grid(self, l4_2):
        assert perp2_defect(l4_2, [1.0, 0.0], [0.0, 1.0], k_grid=[1.0]) == pytest.approx(2.0 - math.sqrt(2.0))


class TestGridSpec:
    def test_defaults(self):
        grid = GridSpec()
        assert grid.resolution == 256
        assert grid.k_array.shape == (35,)

    def test_resolution_floor(self):
        with pytest.raises(InvalidGrid):
            GridSpec(resolution=4)

    def test_needs_unit_scalars(self):
        with pytest.raises(InvalidGrid):
            GridSpec(k_grid=(2.0, -2.0, 4.0))


class TestLp2Sweep:
    def test_sphere_points_are_unit(self):
        theta, points = lp2_sphere(3.0, 16)
        assert theta[0] == 0.0 and theta[-1] < math.pi
        space = SpaceDescriptor.lp(3, 2)
        assert [norm(space, p) for p in points] == pytest.approx([1.0] * 16)

    def test_euclidean_control(self):
        cert = lp2_triviality_campaign(2.0, GridSpec(resolution=32))
        assert cert.verdict == CANDIDATE_FOUND
        assert cert.min_defect <= cert.grid.tol
        assert abs(np.dot(cert.argmin_u, cert.argmin_v)) <= 1e-12
        assert cert.consistent

    @pytest.mark.parametrize("p", [4.0, 1.5, 3.0])
    def test_no_pairs_off_two(self, p):
        cert = lp2_triviality_campaign(p, GridSpec(resolution=48))
        assert cert.verdict == TRIVIAL_ONLY
        assert cert.expected == TRIVIAL_ONLY
        assert cert.min_defect > cert.grid.tol
        assert cert.consistent

    @pytest.mark.parametrize("p", [3.0, 4.0, 1.5])
    def test_finer_grid_never_raises_minimum(self, p):
        coarse = lp2_triviality_campaign(p, GridSpec(resolution=16))
        fine = lp2_triviality_campaign(p, GridSpec(resolution=32))
        finer = lp2_triviality_campaign(p, GridSpec(resolution=64))
        assert finer.min_defect <= fine.min_defect <= coarse.min_defect

    def test_argmin_is_first_in_scan_order(self):
        cert = lp2_triviality_campaign(2.0, GridSpec(resolution=16), keep_surface=True)
        i, j = np.unravel_index(int(np.argmin(cert.surface)), cert.surface.shape)
        assert cert.min_defect == cert.surface[i, j]
        assert cert.argmin_angles == pytest.approx((math.pi * i / 16, math.pi * j / 16))

    def test_rejects_p_at_most_one(self):
        with pytest.raises(InvalidSpace):
            lp2_triviality_campaign(1.0)

    def test_reproducible(self):
        first = lp2_triviality_campaign(4.0, GridSpec(resolution=24)).dumps()
        second = lp2_triviality_campaign(4.0, GridSpec(resolution=24)).dumps()
        assert first == second

    def test_json(self):
        out = lp2_triviality_campaign(4.0, GridSpec(resolution=16)).to_json()
        assert out["schema"] == "spinx-report/1"
        assert out["campaign"] == "lp2"
        assert out["space"] == {"kind": "lp", "dim": 2, "p": 4.0}
        assert set(out["argmin"]) == {"u", "v", "theta_u", "theta_v"}
        json.dumps(out)

    def test_surface_csv(self, tmp_path):
        cert = lp2_triviality_campaign(4.0, GridSpec(resolution=8), keep_surface=True)
        path = tmp_path / "surface.csv"
        write_defect_surface_csv(path, cert)
        with open(path) as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["theta_u", "theta_v", "defect"]
        assert len(rows) == 1 + 64
        assert min(float(r[2]) for r in rows[1:]) == pytest.approx(cert.min_defect)

    def test_surface_csv_needs_surface(self, tmp_path):
        cert = lp2_triviality_campaign(4.0, GridSpec(resolution=8))
        with pytest.raises(ValueError):
            write_defect_surface_csv(tmp_path / "surface.csv", cert)


class TestMonotoneProfile:
    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0, 4.0, 8.0, 10.0])
    def test_increasing(self, p):
        result = f_monotone_check(p)
        assert result.passed
        assert result.min_slope > 0.0

    def test_endpoints(self):
        assert f_profile(np.array([0.0, 1.0]), 4.0).tolist() == [-1.0, 1.0]

    def test_invalid(self):
        with pytest.raises(InvalidSpace):
            f_monotone_check(1.0)
        with pytest.raises(InvalidGrid):
            f_monotone_check(4.0, grid_points=10)


class TestH1Plane:
    def test_campaign(self):
        report = h1_plane_campaign(30, seed=2)
        ids = [a.id for a in report.axioms]
        assert ids[:2] == ["h1-norm-compatibility", "mirror-plane-compatibility"]
        assert "example-frame-jordan-identity" in ids and "h1-frame-jb-norm" in ids
        assert not report.axiom("example-pair-in-h1").passed
        assert all(a.passed for a in report.axioms if a.id != "example-pair-in-h1")
        assert report.consistent

    @pytest.mark.parametrize("a, b, squared", [(1.0, 0.0, math.sqrt(2.0)), (1.0, 1.0, 3.0 * math.sqrt(2.0)), (0.0, 0.0, 0.0)])
    def test_plane_norm(self, h1, a, b, squared):
        assert norm(h1, [a, b]) ** 2 == pytest.approx(squared, abs=1e-12)
        assert norm(h1.ambient, [a, b, a + b]) ** 2 == pytest.approx(squared, abs=1e-12)


class TestL42Scaling:
    def test_grid(self):
        grid = l42_scaling_grid()
        assert grid[0] == 0.25 and grid[-1] == 4.0
        assert 1.0 in grid

    def test_campaign(self):
        report = l42_scaling_campaign()
        assert report.axiom("k1-equality").passed
        assert report.axiom("k-gap").passed
        assert report.axiom("zero-independent").passed
        assert report.axiom("vanishes-iff-equal-magnitude").passed
        reciprocal = report.axiom("vanishes-iff-reciprocal")
        assert not reciprocal.passed
        assert (reciprocal.witness["k"], reciprocal.witness["l"]) == (2.0, 0.5)
        assert report.consistent
