"""
Grid campaigns around 2-orthogonality (||u + kv||^2 = ||u||^2 + k^2 ||v||^2 for all k):
the l_p^2 sweep, the monotone profile behind it, the Hilbertian planes of l_4^3 and the
scaling behavior of the l_4^2 zero product.
"""
import json
import logging
import math
import time
from dataclasses import dataclass, field
from functools import cached_property, partial
from typing import NamedTuple

import numpy as np
from tqdm import tqdm

from constants import (
    ABS_TOL, DEFAULT_K_GRID, DEFAULT_RESOLUTION, DEFAULT_SEED, IDENTITY_TOL, L42_U, L42_V, L43_U, L43_V,
    MIN_RESOLUTION, REPORT_SCHEMA, SCALING_GAP,
)
from exceptions import InvalidGrid, InvalidSpace
from jordan import (
    PlaneFrame, VuvElement, ZERO_PRODUCT, circ, jb_norm_check, jordan_identity_defect, vuv_product, zero_product_classify,
)
from norm_utils import perp2_defect_block, perp2_defect_kernel
from normed_spaces import SpaceDescriptor, as_k_grid, as_vector, embed, inner, norm, row_norms
from order_unit import OrderElement
from reports import AxiomTally, CheckReport, run_partitioned
from sampling import chunk_generator

logger = logging.getLogger(__name__)

TRIVIAL_ONLY = "TrivialOnly"
CANDIDATE_FOUND = "CandidateFound"

# Rows of the defect surface evaluated per kernel call
ROW_BLOCK = 32


@dataclass(frozen=True)
class GridSpec:
    """
    Sweep parameters.

    Attributes:
    - resolution (int): Angles per unit sphere, at least MIN_RESOLUTION.
    - k_grid (tuple): Scalars k of the 2-orthogonality test; must contain 1 and -1.
    - tol (float): Defect at or below which a pair counts as 2-orthogonal.
    """
    resolution: int = DEFAULT_RESOLUTION
    k_grid: tuple = tuple(DEFAULT_K_GRID.tolist())
    tol: float = ABS_TOL

    def __post_init__(self):
        if self.resolution < MIN_RESOLUTION:
            raise InvalidGrid(f"Resolution must be at least {MIN_RESOLUTION}, got {self.resolution}.")
        if len(self.k_grid) == 0 or 1.0 not in self.k_grid or -1.0 not in self.k_grid:
            raise InvalidGrid("The k-grid must contain both 1 and -1.")

    @cached_property
    def k_array(self):
        return as_k_grid(self.k_grid, require_span=False)


@dataclass
class SearchCertificate:
    """
    Outcome of a grid sweep. A certificate states what the grid saw; it proves nothing.

    Attributes:
    - space (SpaceDescriptor): Swept space.
    - grid (GridSpec): Sweep parameters.
    - min_defect (float): Smallest defect over the grid, >= 0.
    - argmin_u, argmin_v (np.ndarray): Pair attaining it (first in (theta_u, theta_v) order).
    - argmin_angles (tuple): (theta_u, theta_v) of that pair.
    - verdict (str): CANDIDATE_FOUND iff min_defect <= tol, else TRIVIAL_ONLY.
    - expected (str | None): Verdict the theory predicts.
    - surface (np.ndarray | None): Full defect surface when kept.
    """
    space: SpaceDescriptor
    grid: GridSpec
    min_defect: float
    argmin_u: np.ndarray
    argmin_v: np.ndarray
    argmin_angles: tuple
    verdict: str
    expected: str | None = None
    surface: np.ndarray | None = field(default=None, repr=False)

    @property
    def consistent(self):
        return self.expected is None or self.verdict == self.expected

    def to_json(self):
        return {
            "schema": REPORT_SCHEMA,
            "campaign": "lp2",
            "space": self.space.to_json(),
            "resolution": self.grid.resolution,
            "k_grid": list(self.grid.k_grid),
            "tol": self.grid.tol,
            "min_defect": float(self.min_defect),
            "argmin": {
                "u": self.argmin_u.tolist(),
                "v": self.argmin_v.tolist(),
                "theta_u": self.argmin_angles[0],
                "theta_v": self.argmin_angles[1],
            },
            "verdict": self.verdict,
            "expected": self.expected,
            "consistent": self.consistent,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)


def perp2_defect(space, u, v, k_grid=None):
    """
    max over the grid of | ||u + kv||^2 - ||u||^2 - k^2 ||v||^2 |.

    Parameters:
    - space (SpaceDescriptor): The space.
    - u, v (array_like): The pair.
    - k_grid (array_like | None): Scalars, defaults to DEFAULT_K_GRID.

    Returns:
    - float: The defect, 0 iff the Pythagorean relation holds on the whole grid.
    """
    grid = DEFAULT_K_GRID if k_grid is None else as_k_grid(k_grid, require_span=False)
    return perp2_defect_kernel(as_vector(space, u), as_vector(space, v), grid, *space.kernel_args)


def sphere_angles(resolution):
    return np.pi * np.arange(resolution) / resolution


def lp2_sphere(p, resolution):
    """Points (cos t, sin t) / ||(cos t, sin t)||_p of the l_p^2 unit sphere for t = pi i / resolution."""
    theta = sphere_angles(resolution)
    dirs = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    dirs /= row_norms(SpaceDescriptor.lp(p, 2), dirs)[:, None]
    return theta, np.ascontiguousarray(dirs)


def lp2_triviality_campaign(p, grid=None, verbose=False, keep_surface=False):
    """
    Sweep pairs of unit vectors of l_p^2 for 2-orthogonality.

    Both vectors run over the half sphere t = pi i / resolution (the k-grid is symmetric,
    so opposite points add nothing). For p != 2 no pair should be 2-orthogonal; p = 2 is the
    Euclidean control, where perpendicular pairs give a zero defect.

    Parameters:
    - p (float): Exponent, p > 1.
    - grid (GridSpec | None): Sweep parameters, defaults to GridSpec().
    - verbose (bool): Show a progress bar over row blocks.
    - keep_surface (bool): Keep the full defect surface on the certificate.

    Returns:
    - SearchCertificate: Minimum defect, its pair and the verdict.
    """
    if not p > 1.0:
        raise InvalidSpace(f"The l_p^2 sweep needs p > 1, got {p}.")
    grid = grid if grid is not None else GridSpec()
    space = SpaceDescriptor.lp(p, 2)
    theta, sphere = lp2_sphere(p, grid.resolution)
    n = grid.resolution

    start = time.perf_counter()
    best = (math.inf, 0, 0)
    surface = np.empty((n, n)) if keep_surface else None
    for row_start in tqdm(range(0, n, ROW_BLOCK), desc=f"lp2 p={p:g}", disable=not verbose):
        row_stop = min(row_start + ROW_BLOCK, n)
        block = perp2_defect_block(sphere, sphere, row_start, row_stop, grid.k_array, float(p))
        i, j = np.unravel_index(int(np.argmin(block)), block.shape)
        candidate = (float(block[i, j]), row_start + int(i), int(j))
        best = min(best, candidate)
        if keep_surface:
            surface[row_start:row_stop] = block
    logger.info("lp2 sweep p=%g resolution %d took %.2f sec", p, n, time.perf_counter() - start)

    min_defect, i, j = best
    return SearchCertificate(
        space=space,
        grid=grid,
        min_defect=min_defect,
        argmin_u=sphere[i].copy(),
        argmin_v=sphere[j].copy(),
        argmin_angles=(float(theta[i]), float(theta[j])),
        verdict=CANDIDATE_FOUND if min_defect <= grid.tol else TRIVIAL_ONLY,
        expected=CANDIDATE_FOUND if p == 2.0 else TRIVIAL_ONLY,
        surface=surface,
    )


def write_defect_surface_csv(path, certificate):
    """Write theta_u, theta_v, defect rows of a kept surface for external plotting."""
    if certificate.surface is None:
        raise ValueError("The certificate was built without keep_surface=True.")
    theta = sphere_angles(certificate.grid.resolution)
    tu, tv = np.meshgrid(theta, theta, indexing="ij")
    rows = np.column_stack([tu.ravel(), tv.ravel(), certificate.surface.ravel()])
    np.savetxt(path, rows, delimiter=",", header="theta_u,theta_v,defect", comments="", fmt="%.17g")
    logger.info("wrote %d surface rows to %s", rows.shape[0], path)


class MonotoneResult(NamedTuple):
    passed: bool
    min_slope: float


def f_profile(x, p):
    """f(x) = x^2 - (1 - x^p)^(2/p) on [0, 1]."""
    return x * x - np.maximum(1.0 - x ** p, 0.0) ** (2.0 / p)


def f_slope(x, p):
    """f'(x) = 2x + 2 x^(p-1) (1 - x^p)^(2/p - 1) on (0, 1)."""
    return 2.0 * x + 2.0 * x ** (p - 1.0) * (1.0 - x ** p) ** (2.0 / p - 1.0)


def f_monotone_check(p, grid_points=1000):
    """
    Check that f(x) = x^2 - (1 - x^p)^(2/p) increases strictly on [0, 1].

    Parameters:
    - p (float): Exponent, p > 1.
    - grid_points (int): Uniform grid size, at least 100.

    Returns:
    - MonotoneResult: (passed, smallest analytic slope on the open interval).
    """
    if not p > 1.0:
        raise InvalidSpace(f"The monotone profile needs p > 1, got {p}.")
    if grid_points < 100:
        raise InvalidGrid(f"Use at least 100 grid points, got {grid_points}.")
    x = np.linspace(0.0, 1.0, grid_points)
    increasing = bool(np.all(np.diff(f_profile(x, p)) > 0.0))
    slopes = f_slope(x[1:-1], p)
    min_slope = float(np.min(slopes))
    return MonotoneResult(increasing and min_slope > 0.0, min_slope)


def h1_frame():
    """2-orthogonal unit pair of l_4^3 inside H1 = {z = x + y}: 2^(-1/4)(1, -1, 0), 18^(-1/4)(1, 1, 2)."""
    return 2.0 ** -0.25 * np.array([1.0, -1.0, 0.0]), 18.0 ** -0.25 * np.array([1.0, 1.0, 2.0])


def _h1_chunk(tol, chunk):
    rng = chunk_generator(chunk.seed, chunk.index)
    plane = SpaceDescriptor.h1_plane()
    ambient = plane.ambient
    compat = AxiomTally("h1-norm-compatibility", IDENTITY_TOL)
    mirror = AxiomTally("mirror-plane-compatibility", IDENTITY_TOL)
    frames = [("example", PlaneFrame(ambient, L43_U, L43_V)), ("h1", PlaneFrame(ambient, *h1_frame()))]
    jordan_tallies = []
    for name, frame in frames:
        jordan_tallies.append((frame, AxiomTally(f"{name}-frame-jordan-identity", IDENTITY_TOL),
                               AxiomTally(f"{name}-frame-jb-norm", IDENTITY_TOL)))

    for _ in range(chunk.size):
        a, b = rng.uniform(-3.0, 3.0, size=2)
        w = np.array([a, b])
        lhs = math.sqrt(max(inner(plane, w, w), 0.0))
        rhs = norm(ambient, embed(plane, w))
        compat.observe(abs(lhs - rhs) / (1.0 + rhs), witness=lambda a=a, b=b: {"alpha": a, "beta": b})

        m = np.array([a, b, a - b])
        expected = math.sqrt(math.sqrt(2.0) * (a * a - a * b + b * b))
        mirror.observe(abs(norm(ambient, m) - expected) / (1.0 + expected), witness=lambda a=a, b=b: {"alpha": a, "beta": b})

        for frame, jordan_tally, jb_tally in jordan_tallies:
            x = VuvElement(*rng.uniform(-2.0, 2.0, size=3), frame)
            y = VuvElement(*rng.uniform(-2.0, 2.0, size=3), frame)
            wit = lambda x=x, y=y: {"x": x.to_json(), "y": y.to_json()}
            jordan_tally.observe(jordan_identity_defect(x, y, vuv_product), witness=wit)
            jb_tally.observe(jb_norm_check(x, vuv_product) / (1.0 + x.order_norm ** 2), witness=wit)

    return [compat, mirror] + [t for _, j, b in jordan_tallies for t in (j, b)]


def h1_plane_campaign(samples, seed=DEFAULT_SEED, tol=ABS_TOL, workers=1, verbose=False):
    """
    The Hilbertian planes of l_4^3.

    Entries: the H1 inner product reproduces ||(a, b, a + b)||_4, the mirror plane
    {z = x - y} carries sqrt(2)(a^2 - ab + b^2), both frames are 2-orthogonal, the example
    pair does not lie in H1 (expected to fail), and V(u, v) over both frames passes the Jordan
    identity and the JB norm identity.
    """
    ambient = SpaceDescriptor.lp(4, 3)
    frames = {"example-pair-perp2": (L43_U, L43_V), "h1-frame-perp2": h1_frame()}
    fixed = []
    for name, (u, v) in frames.items():
        t = AxiomTally(name, tol)
        d = perp2_defect(ambient, u, v)
        t.observe(d, witness=lambda u=u, v=v, d=d: {"u": u.tolist(), "v": v.tolist(), "defect": d})
        fixed.append(t)

    in_h1 = AxiomTally("example-pair-in-h1", tol, expected=False)
    for vec in (L43_U, L43_V):
        off = abs(vec[2] - vec[0] - vec[1])
        in_h1.observe(off, witness=lambda vec=vec, off=off: {"vector": vec.tolist(), "z_minus_x_minus_y": off})

    logger.info("h1 plane campaign, %d samples", samples)
    tallies = run_partitioned(partial(_h1_chunk, tol), samples, seed, workers, verbose, desc="h1")
    return CheckReport(
        campaign="h1",
        space=SpaceDescriptor.h1_plane().to_json(),
        axioms=[t.result() for t in tallies[:2] + fixed + [in_h1] + tallies[2:]],
        seed=seed,
        params={"samples": samples, "tol": tol},
    )


def l42_scaling_grid():
    return 2.0 ** (np.arange(-8, 9) / 4.0)


def l42_scaling_campaign(tol=ABS_TOL):
    """
    The zero product of u = (1, (sqrt 3 + sqrt 5)/2) and v = (1, (sqrt 3 - sqrt 5)/2) in l_4^2.

    Entries: ||u + v||_4^4 = ||u - v||_4^4 = 25; ||u + kv||_4 != ||u - kv||_4 for k > 0, k != 1;
    the pair classifies as an independent zero product; on the grid {2^(j/4): j = -8..8}^2,
    k (u, 0) o l (v, 0) vanishes exactly when |k| = |l|. The reciprocal reading |kl| = 1 is
    recorded as an expected failure with the witness (2, 1/2).
    """
    space = SpaceDescriptor.lp(4, 2)
    u, v = L42_U, L42_V

    at_one = AxiomTally("k1-equality", IDENTITY_TOL)
    plus = norm(space, u + v) ** 4
    minus = norm(space, u - v) ** 4
    at_one.observe(
        max(abs(plus - 25.0), abs(minus - 25.0)) / 25.0,
        witness=lambda: {"plus": plus, "minus": minus},
    )

    gap = AxiomTally("k-gap", tol)
    for k in l42_scaling_grid():
        if k == 1.0:
            continue
        g = abs(norm(space, u + k * v) ** 4 - norm(space, u - k * v) ** 4)
        gap.observe(g, witness=lambda k=k, g=g: {"k": float(k), "gap": g}, failed=g <= SCALING_GAP)

    classify = AxiomTally("zero-independent", tol)
    kind = zero_product_classify(OrderElement(space, u, 0.0), OrderElement(space, v, 0.0), tol)
    classify.observe(0.0, witness=lambda: {"kind": kind.name}, failed=kind != ZERO_PRODUCT.ZERO_INDEPENDENT)

    equal = AxiomTally("vanishes-iff-equal-magnitude", tol)
    reciprocal = AxiomTally("vanishes-iff-reciprocal", tol, expected=False)

    def vanishes(k, l):
        z = circ(OrderElement(space, k * u, 0.0), OrderElement(space, l * v, 0.0))
        return z.order_norm <= tol * (1.0 + k * k + l * l), z.order_norm

    zero, size = vanishes(2.0, 0.5)
    reciprocal.observe(size, witness=lambda: {"k": 2.0, "l": 0.5, "product_norm": size}, failed=zero != (abs(2.0 * 0.5) == 1.0))

    grid = l42_scaling_grid()
    for k in grid:
        for l in grid:
            zero, size = vanishes(float(k), float(l))
            w = lambda k=k, l=l, size=size: {"k": float(k), "l": float(l), "product_norm": size}
            equal.observe(size, witness=w, failed=zero != math.isclose(abs(k), abs(l), rel_tol=1e-12))
            reciprocal.observe(size, witness=w, failed=zero != math.isclose(abs(k * l), 1.0, rel_tol=1e-12))

    return CheckReport(
        campaign="l42",
        space=space.to_json(),
        axioms=[at_one.result(), gap.result(), classify.result(), equal.result(), reciprocal.result()],
        seed=None,
        params={"u": u.tolist(), "v": v.tolist(), "grid": grid.tolist(), "tol": tol},
    )
