import numpy as np

# Tolerances
ABS_TOL = 1e-9
REL_TOL = 1e-9
EXACT_TOL = 1e-12
IDENTITY_TOL = 1e-10

# Zero-product side conditions are checked this many times looser than the product itself
SIDE_CONDITION_SLACK = 1e3

# Relative singular value threshold of the linear dependence test
RANK_TOL = 1e-8

# Campaign defaults
DEFAULT_SEED = 42
DEFAULT_SAMPLES = 10000
DEFAULT_RESOLUTION = 256
MIN_RESOLUTION = 8
CHUNK_SIZE = 1000

# Flat-segment witnesses need endpoints at least this far apart
MIN_SEGMENT_SEPARATION = 0.5

# A bilinearity defect above this counts as a non-Hilbert witness
BILINEARITY_WITNESS = 0.1

# Gap required between ||u + kv|| and ||u - kv|| away from k = 1
SCALING_GAP = 1e-6

DEFAULT_K_GRID = np.array(
    sorted({0.0} | {s * 2.0 ** j for j in range(-8, 9) for s in (1.0, -1.0)}),
    dtype=np.float64,
)

REPORT_SCHEMA = "spinx-report/1"

# 2-orthogonal unit pair of l_4^3 spanning the plane z = x - y
L43_U = 2.0 ** -0.25 * np.array([1.0, 1.0, 0.0])
L43_V = 18.0 ** -0.25 * np.array([1.0, -1.0, 2.0])

# Pair of l_4^2 with ||u + v||_4^4 = ||u - v||_4^4 = 25 and zero product
L42_U = np.array([1.0, (3.0 ** 0.5 + 5.0 ** 0.5) / 2.0])
L42_V = np.array([1.0, (3.0 ** 0.5 - 5.0 ** 0.5) / 2.0])


def tolerance(scale, tol=ABS_TOL):
    """
    Two-part tolerance: absolute tol plus tol relative to the magnitude involved.

    Parameters:
    - scale (float): Magnitude of the quantities being compared.
    - tol (float): Base tolerance.

    Returns:
    - float: tol * (1 + scale).
    """
    return tol * (1.0 + abs(scale))
