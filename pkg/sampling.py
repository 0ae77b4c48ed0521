"""
Seeded random streams and samplers for the verification campaigns.

Every stream is a Philox (counter-based) generator keyed by the campaign seed and a chunk index,
so a chunk draws the same numbers whichever worker runs it.
"""
import numpy as np
from numpy.random import Generator, Philox, SeedSequence

from norm_utils import space_norm


def chunk_generator(seed, index):
    """
    Build the random generator of one campaign chunk.

    Parameters:
    - seed (int): Campaign seed.
    - index (int): Chunk index.

    Returns:
    - Generator: Philox-backed generator for that chunk.
    """
    return Generator(Philox(SeedSequence([int(seed), int(index)])))


def random_vector(rng, dim, scale=1.0):
    return np.ascontiguousarray(rng.normal(0.0, scale, size=dim))


def random_unit_vector(rng, space):
    """
    Draw a random point of the unit sphere of a space (normalized Gaussian direction).

    Parameters:
    - rng (Generator): Random generator.
    - space (SpaceDescriptor): Space whose norm defines the sphere.

    Returns:
    - np.ndarray: A vector of norm 1.
    """
    while True:
        x = random_vector(rng, space.dim)
        n = space_norm(x, *space.kernel_args)
        if n > 1e-6:
            return np.ascontiguousarray(x / n)


def random_element_parts(rng, space):
    """
    Draw (v, alpha) covering every cone class of V x R.

    About 10% of draws sit exactly on the cone boundary ||v|| = |alpha| and 5% have v = 0;
    the rest use alpha = r ||v|| with r uniform in [-2, 2].

    Returns:
    - tuple: (np.ndarray, float).
    """
    mode = rng.random()
    v = random_vector(rng, space.dim)
    if mode < 0.05:
        return np.zeros(space.dim), float(rng.normal(0.0, 2.0))

    nv = space_norm(v, *space.kernel_args)
    if mode < 0.15:
        return v, float(nv if rng.random() < 0.5 else -nv)
    return v, float(rng.uniform(-2.0, 2.0) * nv)


def random_cone_parts(rng, space):
    """Draw (v, alpha) with ||v|| <= alpha; a fifth of the draws lie on the boundary."""
    v = random_vector(rng, space.dim)
    nv = space_norm(v, *space.kernel_args)
    if rng.random() < 0.2:
        return v, float(nv)
    return v, float(nv * rng.uniform(1.0, 3.0))


def random_scalar(rng, low=-4.0, high=4.0):
    return float(rng.uniform(low, high))
