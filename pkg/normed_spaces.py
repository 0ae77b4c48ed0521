import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from constants import ABS_TOL, DEFAULT_K_GRID, DEFAULT_SEED, MIN_SEGMENT_SEPARATION
from exceptions import DimensionMismatch, InvalidElement, InvalidGrid, InvalidSpace, UnsupportedSpace
from norm_utils import SpaceKind, gram_inner, perp2_defect_kernel, space_norm, space_norm_squared
from reports import AxiomTally, CheckReport
from sampling import chunk_generator, random_unit_vector

logger = logging.getLogger(__name__)

_KIND_NAMES = {SpaceKind.LP: "lp", SpaceKind.HILBERT: "hilbert", SpaceKind.WEIGHTED: "weighted"}


def _as_matrix(rows):
    return tuple(tuple(float(x) for x in row) for row in rows)


@dataclass(frozen=True)
class SpaceDescriptor:
    """
    Identifies a finite-dimensional real normed space V.

    Attributes:
    - kind (SpaceKind): l_p sequence space, Euclidean space or weighted inner-product space.
    - dim (int): Dimension of V.
    - p (float): l_p exponent, 1 <= p <= inf. Always 2 for Hilbert spaces.
    - gram (tuple | None): Gram matrix of a weighted space, as nested tuples.
    - embedding (tuple | None): Matrix mapping coordinates into an ambient space.
    - ambient (SpaceDescriptor | None): The space the embedding lands in.
    """
    kind: SpaceKind
    dim: int
    p: float = 2.0
    gram: tuple | None = None
    embedding: tuple | None = None
    ambient: "SpaceDescriptor | None" = None

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise InvalidSpace(f"Dimension must be a positive integer, got {self.dim!r}.")

        if self.kind == SpaceKind.LP:
            if math.isnan(self.p) or self.p < 1:
                raise InvalidSpace(f"l_p spaces need p >= 1, got {self.p}.")
        elif self.kind == SpaceKind.HILBERT:
            if self.p != 2.0:
                raise InvalidSpace("Hilbert spaces carry p = 2.")
        elif self.kind == SpaceKind.WEIGHTED:
            if self.gram is None:
                raise InvalidSpace("A weighted space needs a Gram matrix.")
            g = np.array(self.gram, dtype=np.float64)
            if g.shape != (self.dim, self.dim) or not np.all(np.isfinite(g)):
                raise InvalidSpace(f"Gram matrix must be a finite {self.dim}x{self.dim} matrix.")
            if not np.allclose(g, g.T, rtol=0.0, atol=1e-12):
                raise InvalidSpace("Gram matrix must be symmetric.")
            try:
                np.linalg.cholesky(g)
            except np.linalg.LinAlgError as exc:
                raise InvalidSpace("Gram matrix must be positive definite.") from exc
        else:
            raise InvalidSpace(f"Unknown space kind {self.kind!r}.")

        if self.embedding is not None:
            if self.ambient is None:
                raise InvalidSpace("An embedding needs its ambient space.")
            e = np.array(self.embedding, dtype=np.float64)
            if e.shape != (self.ambient.dim, self.dim):
                raise InvalidSpace(f"Embedding must be {self.ambient.dim}x{self.dim}.")

    # ================ Factories ================

    @classmethod
    def lp(cls, p, dim):
        return cls(SpaceKind.LP, int(dim), float(p))

    @classmethod
    def hilbert(cls, dim):
        return cls(SpaceKind.HILBERT, int(dim))

    @classmethod
    def weighted(cls, gram, embedding=None, ambient=None):
        gram = _as_matrix(gram)
        return cls(
            SpaceKind.WEIGHTED,
            len(gram),
            gram=gram,
            embedding=None if embedding is None else _as_matrix(embedding),
            ambient=ambient,
        )

    @classmethod
    def h1_plane(cls):
        """
        The plane {(a, b, a + b)} of l_4^3 in (a, b) coordinates.

        Its inner product <(a, b), (c, d)> = (2(ac + bd) + (ad + bc)) / sqrt(2) induces the
        restriction of the l_4 norm.
        """
        s = 1.0 / math.sqrt(2.0)
        return cls.weighted(
            [[2.0 * s, s], [s, 2.0 * s]],
            embedding=[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
            ambient=cls.lp(4, 3),
        )

    # ================ Kernel plumbing ================

    @cached_property
    def gram_array(self):
        if self.gram is None:
            return np.zeros((1, 1), dtype=np.float64)
        return np.ascontiguousarray(np.array(self.gram, dtype=np.float64))

    @cached_property
    def kernel_args(self):
        return int(self.kind), float(self.p), self.gram_array

    @property
    def has_inner_product(self):
        return self.kind != SpaceKind.LP or self.p == 2.0

    @property
    def label(self):
        if self.kind == SpaceKind.LP:
            return f"lp:{_format_p(self.p)}:{self.dim}"
        if self.kind == SpaceKind.HILBERT:
            return f"hilbert:{self.dim}"
        return f"weighted:{self.dim}"

    # ================ Serialization ================

    def to_json(self):
        out = {"kind": _KIND_NAMES[self.kind], "dim": self.dim}
        if self.kind == SpaceKind.LP:
            out["p"] = "inf" if math.isinf(self.p) else self.p
        if self.gram is not None:
            out["gram"] = [list(row) for row in self.gram]
        if self.embedding is not None:
            out["embedding"] = [list(row) for row in self.embedding]
            out["ambient"] = self.ambient.to_json()
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            kind = obj["kind"]
            if kind == "lp":
                p = obj["p"]
                return cls.lp(math.inf if p == "inf" else float(p), obj["dim"])
            if kind == "hilbert":
                return cls.hilbert(obj["dim"])
            if kind == "weighted":
                ambient = obj.get("ambient")
                space = cls.weighted(
                    obj["gram"],
                    embedding=obj.get("embedding"),
                    ambient=None if ambient is None else cls.from_json(ambient),
                )
                if "dim" in obj and obj["dim"] != space.dim:
                    raise InvalidSpace("Declared dim does not match the Gram matrix.")
                return space
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidSpace):
                raise
            raise InvalidSpace(f"Malformed space descriptor: {obj!r}") from exc
        raise InvalidSpace(f"Unknown space kind {kind!r}.")

    def vector(self, coords):
        return as_vector(self, coords)


def _format_p(p):
    return "inf" if math.isinf(p) else f"{p:g}"


def as_vector(space, v):
    """
    Validate coordinates against a space and return them as a fresh float64 array.

    Parameters:
    - space (SpaceDescriptor): The space the vector lives in.
    - v (array_like): Coordinates.

    Returns:
    - np.ndarray: C-contiguous float64 copy.
    """
    try:
        arr = np.array(v, dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise InvalidElement(f"Vector entries must be real numbers: {exc}") from exc
    if arr.ndim != 1 or arr.shape[0] != space.dim:
        raise DimensionMismatch(f"Expected {space.dim} coordinates, got shape {arr.shape}.")
    if not np.all(np.isfinite(arr)):
        raise InvalidElement("Vector entries must be finite.")
    return np.ascontiguousarray(arr)


def embed(space, w):
    """Map coordinates of a weighted space into its ambient space (identity without an embedding)."""
    w = as_vector(space, w)
    if space.embedding is None:
        return w
    return np.ascontiguousarray(np.array(space.embedding, dtype=np.float64) @ w)


def norm(space, v):
    """
    Evaluate ||v|| in the given space.

    Parameters:
    - space (SpaceDescriptor): l_p, Hilbert or weighted space.
    - v (array_like): Coordinates.

    Returns:
    - float: The norm, zero iff v = 0.
    """
    return space_norm(as_vector(space, v), *space.kernel_args)


def norm_squared(space, v):
    return space_norm_squared(as_vector(space, v), *space.kernel_args)


def inner(space, u, v):
    """
    Inner product of a Hilbert or weighted space (or l_2^n).

    Raises:
    - UnsupportedSpace: For l_p spaces with p != 2.
    """
    u = as_vector(space, u)
    v = as_vector(space, v)
    if space.kind == SpaceKind.WEIGHTED:
        return gram_inner(u, v, space.gram_array)
    if not space.has_inner_product:
        raise UnsupportedSpace(f"{space.label} has no inner product.")
    return float(u @ v)


def parallelogram_defect(space, u, v):
    """Return ||u+v||^2 + ||u-v||^2 - 2||u||^2 - 2||v||^2, zero exactly on inner-product spaces."""
    u = as_vector(space, u)
    v = as_vector(space, v)
    args = space.kernel_args
    return (space_norm_squared(u + v, *args) + space_norm_squared(u - v, *args)
            - 2.0 * space_norm_squared(u, *args) - 2.0 * space_norm_squared(v, *args))


def as_k_grid(k_grid=None, require_span=True):
    """
    Validate a grid of scalars for 2-orthogonality tests.

    Parameters:
    - k_grid (array_like | None): Scalars; defaults to DEFAULT_K_GRID.
    - require_span (bool): Require both signs and |k| reaching at least 4.

    Returns:
    - np.ndarray: C-contiguous float64 grid.
    """
    if k_grid is None:
        return DEFAULT_K_GRID
    grid = np.ascontiguousarray(np.array(k_grid, dtype=np.float64).ravel())
    if grid.size == 0 or not np.all(np.isfinite(grid)):
        raise InvalidGrid("The k-grid must be a nonempty list of finite reals.")
    if require_span and (grid.max() < 4.0 or grid.min() > -4.0):
        raise InvalidGrid("The k-grid must contain both signs and span |k| up to at least 4.")
    return grid


class Perp2Result(NamedTuple):
    passed: bool
    max_defect: float


def perp2_check(space, u, v, k_grid=None, tol=ABS_TOL):
    """
    Test u 2-orthogonal to v: ||u + kv||^2 = ||u||^2 + k^2 ||v||^2 for every k on the grid.

    Parameters:
    - space (SpaceDescriptor): The space.
    - u, v (array_like): The pair.
    - k_grid (array_like | None): Scalars to test, defaults to DEFAULT_K_GRID.
    - tol (float): Largest accepted defect.

    Returns:
    - Perp2Result: (passed, max_defect).
    """
    grid = as_k_grid(k_grid)
    defect = perp2_defect_kernel(as_vector(space, u), as_vector(space, v), grid, *space.kernel_args)
    return Perp2Result(defect <= tol, defect)


def strict_convexity_verdict(space):
    """
    Analytic strict convexity: l_p is strictly convex iff 1 < p < inf (or dim = 1);
    Hilbert and weighted spaces always are.
    """
    if space.kind != SpaceKind.LP or space.dim == 1:
        return True
    return 1.0 < space.p < math.inf


def canonical_unit_pairs(space):
    if space.dim < 2:
        return []
    e1 = np.zeros(space.dim)
    e2 = np.zeros(space.dim)
    e1[0] = 1.0
    e2[1] = 1.0
    pairs = [(e1, e2), (e1 + e2, e1 - e2)]
    return [(a / norm(space, a), b / norm(space, b)) for a, b in pairs]


def strict_convexity_probe(space, sample_pairs, seed=DEFAULT_SEED, tol=ABS_TOL):
    """
    Search the unit sphere for a flat segment: unit u, v with ||u - v|| bounded away from 0
    and ||(u + v) / 2|| >= 1 - tol.

    The two canonical pairs (e1, e2) and (e1 + e2, e1 - e2), normalized, are tried before
    sample_pairs random pairs. Pairs closer than MIN_SEGMENT_SEPARATION are skipped.

    Parameters:
    - space (SpaceDescriptor): The space to probe.
    - sample_pairs (int): Number of random pairs, >= 1.
    - seed (int): Seed of the random stream.
    - tol (float): Flatness tolerance.

    Returns:
    - CheckReport: One entry "strict-convexity" expected to match strict_convexity_verdict;
      max_defect is the largest midpoint norm seen.
    """
    if sample_pairs < 1:
        raise ValueError("sample_pairs must be >= 1.")

    verdict = strict_convexity_verdict(space)
    tally = AxiomTally("strict-convexity", tol, expected=verdict)
    rng = chunk_generator(seed, 0)

    pairs = canonical_unit_pairs(space)
    pairs += [(random_unit_vector(rng, space), random_unit_vector(rng, space)) for _ in range(sample_pairs)]

    for u, v in pairs:
        if norm(space, u - v) < MIN_SEGMENT_SEPARATION:
            continue
        mid = norm(space, 0.5 * (u + v))
        tally.observe(
            mid,
            witness=lambda u=u, v=v, mid=mid: {"u": u.tolist(), "v": v.tolist(), "midpoint_norm": mid},
            failed=mid >= 1.0 - tol,
        )

    logger.info("strict convexity probe on %s: %d pairs checked", space.label, tally.checked)
    return CheckReport(
        campaign="strict-convexity",
        space=space.to_json(),
        axioms=[tally.result()],
        seed=seed,
        params={"sample_pairs": sample_pairs, "tol": tol, "min_separation": MIN_SEGMENT_SEPARATION},
    )


def row_norms(space, rows):
    """
    Norms of the rows of a 2-d array, vectorized for grid scans.

    Parameters:
    - space (SpaceDescriptor): The space.
    - rows (np.ndarray): Shape (n, dim).

    Returns:
    - np.ndarray: Shape (n,).
    """
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != space.dim:
        raise DimensionMismatch(f"Expected rows of length {space.dim}, got shape {rows.shape}.")
    if space.kind == SpaceKind.WEIGHTED:
        return np.sqrt(np.maximum(np.einsum("ij,jk,ik->i", rows, space.gram_array, rows), 0.0))
    return np.linalg.norm(rows, ord=space.p, axis=1)
