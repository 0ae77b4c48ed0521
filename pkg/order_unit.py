"""
The order unit space V x R built over a normed space V.

Elements are pairs (v, alpha) ordered by the cone {(v, alpha): ||v|| <= alpha} with order unit
e = (0, 1) and order-unit norm ||v|| + |alpha|. The module provides the absolute value,
orthogonality, order projections and absolute covers, together with the randomized axiom
suites that tell strictly convex spaces apart from the rest.
"""
import logging
import math
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property, partial

import numpy as np

from constants import ABS_TOL, DEFAULT_K_GRID, DEFAULT_SEED, MIN_SEGMENT_SEPARATION, tolerance
from exceptions import DimensionMismatch, InvalidElement, NotInCone, NotOrthogonal, ZeroElement
from normed_spaces import as_k_grid, as_vector, canonical_unit_pairs, norm, row_norms, strict_convexity_verdict
from reports import AxiomTally, CheckReport, run_partitioned
from sampling import chunk_generator, random_cone_parts, random_element_parts, random_scalar, random_unit_vector

logger = logging.getLogger(__name__)


class CONE(IntEnum):
    ZERO = 0
    POSITIVE = 1
    NEGATIVE = 2
    NEITHER = 3


@dataclass(frozen=True, eq=False)
class OrderElement:
    """
    A pair (v, alpha) of V x R.

    Attributes:
    - space (SpaceDescriptor): The space V.
    - v (np.ndarray): Vector part, coordinates in V.
    - alpha (float): Scalar part.
    """
    space: object
    v: np.ndarray
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "v", as_vector(self.space, self.v))
        alpha = float(self.alpha)
        if not math.isfinite(alpha):
            raise InvalidElement("The scalar part must be finite.")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def zero(cls, space):
        return cls(space, np.zeros(space.dim), 0.0)

    @classmethod
    def unit(cls, space):
        return cls(space, np.zeros(space.dim), 1.0)

    @cached_property
    def vnorm(self):
        return norm(self.space, self.v)

    @property
    def order_norm(self):
        return self.vnorm + abs(self.alpha)

    # ================ Arithmetic ================

    def _check_space(self, other):
        if not isinstance(other, OrderElement):
            return NotImplemented
        if other.space != self.space:
            raise DimensionMismatch(f"Cannot combine elements of {self.space.label} and {other.space.label}.")
        return other

    def __add__(self, other):
        if self._check_space(other) is NotImplemented:
            return NotImplemented
        return OrderElement(self.space, self.v + other.v, self.alpha + other.alpha)

    def __sub__(self, other):
        if self._check_space(other) is NotImplemented:
            return NotImplemented
        return OrderElement(self.space, self.v - other.v, self.alpha - other.alpha)

    def __neg__(self):
        return OrderElement(self.space, -self.v, -self.alpha)

    def __mul__(self, k):
        if not isinstance(k, (int, float, np.floating, np.integer)):
            return NotImplemented
        return OrderElement(self.space, float(k) * self.v, float(k) * self.alpha)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1.0 / float(k))

    def __abs__(self):
        return absolute(self)

    # ================ Comparison ================

    def isclose(self, other, tol=ABS_TOL):
        """Componentwise equality within tol * (1 + the larger order-unit norm)."""
        self._check_space(other)
        t = tolerance(max(self.order_norm, other.order_norm), tol)
        return bool(np.max(np.abs(self.v - other.v), initial=0.0) <= t and abs(self.alpha - other.alpha) <= t)

    def distance(self, other):
        return (self - other).order_norm

    def is_zero(self, tol=ABS_TOL):
        return self.vnorm <= tol and abs(self.alpha) <= tol

    # ================ Serialization ================

    def to_json(self):
        return {"v": self.v.tolist(), "alpha": self.alpha}

    @classmethod
    def from_json(cls, space, obj):
        try:
            return cls(space, obj["v"], obj["alpha"])
        except (KeyError, TypeError) as exc:
            raise InvalidElement(f"Malformed element: {obj!r}") from exc

    def __repr__(self):
        return f"OrderElement({self.v.tolist()}, {self.alpha!r})"


def cone_classify(x, tol=ABS_TOL):
    """
    Locate an element relative to the cone.

    Parameters:
    - x (OrderElement): The element.
    - tol (float): Base tolerance. Boundary ties ||v|| = |alpha| count as in the cone.

    Returns:
    - CONE: ZERO, POSITIVE (||v|| <= alpha), NEGATIVE (||v|| <= -alpha) or NEITHER.
    """
    nv = x.vnorm
    if nv <= tol and abs(x.alpha) <= tol:
        return CONE.ZERO
    t = tolerance(nv + abs(x.alpha), tol)
    if nv <= x.alpha + t:
        return CONE.POSITIVE
    if nv <= -x.alpha + t:
        return CONE.NEGATIVE
    return CONE.NEITHER


def in_cone(x, tol=ABS_TOL):
    return cone_classify(x, tol) in (CONE.POSITIVE, CONE.ZERO)


def order_unit_norm(x):
    return x.order_norm


def absolute(x, tol=ABS_TOL):
    """
    Absolute value |x|: x on the cone, -x on the negative cone, ((alpha/||v||) v, ||v||) otherwise.

    Also available as the builtin abs(x).
    """
    cls = cone_classify(x, tol)
    if cls == CONE.NEGATIVE:
        return -x
    if cls == CONE.NEITHER:
        return OrderElement(x.space, (x.alpha / x.vnorm) * x.v, x.vnorm)
    return x


def pos_part(x, tol=ABS_TOL):
    return 0.5 * (absolute(x, tol) + x)


def neg_part(x, tol=ABS_TOL):
    return 0.5 * (absolute(x, tol) - x)


def leq(x, y, tol=ABS_TOL):
    """Cone order: x <= y iff y - x is in the cone."""
    return in_cone(y - x, tol)


def orthogonal(x, y, tol=ABS_TOL):
    """
    Orthogonality x ⊥ y: |x - y| = x + y componentwise within tolerance.

    Only elements of the cone can be orthogonal; anything else returns False.
    """
    if not (in_cone(x, tol) and in_cone(y, tol)):
        return False
    return absolute(x - y, tol).isclose(x + y, tol)


def orthogonal_structure(x, y, tol=ABS_TOL):
    """
    Factor an orthogonal pair as x = lam * p and y = mu * (e - p).

    Parameters:
    - x, y (OrderElement): Nonzero orthogonal elements.
    - tol (float): Base tolerance.

    Returns:
    - tuple: (p, lam, mu) with p = (u / 2||u||, 1/2), lam = 2 alpha, mu = 2 beta.
    """
    if x.is_zero(tol) or y.is_zero(tol):
        raise ZeroElement("The orthogonal structure needs two nonzero elements.")
    if not orthogonal(x, y, tol):
        raise NotOrthogonal(f"{x!r} is not orthogonal to {y!r}.")

    p = OrderElement(x.space, x.v / (2.0 * x.vnorm), 0.5)
    lam = 2.0 * x.alpha
    mu = 2.0 * y.alpha
    e = OrderElement.unit(x.space)
    if not (x.isclose(lam * p, tol) and y.isclose(mu * (e - p), tol)):
        logger.warning("orthogonal structure of %r, %r reconstructs poorly", x, y)
    return p, lam, mu


def is_order_projection(x, tol=ABS_TOL):
    """Order projections are exactly 0, e and the elements (u, 1/2) with ||u|| = 1/2."""
    if x.is_zero(tol) or x.isclose(OrderElement.unit(x.space), tol):
        return True
    return abs(x.alpha - 0.5) <= tol and abs(x.vnorm - 0.5) <= tol


def absolute_cover(x, tol=ABS_TOL):
    """
    Smallest order projection p with |x| <= ||x|| p.

    Parameters:
    - x (OrderElement): A nonzero element.
    - tol (float): Base tolerance.

    Returns:
    - OrderElement: (v / 2||v||, 1/2) when ||v|| = alpha, (-v / 2||v||, 1/2) when ||v|| = -alpha,
      e otherwise.
    """
    if x.is_zero(tol):
        raise ZeroElement("The zero element has no absolute cover.")
    nv = x.vnorm
    t = tolerance(x.order_norm, tol)
    if x.alpha > t and abs(nv - x.alpha) <= t:
        return OrderElement(x.space, x.v / (2.0 * nv), 0.5)
    if x.alpha < -t and abs(nv + x.alpha) <= t:
        return OrderElement(x.space, -x.v / (2.0 * nv), 0.5)
    return OrderElement.unit(x.space)


def orthogonal_pair(space, direction, a=1.0, b=1.0):
    """
    Build the orthogonal pair (a(d, 1), b(-d, 1)) for the unit direction d of a vector.

    Parameters:
    - space (SpaceDescriptor): The space V.
    - direction (array_like): Nonzero vector, normalized internally.
    - a, b (float): Nonnegative scales.

    Returns:
    - tuple: (OrderElement, OrderElement).
    """
    d = as_vector(space, direction)
    nd = norm(space, d)
    if nd == 0.0:
        raise ZeroElement("An orthogonal pair needs a nonzero direction.")
    if a < 0 or b < 0:
        raise NotInCone("Orthogonal pairs live in the cone; scales must be nonnegative.")
    d = d / nd
    return OrderElement(space, a * d, a), OrderElement(space, -b * d, b)


# ================ Absolute infinity-orthogonality ================

def _inf_orthogonality_defect(x1, y1, k_grid):
    """Largest | ||x1 + k y1|| - max(||x1||, ||k y1||) | over the grid, relative to the scale."""
    rows = x1.v[None, :] + k_grid[:, None] * y1.v[None, :]
    lhs = row_norms(x1.space, rows) + np.abs(x1.alpha + k_grid * y1.alpha)
    rhs = np.maximum(x1.order_norm, np.abs(k_grid) * y1.order_norm)
    d = np.abs(lhs - rhs) / (1.0 + rhs)
    i = int(np.argmax(d))
    return float(d[i]), float(k_grid[i])


def _scan_sub_elements(x_subs, y_subs, k_grid, tol, stop_at_first=False):
    """Return the worst defect over all sub-element pairs and the first failing (x1, y1, k)."""
    worst = 0.0
    witness = None
    for x1 in x_subs:
        for y1 in y_subs:
            d, k = _inf_orthogonality_defect(x1, y1, k_grid)
            worst = max(worst, d)
            if d > tol and witness is None:
                witness = {"x1": x1.to_json(), "y1": y1.to_json(), "k": k, "defect": d}
                if stop_at_first:
                    return worst, witness
    return worst, witness


def _sub_elements(x, rng, n, tol):
    """Multiples t x for t in [0, 1] plus random perturbations that stay inside [0, x]."""
    subs = [x, 0.5 * x]
    subs += [float(t) * x for t in rng.uniform(0.0, 1.0, size=n)]
    scale = 0.25 * max(x.order_norm, tol)
    zero = OrderElement.zero(x.space)
    for _ in range(n):
        dv, da = random_cone_parts(rng, x.space)
        c = OrderElement(x.space, dv, da)
        x1 = rng.uniform(0.0, 1.0) * x + (scale / max(c.order_norm, tol)) * c
        if leq(zero, x1, 0.0) and leq(x1, x, 0.0):
            subs.append(x1)
    return subs


def perp_inf_a_check(x, y, sub_samples=16, k_grid=None, tol=ABS_TOL, seed=DEFAULT_SEED):
    """
    Test absolute infinity-orthogonality: ||x1 + k y1|| = max(||x1||, ||k y1||) for sampled
    0 <= x1 <= x, 0 <= y1 <= y and every k on the grid, in the order-unit norm.

    Parameters:
    - x, y (OrderElement): Cone elements.
    - sub_samples (int): Random sub-elements drawn per side on top of x, x/2 and 0.
    - k_grid (array_like | None): Scalars, defaults to DEFAULT_K_GRID.
    - tol (float): Relative tolerance on the max identity.
    - seed (int): Seed of the sub-element stream.

    Returns:
    - bool: True if no sampled sub-element pair violates the identity.
    """
    if not in_cone(x, tol) or not in_cone(y, tol):
        raise NotInCone("Absolute infinity-orthogonality is defined on the cone.")
    grid = DEFAULT_K_GRID if k_grid is None else as_k_grid(k_grid, require_span=False)
    rng = chunk_generator(seed, 0)
    x_subs = _sub_elements(x, rng, sub_samples, tol)
    y_subs = _sub_elements(y, rng, sub_samples, tol)
    defect, _ = _scan_sub_elements(x_subs, y_subs, grid, tol, stop_at_first=True)
    return defect <= tol


# ================ Axiom suites ================

def random_element(rng, space):
    v, alpha = random_element_parts(rng, space)
    return OrderElement(space, v, alpha)


def random_cone_element(rng, space):
    v, alpha = random_cone_parts(rng, space)
    return OrderElement(space, v, alpha)


def _flat_segments(space, tol):
    """Canonical sphere pairs whose midpoint still has norm 1."""
    out = []
    for d1, d2 in canonical_unit_pairs(space):
        if norm(space, d1 - d2) >= MIN_SEGMENT_SEPARATION and norm(space, 0.5 * (d1 + d2)) >= 1.0 - tol:
            out.append((d1, d2))
    return out


def _segment_triple(space, d1, d2):
    """u = (-d, 1), v = (d, 1), w = (d1/2, 1/2) for the midpoint d of a flat segment [d1, d2]."""
    d = 0.5 * (d1 + d2)
    d = d / norm(space, d)
    return (OrderElement(space, -d, 1.0), OrderElement(space, d, 1.0), OrderElement(space, 0.5 * d1, 0.5))


def _triple_witness(u, v, w):
    return lambda: {"u": u.to_json(), "v": v.to_json(), "w": w.to_json()}


def _observe_axiom5(tally, u, v, w, tol):
    zero = OrderElement.zero(u.space)
    if not (orthogonal(u, v, tol) and leq(zero, w, tol) and leq(w, v, tol)):
        return
    tally.observe(
        absolute(u - w, tol).distance(u + w),
        witness=_triple_witness(u, v, w),
        failed=not orthogonal(u, w, tol),
    )


def _axiom_chunk(space, tol, chunk):
    rng = chunk_generator(chunk.seed, chunk.index)
    sc = strict_convexity_verdict(space)
    tallies = [
        AxiomTally("axiom-1", tol),
        AxiomTally("axiom-2", tol),
        AxiomTally("axiom-3", tol),
        AxiomTally("axiom-4", tol),
        AxiomTally("axiom-5", tol, expected=sc),
    ]
    a1, a2, a3, a4, a5 = tallies

    if chunk.index == 0:
        for d1, d2 in _flat_segments(space, tol):
            _observe_axiom5(a5, *_segment_triple(space, d1, d2), tol)

    for _ in range(chunk.size):
        # (1) |x| = x on the cone
        x = random_cone_element(rng, space)
        a1.observe(absolute(x, tol).distance(x) / (1.0 + x.order_norm), witness=lambda x=x: {"x": x.to_json()})

        # (2) |x| + x and |x| - x lie in the cone
        x = random_element(rng, space)
        ax = absolute(x, tol)
        worst = 0.0
        for w in (ax + x, ax - x):
            worst = max(worst, (w.vnorm - w.alpha) / (1.0 + w.order_norm))
        a2.observe(
            max(worst, 0.0),
            witness=lambda x=x: {"x": x.to_json()},
            failed=not (in_cone(ax + x, tol) and in_cone(ax - x, tol)),
        )

        # (3) |kx| = |k||x|
        k = random_scalar(rng)
        lhs = absolute(k * x, tol)
        rhs = abs(k) * ax
        a3.observe(lhs.distance(rhs) / (1.0 + rhs.order_norm), witness=lambda x=x, k=k: {"x": x.to_json(), "k": k})

        # (4) u ⊥ v and u ⊥ w imply u ⊥ |v + w| and u ⊥ |v - w|
        d = random_unit_vector(rng, space)
        a, b, c = rng.uniform(0.1, 3.0, size=3)
        u, v = orthogonal_pair(space, d, a, b)
        w = OrderElement(space, -c * d, c)
        if orthogonal(u, v, tol) and orthogonal(u, w, tol):
            ok = orthogonal(u, absolute(v + w, tol), tol) and orthogonal(u, absolute(v - w, tol), tol)
            a4.observe(
                absolute(u - absolute(v - w, tol), tol).distance(u + absolute(v - w, tol)),
                witness=_triple_witness(u, v, w),
                failed=not ok,
            )

        # (5) u ⊥ v and 0 <= w <= v imply u ⊥ w
        _observe_axiom5(a5, u, v, float(rng.uniform(0.0, 1.0)) * v, tol)
        d1 = random_unit_vector(rng, space)
        d2 = random_unit_vector(rng, space)
        if norm(space, d1 - d2) >= MIN_SEGMENT_SEPARATION and norm(space, 0.5 * (d1 + d2)) >= 1.0 - tol:
            _observe_axiom5(a5, *_segment_triple(space, d1, d2), tol)

    return tallies


def axiom_suite(space, samples, seed=DEFAULT_SEED, tol=ABS_TOL, workers=1, verbose=False):
    """
    Randomized check of the five absolutely-ordered-space axioms on V x R.

    (1) |x| = x on the cone, (2) |x| +- x in the cone, (3) |kx| = |k||x|,
    (4) u ⊥ v, u ⊥ w imply u ⊥ |v +- w|, (5) u ⊥ v, 0 <= w <= v imply u ⊥ w.
    Axioms (1)-(4) hold in every normed space; (5) holds iff V is strictly convex, and on
    spaces with flat segments the suite constructs the failing triple from one.

    Parameters:
    - space (SpaceDescriptor): The space V.
    - samples (int): Random instances per axiom.
    - seed (int): Campaign seed.
    - tol (float): Base tolerance.
    - workers (int): Processes used for the sampling chunks.
    - verbose (bool): Show a progress bar.

    Returns:
    - CheckReport: Campaign "axioms".
    """
    logger.info("axiom suite on %s, %d samples", space.label, samples)
    tallies = run_partitioned(partial(_axiom_chunk, space, tol), samples, seed, workers, verbose, desc="axioms")
    return CheckReport(
        campaign="axioms",
        space=space.to_json(),
        axioms=[t.result() for t in tallies],
        seed=seed,
        params={"samples": samples, "tol": tol, "strictly_convex": strict_convexity_verdict(space)},
    )


def _order_unit_chunk(space, tol, sub_samples, chunk):
    rng = chunk_generator(chunk.seed, chunk.index)
    sc = strict_convexity_verdict(space)
    sandwich = AxiomTally("O.inf.1", tol)
    perp_to_inf = AxiomTally("O.perp_inf.1", tol, expected=sc)
    inf_to_perp = AxiomTally("O.perp_inf.2", tol)

    if chunk.index == 0:
        # Sub-elements drawn from the two halves of a flat segment break the max identity.
        for d1, d2 in _flat_segments(space, tol):
            x, y = orthogonal_pair(space, 0.5 * (d1 + d2))
            x1 = OrderElement(space, 0.5 * d1, 0.5)
            y1 = OrderElement(space, -0.5 * d2, 0.5)
            zero = OrderElement.zero(space)
            if all(leq(zero, s, tol) for s in (x1, y1)) and leq(x1, x, tol) and leq(y1, y, tol):
                defect, witness = _scan_sub_elements([x1], [y1], DEFAULT_K_GRID, tol)
                perp_to_inf.observe(defect, witness=lambda witness=witness: witness)

    for _ in range(chunk.size):
        # u <= v <= w bounds ||v|| by the larger end
        u = random_element(rng, space)
        v = u + random_cone_element(rng, space)
        w = v + random_cone_element(rng, space)
        excess = v.order_norm - max(u.order_norm, w.order_norm)
        sandwich.observe(
            max(excess, 0.0),
            witness=lambda u=u, v=v, w=w: {"u": u.to_json(), "v": v.to_json(), "w": w.to_json()},
            failed=excess > tolerance(w.order_norm, tol),
        )

        # orthogonal pairs are absolutely infinity-orthogonal
        d = random_unit_vector(rng, space)
        a, b = rng.uniform(0.1, 3.0, size=2)
        x, y = orthogonal_pair(space, d, a, b)
        ok = perp_inf_a_check(x, y, sub_samples, tol=tol, seed=int(rng.integers(2**62)))
        perp_to_inf.observe(0.0 if ok else 1.0, witness=lambda x=x, y=y: {"x": x.to_json(), "y": y.to_json()}, failed=not ok)

        # absolutely infinity-orthogonal cone pairs are orthogonal
        candidates = [(x, y, ok)]
        x2, y2 = random_cone_element(rng, space), random_cone_element(rng, space)
        candidates.append((x2, y2, perp_inf_a_check(x2, y2, sub_samples, tol=tol, seed=int(rng.integers(2**62)))))
        for x, y, hypothesis in candidates:
            if hypothesis:
                inf_to_perp.observe(
                    absolute(x - y, tol).distance(x + y),
                    witness=lambda x=x, y=y: {"x": x.to_json(), "y": y.to_json()},
                    failed=not orthogonal(x, y, tol),
                )

    return [sandwich, perp_to_inf, inf_to_perp]


def order_unit_suite(space, samples, seed=DEFAULT_SEED, tol=ABS_TOL, sub_samples=4, workers=1, verbose=False):
    """
    Randomized check that (V x R, e) is an absolute order unit space.

    O.inf.1: u <= v <= w implies ||v|| <= max(||u||, ||w||) (always holds).
    O.perp_inf.1: u ⊥ v implies absolute infinity-orthogonality (holds iff V is strictly convex).
    O.perp_inf.2: absolute infinity-orthogonality of cone elements implies u ⊥ v.

    Returns:
    - CheckReport: Campaign "order-unit".
    """
    logger.info("order unit suite on %s, %d samples", space.label, samples)
    task = partial(_order_unit_chunk, space, tol, sub_samples)
    tallies = run_partitioned(task, samples, seed, workers, verbose, desc="order-unit")
    return CheckReport(
        campaign="order-unit",
        space=space.to_json(),
        axioms=[t.result() for t in tallies],
        seed=seed,
        params={"samples": samples, "tol": tol, "sub_samples": sub_samples,
                "strictly_convex": strict_convexity_verdict(space)},
    )
