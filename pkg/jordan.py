"""
The product (u, a) o (v, b) = (a v + b u, a b + (||u + v||^2 - ||u - v||^2) / 4) on V x R,
its zero products, and the Jordan subalgebras V(u) and V(u, v).
"""
import logging
import math
from dataclasses import dataclass
from enum import IntEnum
from functools import partial

import numpy as np

from constants import (
    ABS_TOL, BILINEARITY_WITNESS, DEFAULT_SEED, IDENTITY_TOL, L43_U, L43_V, RANK_TOL, SIDE_CONDITION_SLACK, tolerance,
)
from exceptions import FrameMismatch, InconsistentWithTheorem, InvalidElement, NotPerpendicular, NotPositive
from norm_utils import SpaceKind
from normed_spaces import as_vector, inner, norm, norm_squared, parallelogram_defect, perp2_check
from order_unit import OrderElement, absolute, leq, orthogonal
from reports import AxiomTally, CheckReport, run_partitioned
from sampling import chunk_generator, random_element_parts, random_scalar, random_unit_vector, random_vector
from spectral import square

logger = logging.getLogger(__name__)


class ZERO_PRODUCT(IntEnum):
    NOT_ZERO = 0
    ZERO_INDEPENDENT = 1
    ZERO_DEPENDENT_ORTHOGONAL = 2


def circ(x, y):
    """
    Product of two elements of V x R.

    Parameters:
    - x, y (OrderElement): Elements of the same space.

    Returns:
    - OrderElement: (alpha v + beta u, alpha beta + (||u + v||^2 - ||u - v||^2) / 4).

    Raises:
    - InvalidElement: If an operand is not an OrderElement.
    """
    if not isinstance(x, OrderElement) or not isinstance(y, OrderElement):
        raise InvalidElement(f"circ needs two OrderElements, got {type(x).__name__} and {type(y).__name__}.")
    x._check_space(y)
    space = x.space
    scalar = x.alpha * y.alpha + 0.25 * (norm_squared(space, x.v + y.v) - norm_squared(space, x.v - y.v))
    return OrderElement(space, x.alpha * y.v + y.alpha * x.v, scalar)


def bilinearity_defect(space, u, v):
    """
    Residual of (2u + v, 0) o (v, 0) = 2 (u, 0) o (v, 0) + (v, 0) o (v, 0).

    Returns:
    - tuple: (order-unit norm of the residual, parallelogram defect of (u, v)). The residual
      equals half the absolute parallelogram defect.
    """
    u = as_vector(space, u)
    v = as_vector(space, v)
    U = OrderElement(space, u, 0.0)
    V = OrderElement(space, v, 0.0)
    lhs = circ(OrderElement(space, 2.0 * u + v, 0.0), V)
    rhs = 2.0 * circ(U, V) + circ(V, V)
    return (lhs - rhs).order_norm, parallelogram_defect(space, u, v)


def abs_orthogonal_check(x, y, tol=ABS_TOL):
    """
    |x| ⊥ |y| through the criterion beta u + alpha v = 0, ||u|| = |alpha|, ||v|| = |beta|.

    A zero element is orthogonal to everything in the cone, so either one being 0 gives True.
    """
    if x.is_zero(tol) or y.is_zero(tol):
        return True
    t = tolerance(max(x.order_norm, y.order_norm), tol)
    combo = norm(x.space, y.alpha * x.v + x.alpha * y.v)
    if combo > tolerance(x.order_norm * y.order_norm, tol):
        return False
    return abs(x.vnorm - abs(x.alpha)) <= t and abs(y.vnorm - abs(y.alpha)) <= t


def linearly_dependent(u, v, rank_tol=RANK_TOL):
    """Rank test on the 2 x n matrix [u; v]: dependent iff s_2 <= rank_tol * s_1."""
    if u.shape[0] < 2:
        return True
    s = np.linalg.svd(np.vstack([u, v]), compute_uv=False)
    return bool(s[0] == 0.0 or s[1] <= rank_tol * s[0])


def zero_product_classify(x, y, tol=ABS_TOL):
    """
    Classify a pair by its product.

    A zero product with independent u, v forces u, v != 0, alpha = beta = 0 and
    ||u + v|| = ||u - v||; with dependent u, v it forces |x| ⊥ |y|. Those side conditions are
    checked SIDE_CONDITION_SLACK times looser than the product.

    Returns:
    - ZERO_PRODUCT: NOT_ZERO, ZERO_INDEPENDENT or ZERO_DEPENDENT_ORTHOGONAL.

    Raises:
    - InconsistentWithTheorem: If a zero product misses its side conditions.
    """
    scale = (1.0 + x.order_norm) * (1.0 + y.order_norm)
    z = circ(x, y)
    if z.order_norm > tol * scale:
        return ZERO_PRODUCT.NOT_ZERO

    slack = SIDE_CONDITION_SLACK * tol
    if linearly_dependent(x.v, y.v):
        if not orthogonal(absolute(x, slack), absolute(y, slack), slack):
            raise InconsistentWithTheorem(f"zero product of dependent {x!r}, {y!r} without |x| ⊥ |y|")
        return ZERO_PRODUCT.ZERO_DEPENDENT_ORTHOGONAL

    space = x.space
    gap = abs(norm(space, x.v + y.v) - norm(space, x.v - y.v))
    if max(abs(x.alpha), abs(y.alpha), gap) > slack * scale:
        raise InconsistentWithTheorem(f"zero product of independent {x!r}, {y!r} with nonzero scalars or unequal norms")
    return ZERO_PRODUCT.ZERO_INDEPENDENT


def polarized_square(x, y, lam, mu):
    """
    Residual of (lam x + mu y)^2 = lam^2 x^2 + 2 lam mu x o y + mu^2 y^2.

    Vanishes on Hilbert spaces and whenever the vector parts are linearly dependent.
    """
    lhs = square(lam * x + mu * y)
    rhs = lam * lam * square(x) + 2.0 * lam * mu * circ(x, y) + mu * mu * square(y)
    return (lhs - rhs).order_norm


# ================ V(u) ================

class LineFrame:
    """Unit vector u spanning the subalgebra V(u) = {(a u, b)}."""
    def __init__(self, space, u, tol=ABS_TOL):
        self.space = space
        self.u = as_vector(space, u)
        if abs(norm(space, self.u) - 1.0) > tol:
            raise InvalidElement("V(u) needs a unit vector u.")

    @classmethod
    def from_vector(cls, space, u):
        u = as_vector(space, u)
        n = norm(space, u)
        if n == 0.0:
            raise InvalidElement("V(u) needs a nonzero vector.")
        return cls(space, u / n)

    def same_as(self, other):
        return self is other or (self.space == other.space and np.array_equal(self.u, other.u))


@dataclass(frozen=True, eq=False)
class VuElement:
    """(a u, b) in V(u)."""
    a: float
    b: float
    frame: LineFrame

    def _coerce(self, other):
        if not isinstance(other, VuElement):
            return NotImplemented
        if not self.frame.same_as(other.frame):
            raise FrameMismatch("Elements of V(u) for different u.")
        return other

    def __add__(self, other):
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        return VuElement(self.a + other.a, self.b + other.b, self.frame)

    def __sub__(self, other):
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        return VuElement(self.a - other.a, self.b - other.b, self.frame)

    def __mul__(self, k):
        return VuElement(k * self.a, k * self.b, self.frame)

    __rmul__ = __mul__

    @classmethod
    def unit(cls, frame):
        return cls(0.0, 1.0, frame)

    def to_order_element(self):
        return OrderElement(self.frame.space, self.a * self.frame.u, self.b)

    @property
    def order_norm(self):
        return self.to_order_element().order_norm

    def to_json(self):
        return {"a": self.a, "b": self.b}


def vu_product(x, y):
    """(a u, b) o (c u, d) = ((a d + b c) u, a c + b d); associative and commutative."""
    x._coerce(y)
    return VuElement(x.a * y.b + x.b * y.a, x.a * y.a + x.b * y.b, x.frame)


def vu_sqrt(x, tol=ABS_TOL):
    """
    Positive square root in V(u) of an element with |a| <= b.

    lam = sign(a) sqrt((b - s) / 2), mu = sqrt((b + s) / 2) with s = sqrt(b^2 - a^2), and b - s
    evaluated as a^2 / (b + s).
    """
    if abs(x.a) > x.b + tolerance(abs(x.a) + abs(x.b), tol):
        raise NotPositive(f"({x.a}, {x.b}) is not positive in V(u).")
    b = max(x.b, abs(x.a))
    if b == 0.0:
        return VuElement(0.0, 0.0, x.frame)
    s = math.sqrt(max(b * b - x.a * x.a, 0.0))
    lam = math.copysign(math.sqrt(x.a * x.a / (b + s) / 2.0), x.a)
    mu = math.sqrt((b + s) / 2.0)
    return VuElement(lam, mu, x.frame)


# ================ V(u, v) ================

class PlaneFrame:
    """
    Unit vectors u ⊥2 v spanning the subalgebra V(u, v) = {(a1 u + a2 v, b)}.

    The 2-orthogonality certificate is computed once, at construction.
    """
    def __init__(self, space, u, v, k_grid=None, tol=ABS_TOL):
        self.space = space
        self.u = as_vector(space, u)
        self.v = as_vector(space, v)
        if abs(norm(space, self.u) - 1.0) > tol or abs(norm(space, self.v) - 1.0) > tol:
            raise InvalidElement("V(u, v) needs unit vectors u and v.")
        self.certificate = perp2_check(space, self.u, self.v, k_grid, tol)
        if not self.certificate.passed:
            raise NotPerpendicular(f"u and v are not 2-orthogonal (defect {self.certificate.max_defect:.3e}).")

    def same_as(self, other):
        return self is other or (
            self.space == other.space and np.array_equal(self.u, other.u) and np.array_equal(self.v, other.v)
        )


@dataclass(frozen=True, eq=False)
class VuvElement:
    """(a1 u + a2 v, b) in V(u, v)."""
    a1: float
    a2: float
    b: float
    frame: PlaneFrame

    def _coerce(self, other):
        if not isinstance(other, VuvElement):
            return NotImplemented
        if not self.frame.same_as(other.frame):
            raise FrameMismatch("Elements of V(u, v) for different frames.")
        return other

    def __add__(self, other):
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        return VuvElement(self.a1 + other.a1, self.a2 + other.a2, self.b + other.b, self.frame)

    def __sub__(self, other):
        if self._coerce(other) is NotImplemented:
            return NotImplemented
        return VuvElement(self.a1 - other.a1, self.a2 - other.a2, self.b - other.b, self.frame)

    def __mul__(self, k):
        return VuvElement(k * self.a1, k * self.a2, k * self.b, self.frame)

    __rmul__ = __mul__

    @classmethod
    def unit(cls, frame):
        return cls(0.0, 0.0, 1.0, frame)

    def to_order_element(self):
        f = self.frame
        return OrderElement(f.space, self.a1 * f.u + self.a2 * f.v, self.b)

    @property
    def order_norm(self):
        return self.to_order_element().order_norm

    def to_json(self):
        return {"a1": self.a1, "a2": self.a2, "b": self.b}


def vuv_product(x, y):
    """((d a1 + b c1) u + (d a2 + b c2) v, a1 c1 + a2 c2 + b d); commutative, not associative."""
    x._coerce(y)
    return VuvElement(
        y.b * x.a1 + x.b * y.a1,
        y.b * x.a2 + x.b * y.a2,
        x.a1 * y.a1 + x.a2 * y.a2 + x.b * y.b,
        x.frame,
    )


def jordan_identity_defect(x, y, product):
    """Norm of x o (y o x^2) - (x o y) o x^2 for any of circ, vu_product, vuv_product."""
    x2 = product(x, x)
    return (product(x, product(y, x2)) - product(product(x, y), x2)).order_norm


def jb_norm_check(x, product):
    """| ||x^2|| - ||x||^2 | in the order-unit norm."""
    return abs(product(x, x).order_norm - x.order_norm ** 2)


def _as_order_element(x):
    return x if isinstance(x, OrderElement) else x.to_order_element()


def unit_ball_square_check(x, product, tol=ABS_TOL):
    """Whether -e <= x <= e and 0 <= x^2 <= e agree for x."""
    ox = _as_order_element(x)
    ox2 = _as_order_element(product(x, x))
    e = OrderElement.unit(ox.space)
    zero = OrderElement.zero(ox.space)
    in_ball = leq(-1.0 * e, ox, tol) and leq(ox, e, tol)
    square_in_interval = leq(zero, ox2, tol) and leq(ox2, e, tol)
    return in_ball == square_in_interval


def inner_product_frame(space):
    """Orthonormal pair (Gram-Schmidt on e1, e2) of an inner-product space of dimension >= 2."""
    e1 = np.zeros(space.dim)
    e2 = np.zeros(space.dim)
    e1[0] = 1.0
    e2[1] = 1.0
    u = e1 / norm(space, e1)
    w = e2 - inner(space, e2, u) * u
    return u, w / norm(space, w)


def default_plane_frame(space):
    """A frame for V(u, v) when one is known: inner-product spaces and l_4^3, else None."""
    if space.dim < 2:
        return None
    if space.has_inner_product:
        return PlaneFrame(space, *inner_product_frame(space))
    if space.kind == SpaceKind.LP and space.p == 4.0 and space.dim == 3:
        return PlaneFrame(space, L43_U, L43_V)
    return None


# ================ Campaigns ================

def _random_order_element(rng, space):
    v, alpha = random_element_parts(rng, space)
    return OrderElement(space, v, alpha)


def _bilinearity_chunk(space, tol, chunk):
    rng = chunk_generator(chunk.seed, chunk.index)
    hilbert = space.has_inner_product
    bilinear = AxiomTally("bilinearity", IDENTITY_TOL, expected=hilbert)
    bounded = AxiomTally("bounded-defect", BILINEARITY_WITNESS, expected=hilbert)
    halving = AxiomTally("parallelogram-halving", tol)
    formula = AxiomTally("spin-factor-formula", IDENTITY_TOL, expected=True if hilbert else None)

    pairs = []
    if chunk.index == 0 and space.dim >= 2:
        e1 = np.zeros(space.dim)
        e2 = np.zeros(space.dim)
        e1[0] = 1.0
        e2[1] = 1.0
        pairs.append((e1, e2))
    pairs += [(random_vector(rng, space.dim), random_vector(rng, space.dim)) for _ in range(chunk.size)]

    for u, v in pairs:
        defect, pd = bilinearity_defect(space, u, v)
        scale = 1.0 + norm_squared(space, u) + norm_squared(space, v)
        w = lambda u=u, v=v, defect=defect: {"u": u.tolist(), "v": v.tolist(), "defect": defect}
        bilinear.observe(defect, witness=w, failed=defect > IDENTITY_TOL * scale)
        bounded.observe(defect, witness=w)
        halving.observe(abs(defect - 0.5 * abs(pd)) / scale, witness=w)

    if hilbert:
        for _ in range(chunk.size):
            x = _random_order_element(rng, space)
            y = _random_order_element(rng, space)
            expected = OrderElement(space, x.alpha * y.v + y.alpha * x.v, x.alpha * y.alpha + inner(space, x.v, y.v))
            d = circ(x, y).distance(expected)
            formula.observe(
                d / (1.0 + x.order_norm * y.order_norm),
                witness=lambda x=x, y=y: {"x": x.to_json(), "y": y.to_json()},
            )
    return [bilinear, bounded, halving, formula]


def bilinearity_campaign(space, samples, seed=DEFAULT_SEED, tol=ABS_TOL, workers=1, verbose=False):
    """
    The product is bilinear iff V is a Hilbert space.

    Entries: "bilinearity" (defect below IDENTITY_TOL, expected on inner-product spaces),
    "bounded-defect" (no defect above BILINEARITY_WITNESS; expected to fail off inner-product spaces),
    "parallelogram-halving" (defect equals half the parallelogram defect) and
    "spin-factor-formula" (x o y = (alpha v + beta u, alpha beta + <u, v>) on inner-product spaces).
    """
    logger.info("bilinearity campaign on %s, %d samples", space.label, samples)
    tallies = run_partitioned(partial(_bilinearity_chunk, space, tol), samples, seed, workers, verbose, desc="bilinearity")
    return CheckReport(
        campaign="bilinearity",
        space=space.to_json(),
        axioms=[t.result() for t in tallies],
        seed=seed,
        params={"samples": samples, "tol": tol, "hilbert": space.has_inner_product},
    )


def isosceles_partner(space, u, w, r=1.0, iterations=80):
    """
    Find v = r (cos t u + sin t w) with ||u + v|| = ||u - v|| by bisection on t in [0, pi].

    u and w must be linearly independent unit vectors.
    """
    def gap(t):
        v = r * (math.cos(t) * u + math.sin(t) * w)
        return norm(space, u + v) - norm(space, u - v), v

    lo, hi = 0.0, math.pi
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        g, _ = gap(mid)
        if g > 0.0:
            lo = mid
        else:
            hi = mid
    return gap(0.5 * (lo + hi))[1]


def _zero_product_chunk(space, tol, chunk):
    rng = chunk_generator(chunk.seed, chunk.index)
    consistency = AxiomTally("consistency", tol)
    dependent = AxiomTally("dependent-zero-products", tol)
    independent = AxiomTally("independent-zero-products", tol)
    scaling = AxiomTally("dependent-scaling", tol)

    def classify(x, y):
        try:
            kind = zero_product_classify(x, y, tol)
        except InconsistentWithTheorem:
            consistency.observe(1.0, witness=lambda: {"x": x.to_json(), "y": y.to_json()}, failed=True)
            return None
        consistency.observe(0.0)
        return kind

    for _ in range(chunk.size):
        classify(_random_order_element(rng, space), _random_order_element(rng, space))

        # (u, a) and (c u, -a c) with ||u|| = |a| multiply to zero
        u = random_vector(rng, space.dim)
        a = norm(space, u) * (1.0 if rng.random() < 0.5 else -1.0)
        c = random_scalar(rng)
        x = OrderElement(space, u, a)
        y = OrderElement(space, c * u, -a * c)
        kind = classify(x, y)
        if kind is not None:
            dependent.observe(
                0.0 if kind == ZERO_PRODUCT.ZERO_DEPENDENT_ORTHOGONAL else 1.0,
                witness=lambda x=x, y=y, kind=kind: {"x": x.to_json(), "y": y.to_json(), "kind": kind.name},
            )
        k, l = random_scalar(rng), random_scalar(rng)
        z = circ(k * x, l * y)
        scaling.observe(
            z.order_norm / ((1.0 + abs(k) * x.order_norm) * (1.0 + abs(l) * y.order_norm)),
            witness=lambda x=x, y=y, k=k, l=l: {"x": x.to_json(), "y": y.to_json(), "k": k, "l": l},
        )

        if space.dim >= 2:
            u = random_unit_vector(rng, space)
            w = random_unit_vector(rng, space)
            if linearly_dependent(u, w, 1e-3):
                continue
            v = isosceles_partner(space, u, w, float(rng.uniform(0.5, 2.0)))
            x = OrderElement(space, u, 0.0)
            y = OrderElement(space, v, 0.0)
            kind = classify(x, y)
            if kind is not None:
                independent.observe(
                    0.0 if kind == ZERO_PRODUCT.ZERO_INDEPENDENT else 1.0,
                    witness=lambda x=x, y=y, kind=kind: {"x": x.to_json(), "y": y.to_json(), "kind": kind.name},
                )

    return [consistency, dependent, independent, scaling]


def zero_product_campaign(space, samples, seed=DEFAULT_SEED, tol=ABS_TOL, workers=1, verbose=False):
    """
    Sweep random pairs together with constructed zero products and check every zero product
    against its side conditions.

    Entries: "consistency" (no InconsistentWithTheorem), "dependent-zero-products" and
    "independent-zero-products" (constructed pairs classified as built), "dependent-scaling"
    (k x o l y = 0 for the dependent pairs).
    """
    logger.info("zero product campaign on %s, %d samples", space.label, samples)
    tallies = run_partitioned(partial(_zero_product_chunk, space, tol), samples, seed, workers, verbose, desc="zero-product")
    return CheckReport(
        campaign="zero-product",
        space=space.to_json(),
        axioms=[t.result() for t in tallies],
        seed=seed,
        params={"samples": samples, "tol": tol},
    )


def _random_vu(rng, frame):
    a, b = rng.uniform(-2.0, 2.0, size=2)
    return VuElement(float(a), float(b), frame)


def _random_vuv(rng, frame):
    a1, a2, b = rng.uniform(-2.0, 2.0, size=3)
    return VuvElement(float(a1), float(a2), float(b), frame)


def associativity_witness(frame):
    """(u, 0) o ((v, 0) o (v, 0)) and ((u, 0) o (v, 0)) o (v, 0) in V(u, v)."""
    x = VuvElement(1.0, 0.0, 0.0, frame)
    y = VuvElement(0.0, 1.0, 0.0, frame)
    return vuv_product(x, vuv_product(y, y)), vuv_product(vuv_product(x, y), y)


def _jordan_chunk(space, tol, plane, chunk):
    rng = chunk_generator(chunk.seed, chunk.index)
    hilbert = space.has_inner_product
    vu_jordan = AxiomTally("vu-jordan-identity", IDENTITY_TOL)
    vu_assoc = AxiomTally("vu-associativity", IDENTITY_TOL)
    vu_jb = AxiomTally("vu-jb-norm", IDENTITY_TOL)
    vu_ball = AxiomTally("vu-unit-ball", tol)
    vu_root = AxiomTally("vu-sqrt", IDENTITY_TOL)
    tallies = [vu_jordan, vu_assoc, vu_jb, vu_ball, vu_root]

    if plane is not None:
        vuv_jordan = AxiomTally("vuv-jordan-identity", IDENTITY_TOL)
        vuv_power = AxiomTally("vuv-power-associativity", IDENTITY_TOL)
        vuv_jb = AxiomTally("vuv-jb-norm", IDENTITY_TOL)
        vuv_ball = AxiomTally("vuv-unit-ball", tol)
        vuv_assoc = AxiomTally("vuv-associativity", IDENTITY_TOL, expected=False)
        tallies += [vuv_jordan, vuv_power, vuv_jb, vuv_ball, vuv_assoc]
        if chunk.index == 0:
            left, right = associativity_witness(plane)
            vuv_assoc.observe(
                (left - right).order_norm,
                witness=lambda: {"left": left.to_json(), "right": right.to_json()},
            )

    raw = AxiomTally("raw-jordan-identity", IDENTITY_TOL, expected=True if hilbert else None)
    tallies.append(raw)

    for _ in range(chunk.size):
        frame = LineFrame(space, random_unit_vector(rng, space))
        x, y, z = (_random_vu(rng, frame) for _ in range(3))
        w = lambda x=x, y=y: {"x": x.to_json(), "y": y.to_json()}
        vu_jordan.observe(jordan_identity_defect(x, y, vu_product), witness=w)
        vu_assoc.observe((vu_product(x, vu_product(y, z)) - vu_product(vu_product(x, y), z)).order_norm, witness=w)
        vu_jb.observe(jb_norm_check(x, vu_product), witness=w)
        vu_ball.observe(0.0, witness=w, failed=not unit_ball_square_check(x, vu_product, tol))
        sq = vu_product(x, x)
        root = vu_sqrt(sq)
        vu_root.observe((vu_product(root, root) - sq).order_norm / (1.0 + sq.order_norm), witness=w)

        if plane is not None:
            x, y = _random_vuv(rng, plane), _random_vuv(rng, plane)
            w = lambda x=x, y=y: {"x": x.to_json(), "y": y.to_json()}
            vuv_jordan.observe(jordan_identity_defect(x, y, vuv_product), witness=w)
            x2 = vuv_product(x, x)
            vuv_power.observe((vuv_product(x2, x2) - vuv_product(x, vuv_product(x, x2))).order_norm, witness=w)
            vuv_jb.observe(jb_norm_check(x, vuv_product), witness=w)
            vuv_ball.observe(0.0, witness=w, failed=not unit_ball_square_check(x, vuv_product, tol))

        x, y = _random_order_element(rng, space), _random_order_element(rng, space)
        scale = (1.0 + x.order_norm) ** 3 * (1.0 + y.order_norm)
        raw.observe(
            jordan_identity_defect(x, y, circ) / scale,
            witness=lambda x=x, y=y: {"x": x.to_json(), "y": y.to_json()},
        )

    return tallies


def jordan_campaign(space, samples, seed=DEFAULT_SEED, tol=ABS_TOL, workers=1, verbose=False, plane=None):
    """
    Jordan structure of V(u), V(u, v) and the raw product.

    V(u) entries check the Jordan identity, associativity, the JB norm identity, the unit-ball
    criterion and square roots on random unit u. V(u, v) entries run on the given frame (or the
    default one for the space, when known) and include the expected associativity failure.
    "raw-jordan-identity" is expected to hold on inner-product spaces and informational elsewhere.
    """
    plane = plane if plane is not None else default_plane_frame(space)
    logger.info("jordan campaign on %s, %d samples, plane frame %s", space.label, samples, plane is not None)
    task = partial(_jordan_chunk, space, tol, plane)
    tallies = run_partitioned(task, samples, seed, workers, verbose, desc="jordan")
    params = {"samples": samples, "tol": tol, "plane_frame": None}
    if plane is not None:
        params["plane_frame"] = {"u": plane.u.tolist(), "v": plane.v.tolist(),
                                 "perp2_defect": plane.certificate.max_defect}
    return CheckReport(
        campaign="jordan",
        space=space.to_json(),
        axioms=[t.result() for t in tallies],
        seed=seed,
        params=params,
    )
