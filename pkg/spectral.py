import logging
import math
from dataclasses import dataclass

import numpy as np

from constants import ABS_TOL, IDENTITY_TOL
from exceptions import NotPositive
from order_unit import CONE, OrderElement, cone_classify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralData:
    """
    Two-point spectral decomposition x = lambda_minus (e - p) + lambda_plus p.

    Attributes:
    - lambda_minus (float): alpha - ||v||.
    - lambda_plus (float): alpha + ||v||.
    - p (OrderElement): (v / 2||v||, 1/2), or e when v = 0.
    - p_complement (OrderElement): e - p.
    """
    lambda_minus: float
    lambda_plus: float
    p: OrderElement
    p_complement: OrderElement

    def reconstruct(self):
        return self.lambda_minus * self.p_complement + self.lambda_plus * self.p

    def to_json(self):
        return {"lambda_minus": self.lambda_minus, "lambda_plus": self.lambda_plus, "p": self.p.to_json()}


def decompose(x):
    """
    Spectral decomposition of an element.

    Parameters:
    - x (OrderElement): Any element.

    Returns:
    - SpectralData: Eigenvalues alpha -+ ||v|| with their order projections. For v = 0 both
      eigenvalues equal alpha and p = e.
    """
    space = x.space
    e = OrderElement.unit(space)
    nv = x.vnorm
    if nv == 0.0:
        return SpectralData(x.alpha, x.alpha, e, OrderElement.zero(space))
    p = OrderElement(space, x.v / (2.0 * nv), 0.5)
    return SpectralData(x.alpha - nv, x.alpha + nv, p, e - p)


class SpectralFamily:
    """
    Right-continuous increasing family of order projections lam -> e_lam of an element:
    0 below alpha - ||v||, (-v / 2||v||, 1/2) up to alpha + ||v||, e from there on.
    """
    def __init__(self, x):
        self.data = decompose(x)
        self.space = x.space

    @property
    def jumps(self):
        if self.data.lambda_minus == self.data.lambda_plus:
            return (self.data.lambda_plus,)
        return (self.data.lambda_minus, self.data.lambda_plus)

    @property
    def middle(self):
        return self.data.p_complement

    def __call__(self, lam):
        if lam < self.data.lambda_minus:
            return OrderElement.zero(self.space)
        if lam < self.data.lambda_plus:
            return self.data.p_complement
        return OrderElement.unit(self.space)

    def to_json(self):
        return {"jumps": list(self.jumps), "middle": self.middle.to_json()}


def spectral_family(x):
    return SpectralFamily(x)


def apply_scalar_function(x, f):
    """
    Functional calculus f(x) = f(lambda_minus) (e - p) + f(lambda_plus) p.

    Parameters:
    - x (OrderElement): Any element.
    - f (callable): Real function defined on both eigenvalues.

    Returns:
    - OrderElement: f(x).
    """
    data = decompose(x)
    return float(f(data.lambda_minus)) * data.p_complement + float(f(data.lambda_plus)) * data.p


def binomial_power(x, n):
    """
    x^n from the binomial expansion: vector part sum over odd k of C(n, k) alpha^(n-k) ||v||^(k-1) v,
    scalar part sum over even k of C(n, k) alpha^(n-k) ||v||^k.
    """
    if n < 1:
        raise ValueError(f"Powers need n >= 1, got {n}.")
    a = x.alpha
    nv = x.vnorm
    vec = sum(math.comb(n, k) * a ** (n - k) * nv ** (k - 1) for k in range(1, n + 1, 2))
    scalar = sum(math.comb(n, k) * a ** (n - k) * nv ** k for k in range(0, n + 1, 2))
    return OrderElement(x.space, vec * x.v, scalar)


def power(x, n):
    """
    Integer power through the spectral form (lambda_minus^n (e - p) + lambda_plus^n p).

    The result is cross-checked against binomial_power; a disagreement beyond IDENTITY_TOL
    is logged, not raised.

    Parameters:
    - x (OrderElement): Any element.
    - n (int): Exponent, n >= 1.

    Returns:
    - OrderElement: x^n.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"Powers need an integer n >= 1, got {n!r}.")
    n = int(n)
    if n == 1:
        return x

    result = apply_scalar_function(x, lambda t: t ** n)
    check = binomial_power(x, n)
    if result.distance(check) > IDENTITY_TOL * (1.0 + result.order_norm):
        logger.warning("spectral and binomial powers disagree for n = %d: %r vs %r", n, result, check)
    return result


def square(x):
    """x^2 = (2 alpha v, alpha^2 + ||v||^2), always in the cone."""
    return OrderElement(x.space, 2.0 * x.alpha * x.v, x.alpha * x.alpha + x.vnorm * x.vnorm)


def sqrt_positive(x, tol=ABS_TOL):
    """
    Unique positive square root of a cone element.

    It is (lam v, mu) with mu = sqrt((alpha + s) / 2) and lam = 1 / sqrt(2 (alpha + s)) for
    s = sqrt(alpha^2 - ||v||^2), equivalent to lam = sqrt(d) / (||v|| sqrt 2),
    mu = ||v|| / sqrt(2 d) with d = alpha - s, rewritten so that nothing divides by ||v||.

    Raises:
    - NotPositive: If x is not in the cone.
    """
    cls = cone_classify(x, tol)
    if cls not in (CONE.POSITIVE, CONE.ZERO):
        raise NotPositive(f"{x!r} is not in the cone.")

    nv = x.vnorm
    if cls == CONE.ZERO or nv == 0.0:
        return OrderElement(x.space, np.zeros(x.space.dim), math.sqrt(max(x.alpha, 0.0)))

    a = max(x.alpha, nv)
    s = math.sqrt(max((a - nv) * (a + nv), 0.0))
    lam = 1.0 / math.sqrt(2.0 * (a + s))
    mu = math.sqrt(0.5 * (a + s))
    root = OrderElement(x.space, lam * x.v, mu)

    if square(root).distance(x) > IDENTITY_TOL * (1.0 + x.order_norm):
        logger.warning("square root of %r squares back poorly", x)
    return root


def abs_via_spectrum(x):
    """|x| as |lambda_plus| p + |lambda_minus| (e - p)."""
    return apply_scalar_function(x, abs)
