"""
Elliptic Integral Module - K, K', g(lambda) and lambda_0
Complete elliptic integrals of the first kind via the arithmetic-geometric
mean, the modulus function g(lambda) = lambda K'(lambda) / K(lambda), its
maximiser lambda_0 and the angle factor C(alpha)
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from scipy.optimize import brentq

from ..geometry.shapes import require_finite
from ..utils.config import DEFAULT_ELLIPTIC_CONFIG, EllipticConfig
from ..utils.exceptions import ConvergenceError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EllipticValue:
    """K, K' and g evaluated at one modulus."""
    lambda_: float
    K: float
    Kprime: float
    g: float


def complementary_modulus(lam: float) -> float:
    """lambda' = sqrt(1 - lambda^2), written as sqrt((1 - lambda)(1 + lambda)) to keep accuracy near 1."""
    return math.sqrt((1.0 - lam) * (1.0 + lam))


def agm(a: float, b: float, config: Optional[EllipticConfig] = None) -> float:
    """
    Arithmetic-geometric mean of two non-negative numbers.

    Stops once successive arithmetic means agree to AGM_RTOL relative, or
    after AGM_MAX_ITER iterations.
    """
    config = config or DEFAULT_ELLIPTIC_CONFIG
    for _ in range(config.AGM_MAX_ITER):
        a_next = 0.5 * (a + b)
        b = math.sqrt(a * b)
        converged = abs(a_next - a) <= config.AGM_RTOL * a_next
        a = a_next
        if converged:
            break
    return a


def ellip_K(lam: float, config: Optional[EllipticConfig] = None) -> float:
    """
    Complete elliptic integral of the first kind, K(lambda) = pi / (2 AGM(1, lambda')).

    Args:
        lam: Modulus in [0, 1)
        config: EllipticConfig

    Returns:
        K(lambda). Moduli within rounding of 1 (e.g. 1 - 1e-16, which is the
        double just below 1) return the large finite value ~ log(4/lambda').

    Raises:
        DomainError: If lambda < 0 or lambda >= 1
    """
    require_finite(lam=lam)
    if not 0.0 <= lam < 1.0:
        raise DomainError(f"K(lambda) needs lambda in [0, 1), got {lam}")
    return math.pi / (2.0 * agm(1.0, complementary_modulus(lam), config))


def ellip_K_prime(lam: float, config: Optional[EllipticConfig] = None) -> float:
    """
    Complementary integral K'(lambda) = K(lambda') = pi / (2 AGM(1, lambda)).

    Evaluated through AGM(1, lambda) directly; lambda' rounds to 1 for lambda
    below about 1.5e-8.

    Raises:
        DomainError: If lambda is outside (0, 1]
    """
    require_finite(lam=lam)
    if not 0.0 < lam <= 1.0:
        raise DomainError(f"K'(lambda) needs lambda in (0, 1], got {lam}")
    return math.pi / (2.0 * agm(1.0, lam, config))


def g_of(lam: float) -> float:
    """
    g(lambda) = lambda K'(lambda) / K(lambda).

    Raises:
        DomainError: If lambda is outside (0, 1)
    """
    require_finite(lam=lam)
    if not 0.0 < lam < 1.0:
        raise DomainError(f"g(lambda) needs lambda in (0, 1), got {lam}")
    return lam * ellip_K_prime(lam) / ellip_K(lam)


def evaluate(lam: float) -> EllipticValue:
    """Bundle K, K' and g at one modulus."""
    return EllipticValue(lambda_=lam, K=ellip_K(lam), Kprime=ellip_K_prime(lam), g=g_of(lam))


def lambda0_residual(lam: float) -> float:
    """(1 - lambda^2) K(lambda) K'(lambda) - pi/2; vanishes exactly at lambda_0."""
    return (1.0 - lam) * (1.0 + lam) * ellip_K(lam) * ellip_K_prime(lam) - math.pi / 2.0


def solve_lambda0(config: Optional[EllipticConfig] = None) -> float:
    """
    Root of lambda0_residual on the configured bracket.

    Raises:
        ConvergenceError: If the bracket shows no sign change
    """
    config = config or DEFAULT_ELLIPTIC_CONFIG
    lo, hi = config.LAMBDA0_BRACKET
    f_lo, f_hi = lambda0_residual(lo), lambda0_residual(hi)
    if f_lo * f_hi > 0:
        raise ConvergenceError(
            f"no sign change on [{lo}, {hi}]: residuals {f_lo:.3g}, {f_hi:.3g}"
        )
    root = brentq(lambda0_residual, lo, hi, xtol=config.LAMBDA0_XTOL, rtol=4 * 2.0 ** -52)
    logger.info(f"lambda_0 = {root:.12f} (residual {lambda0_residual(root):.2e})")
    return root


@lru_cache(maxsize=1)
def find_lambda0() -> float:
    """The unique maximiser lambda_0 of g on (0, 1), computed once per process."""
    return solve_lambda0()


def C_of_alpha(alpha: float) -> float:
    """
    C(alpha) = (sqrt(1 + tan^2(pi alpha)/4) - tan(pi alpha)/2)^2.

    Evaluated as 1 / (sqrt(1 + tan^2/4) + tan/2)^2, which has no cancellation;
    C(1/2) = 0 by the limit tan -> infinity.

    Raises:
        DomainError: If alpha is outside (0, 1/2]
    """
    require_finite(alpha=alpha)
    if not 0.0 < alpha <= 0.5:
        raise DomainError(f"C(alpha) needs alpha in (0, 1/2], got {alpha}")
    if alpha == 0.5:
        return 0.0
    half_tan = math.tan(math.pi * alpha) / 2.0
    return 1.0 / (math.sqrt(1.0 + half_tan ** 2) + half_tan) ** 2
