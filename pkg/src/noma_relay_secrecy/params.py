"""Scenario description shared by the analytic, asymptotic, and Monte Carlo engines.

Holds the relay-network parameters, the power-allocation policy (fixed split
or the gain-driven dynamic rule), the per-scheme derived constants, and the
result record every engine returns. All rates are in nats per channel use;
capacities carry the 1/2 pre-log of the two-slot protocol, so a secrecy rate
R maps to the threshold theta = exp(2R).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .channels import NakagamiParams


class SchemeKind(str, Enum):
    """Relay-selection scheme selector."""

    TMRC = "tmrc"
    OSRS = "osrs"
    TSRS = "tsrs"
    ODRS = "odrs"


@dataclass(frozen=True)
class LinkSet:
    """Fading parameters of the four link classes, one entry per class.

    source_relay: S -> R_k, relay_user1: R_k -> U1, relay_user2: R_k -> U2,
    relay_eaves: R_k -> E. Both user links share the same shape m_U.
    """

    source_relay: NakagamiParams
    relay_user1: NakagamiParams
    relay_user2: NakagamiParams
    relay_eaves: NakagamiParams

    def __post_init__(self) -> None:
        if self.relay_user1.m != self.relay_user2.m:
            raise ValueError(
                "user links must share one fading shape, got "
                f"{self.relay_user1.m} and {self.relay_user2.m}"
            )

    @property
    def m_u(self) -> int:
        return self.relay_user1.m


@dataclass(frozen=True)
class SystemParams:
    """Full scenario: relay count, link statistics, powers, rate thresholds.

    P_S, P_R, sigma2 are linear; R*_th are decoding thresholds and R*_s
    secrecy thresholds, both in nats per channel use.
    """

    K: int
    links: LinkSet
    P_S: float
    P_R: float
    sigma2: float
    R1_th: float
    R2_th: float
    R1_s: float
    R2_s: float

    def __post_init__(self) -> None:
        if int(self.K) != self.K or self.K < 1:
            raise ValueError(f"K must be a positive integer, got {self.K!r}")
        object.__setattr__(self, "K", int(self.K))
        for name in ("P_S", "P_R", "sigma2"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("R1_th", "R2_th"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        for name in ("R1_s", "R2_s"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @property
    def rho_s(self) -> float:
        """Source transmit SNR P_S/sigma2."""
        return self.P_S / self.sigma2

    @property
    def rho2(self) -> float:
        """Full relay transmit SNR P_R/sigma2 (single-relay transmission)."""
        return self.P_R / self.sigma2

    @property
    def theta1(self) -> float:
        return math.exp(2.0 * self.R1_s)

    @property
    def theta2(self) -> float:
        return math.exp(2.0 * self.R2_s)

    @property
    def eta(self) -> float:
        """Source-link gain a relay needs to decode both messages."""
        return (math.exp(2.0 * (self.R1_th + self.R2_th)) - 1.0) / self.rho_s


def dpa_coefficients(mu: float, varpi: float, lambda2: float) -> tuple[float, float]:
    """Dynamic power split driven by the weak user's channel rate lambda2.

    alpha1 = 1/(1 + mu*lambda2^-varpi), alpha2 = 1 - alpha1; the ratio
    alpha2/alpha1 = mu*lambda2^-varpi vanishes as the channel improves,
    which is what lifts the outage floor.
    """
    if not mu > 1:
        raise ValueError(f"mu must exceed 1, got {mu!r}")
    if not 0 < varpi < 1:
        raise ValueError(f"varpi must lie in (0,1), got {varpi!r}")
    if not lambda2 > 0:
        raise ValueError(f"lambda2 must be positive, got {lambda2!r}")
    ratio = mu * lambda2 ** (-varpi)
    alpha1 = 1.0 / (1.0 + ratio)
    return alpha1, 1.0 - alpha1


@dataclass(frozen=True)
class PowerPolicy:
    """Fixed power split (alpha1 given) or dynamic split (mu, varpi given).

    alphaJ is the fraction of relay power spent on jamming; it only matters
    for the dual-selection scheme and must stay below 1.
    """

    alpha1: float | None = None
    mu: float | None = None
    varpi: float | None = None
    alphaJ: float = 0.0

    def __post_init__(self) -> None:
        fixed = self.alpha1 is not None
        dynamic = self.mu is not None or self.varpi is not None
        if fixed == dynamic:
            raise ValueError("give either alpha1 (fixed) or mu+varpi (dynamic)")
        if fixed and not 0 < self.alpha1 < 1:
            raise ValueError(f"alpha1 must lie in (0,1), got {self.alpha1!r}")
        if dynamic and (self.mu is None or self.varpi is None):
            raise ValueError("dynamic policy needs both mu and varpi")
        if not 0 <= self.alphaJ < 1:
            raise ValueError(f"alphaJ must be in [0,1), got {self.alphaJ!r}")

    @classmethod
    def fixed(cls, alpha1: float, alphaJ: float = 0.0) -> "PowerPolicy":
        return cls(alpha1=alpha1, alphaJ=alphaJ)

    @classmethod
    def dynamic(cls, mu: float, varpi: float, alphaJ: float = 0.0) -> "PowerPolicy":
        return cls(mu=mu, varpi=varpi, alphaJ=alphaJ)

    @property
    def is_dynamic(self) -> bool:
        return self.alpha1 is None

    def resolve(self, links: LinkSet) -> tuple[float, float]:
        """The (alpha1, alpha2) pair in force for the given links."""
        if self.alpha1 is not None:
            return self.alpha1, 1.0 - self.alpha1
        return dpa_coefficients(self.mu, self.varpi, links.relay_user2.rate)


def feasibility_check(params: SystemParams, policy: PowerPolicy) -> str | None:
    """None when the split leaves the weak user positive secrecy headroom.

    The weak user's SINR is capped at alpha2/alpha1, so secrecy outage is
    certain once alpha1*theta2 >= 1, i.e. alpha1 >= exp(-2*R2_s). Engines
    treat that regime as SOP = 1 rather than an error.
    """
    alpha1, _ = policy.resolve(params.links)
    if alpha1 * params.theta2 >= 1.0:
        return (
            f"alpha1={alpha1:.6g} >= exp(-2*R2_s)={math.exp(-2 * params.R2_s):.6g}: "
            "weak-user secrecy outage is certain"
        )
    return None


@dataclass(frozen=True)
class SchemeConstants:
    """Per-scheme threshold constants at relay SNR rho.

    a is the eavesdropper-gain ceiling below which the weak user can be
    secured; the strong user needs gain above b + theta1*x and the weak user
    above c + alpha2/(d*(1 - (e/d)*x)) when the eavesdropper gain is x.
    ell/w/u/v are the same quantities in the parameterization used by the
    jamming-scheme integrals: ell = b, w = c, u = alpha2/(d*c), v = e/d,
    and the ceiling a equals 1/v exactly.
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    ell: float
    w: float
    u: float
    v: float


def scheme_constants(theta1: float, theta2: float, alpha1: float, alpha2: float, rho: float) -> SchemeConstants:
    """Build the threshold constants; requires a feasible split (alpha1*theta2 < 1)."""
    if alpha1 * theta2 >= 1.0:
        raise ValueError("infeasible split: alpha1*theta2 >= 1 (callers must check first)")
    margin = 1.0 - alpha1 * theta2
    a = margin / (rho * alpha1 * alpha2 * theta2)
    b = (theta1 - 1.0) / (alpha1 * rho)
    c = -1.0 / (alpha1 * rho)
    d = alpha1 * rho * margin
    e = rho**2 * alpha1**2 * alpha2 * theta2
    return SchemeConstants(a=a, b=b, c=c, d=d, e=e, ell=b, w=c, u=alpha2 / (d * c), v=e / d)


@dataclass(frozen=True)
class SopResult:
    """A secrecy outage probability with its provenance."""

    value: float
    engine: str  # "analytic" | "asymptotic" | "monte-carlo"
    stderr: float | None = None
    trials: int | None = None
