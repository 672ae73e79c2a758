"""Closed-form secrecy outage probability for the four relay-selection schemes.

The outage mixture runs over the size n of the decoding set (binomial with
per-relay success chi); conditioned on n, each scheme reduces to integrals
of Gamma survival series against the eavesdropper-gain density, evaluated by
the g/h kernels. Conditioned on the eavesdropper gain x, both users stay
secure iff x < a, the strong user's gain exceeds b + theta1*x, and the weak
user's gain exceeds c + alpha2/(d*(1-(e/d)*x)); the weak-user condition is
only satisfiable below the ceiling a, which is what creates the outage
floor at high SNR.
"""
from __future__ import annotations

import math

import numpy as np

from .channels import gain_survival, jammed_ratio_terms
from .params import (
    PowerPolicy,
    SchemeConstants,
    SchemeKind,
    SopResult,
    SystemParams,
    feasibility_check,
    scheme_constants,
)
from .quadrature import QuadratureSpec, g_kernel, h_kernel


def decode_prob_chi(params: SystemParams) -> float:
    """Probability chi that one relay decodes both messages: P(G_sr >= eta)."""
    return float(gain_survival(params.links.source_relay, params.eta))


def decoding_set_pmf(params: SystemParams) -> np.ndarray:
    """Binomial law of the decoding-set size; entry n is C(K,n) chi^n (1-chi)^{K-n}."""
    chi = decode_prob_chi(params)
    k = params.K
    return np.array(
        [math.comb(k, n) * chi**n * (1.0 - chi) ** (k - n) for n in range(k + 1)]
    )


def _joint_secrecy_prob(
    consts: SchemeConstants,
    tau_u: int,
    tau_e: int,
    lambda1: float,
    lambda2: float,
    lambda_e: float,
    theta1: float,
    alpha2: float,
    quad: QuadratureSpec,
) -> float:
    """P(both users secured) for one transmission with Gamma(tau_u) user links
    and a Gamma(tau_e) eavesdropper link.

    Expands the two user survival series under the eavesdropper-gain integral;
    the (k, j) term carries (lambda1*b)^k/k! * (lambda2*c)^j/j! times a g-kernel
    whose sign (-1)^j cancels the sign of c^j, so every term is nonnegative.
    """
    a, b, c, d, e = consts.a, consts.b, consts.c, consts.d, consts.e
    log_beta_e = tau_e * math.log(lambda_e) - math.lgamma(tau_e)
    log_front = log_beta_e - lambda1 * b - lambda2 * c
    q = e / d
    r = alpha2 / (d * c)
    h = lambda2 * alpha2 / d
    f = lambda1 * theta1 + lambda_e
    total = 0.0
    for k in range(tau_u):
        log_k = k * math.log(lambda1 * b) - math.lgamma(k + 1)
        for j in range(tau_u):
            log_j = j * math.log(lambda2 * abs(c)) - math.lgamma(j + 1)
            gval = g_kernel(a, tau_e, theta1 / b, r, q, f, h, k, j, quad)
            total += (-1.0) ** j * math.exp(log_front + log_k + log_j) * gval
    return total


def sop_tmrc_cond(params: SystemParams, policy: PowerPolicy, n: int, quad: QuadratureSpec) -> float:
    """Outage probability given n decoding relays under all-relay combining.

    Every decoding relay transmits at P_R/n and all receivers (eavesdropper
    included) sum the n gains, so the user and eavesdropper shapes scale to
    n*m_U and n*m_E.
    """
    if n < 1:
        raise ValueError("n must be >= 1; the empty decoding set is certain outage")
    if feasibility_check(params, policy) is not None:
        return 1.0
    alpha1, alpha2 = policy.resolve(params.links)
    rho1 = params.P_R / (n * params.sigma2)
    consts = scheme_constants(params.theta1, params.theta2, alpha1, alpha2, rho1)
    links = params.links
    p_secure = _joint_secrecy_prob(
        consts,
        tau_u=n * links.m_u,
        tau_e=n * links.relay_eaves.m,
        lambda1=links.relay_user1.rate,
        lambda2=links.relay_user2.rate,
        lambda_e=links.relay_eaves.rate,
        theta1=params.theta1,
        alpha2=alpha2,
        quad=quad,
    )
    return min(max(1.0 - p_secure, 0.0), 1.0)


def delta1(params: SystemParams, policy: PowerPolicy, quad: QuadratureSpec) -> float:
    """Per-relay probability that a single relay at full power secures both users."""
    if feasibility_check(params, policy) is not None:
        return 0.0
    alpha1, alpha2 = policy.resolve(params.links)
    consts = scheme_constants(params.theta1, params.theta2, alpha1, alpha2, params.rho2)
    links = params.links
    val = _joint_secrecy_prob(
        consts,
        tau_u=links.m_u,
        tau_e=links.relay_eaves.m,
        lambda1=links.relay_user1.rate,
        lambda2=links.relay_user2.rate,
        lambda_e=links.relay_eaves.rate,
        theta1=params.theta1,
        alpha2=alpha2,
        quad=quad,
    )
    return min(max(val, 0.0), 1.0)


def sop_osrs_cond(params: SystemParams, policy: PowerPolicy, n: int, quad: QuadratureSpec) -> float:
    """Outage given n decoding relays under best-single-relay selection.

    Outage happens iff none of the n candidates secures both users, and the
    candidates are i.i.d., so the conditional SOP is (1 - delta1)^n.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n!r}")
    if n == 0:
        return 1.0
    return (1.0 - delta1(params, policy, quad)) ** n


def delta4(params: SystemParams, policy: PowerPolicy, n: int, quad: QuadratureSpec) -> float:
    """Per-relay securing probability when a non-decoding relay jams the eavesdropper.

    Valid for n < K: the strongest of the K-n idle relays' eavesdropper links
    acts as jamming, so the effective eavesdropper gain is Y = G_E/(1+rho4*H_E)
    with the closed-form Y-density expanded term by term into h-kernels.
    """
    if n >= params.K:
        raise ValueError("n must be below K: the jamming relay comes from the idle set")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    if feasibility_check(params, policy) is not None:
        return 0.0
    alpha1, alpha2 = policy.resolve(params.links)
    rho3 = (1.0 - policy.alphaJ) * params.rho2
    rho4 = policy.alphaJ * params.rho2
    consts = scheme_constants(params.theta1, params.theta2, alpha1, alpha2, rho3)
    links = params.links
    m_u = links.m_u
    lambda1 = links.relay_user1.rate
    lambda2 = links.relay_user2.rate
    lambda_e = links.relay_eaves.rate
    p_e = links.relay_eaves
    ell, w, u, v = consts.ell, consts.w, consts.u, consts.v
    phi0 = (params.K - n) * lambda_e**p_e.m / math.factorial(p_e.m - 1)
    f = lambda1 * params.theta1 + lambda_e
    r = lambda2 * w * u
    log_front = -lambda1 * ell - lambda2 * w
    total = 0.0
    for p in range(m_u):
        log_p = p * math.log(lambda1) - math.lgamma(p + 1)
        for q in range(m_u):
            log_q = q * math.log(lambda2 * abs(w)) - math.lgamma(q + 1)
            coef = (-1.0) ** q * math.exp(log_front + log_p + log_q)
            for t in jammed_ratio_terms(p_e, params.K - n, rho4):
                hval = h_kernel(
                    1.0 / v, p, q, f, r, u, v, ell, params.theta1,
                    t.k, t.varsigma, t.C, t.D, rho4, lambda_e, quad,
                )
                total += coef * t.delta * hval
    return min(max(phi0 * total, 0.0), 1.0)


def sop_odrs_cond(params: SystemParams, policy: PowerPolicy, n: int, quad: QuadratureSpec) -> float:
    """Outage given n decoding relays under data-plus-jammer dual selection.

    For n = K no idle relay remains, so the scheme degenerates to single-relay
    selection at full power.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n!r}")
    if n == 0:
        return 1.0
    if n == params.K:
        return sop_osrs_cond(params, policy, n, quad)
    return (1.0 - delta4(params, policy, n, quad)) ** n


def sop_total(
    params: SystemParams,
    policy: PowerPolicy,
    scheme: SchemeKind,
    quad: QuadratureSpec,
) -> SopResult:
    """Total SOP: mixture of the conditional SOPs over the decoding-set law."""
    scheme = SchemeKind(scheme)
    pmf = decoding_set_pmf(params)
    total = pmf[0]  # empty decoding set: outage is certain
    for n in range(1, params.K + 1):
        if scheme is SchemeKind.TMRC:
            cond = sop_tmrc_cond(params, policy, n, quad)
        elif scheme in (SchemeKind.OSRS, SchemeKind.TSRS):
            cond = sop_osrs_cond(params, policy, n, quad)
        else:
            cond = sop_odrs_cond(params, policy, n, quad)
        total += pmf[n] * cond
    return SopResult(value=min(max(float(total), 0.0), 1.0), engine="analytic")
