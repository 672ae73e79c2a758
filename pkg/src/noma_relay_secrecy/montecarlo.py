"""Trial-level simulator of the two-hop secrecy protocol.

Each trial draws every channel gain, forms the decoding set, runs the chosen
relay-selection rule, and checks both users' secrecy-rate targets against the
worst-case eavesdropper. Estimates aggregate per-chunk outcome counts, with
one independent substream per chunk so the result is reproducible no matter
how chunks are scheduled.

All threshold checks are done in cross-multiplied form, 1 + leg SNR against
theta * (1 + tap SNR), e.g. the user-2 check reads
(1 + rho*g2) >= theta2 * (1 + alpha2*rho*gE) * (1 + alpha1*rho*g2)
after clearing the SINR denominator. The float ratios of the same quantities
only rank relays inside argmax selections and attribute outages to a user;
they never decide a verdict that the boolean checks did not.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import sample_gain
from .params import PowerPolicy, SchemeKind, SystemParams

OUTCOME_LABELS = ("secure", "u1", "u2", "both", "no_relay")
_SECURE, _U1, _U2, _BOTH, _NO_RELAY = range(5)
_BREAKDOWN_KEYS = ("outage_u1_only", "outage_u2_only", "outage_both", "no_relay")


@dataclass(frozen=True)
class TrialConfig:
    """Estimation budget and reproducibility knobs."""

    trials: int = 1_000_000
    seed: int = 42
    chunk: int = 250_000

    def __post_init__(self) -> None:
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if int(self.chunk) != self.chunk or self.chunk < 1:
            raise ValueError(f"chunk must be a positive integer, got {self.chunk!r}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")


@dataclass(frozen=True)
class SopEstimate:
    """Frequency estimate of the SOP with its binomial standard error."""

    p_hat: float
    stderr: float
    trials: int
    breakdown: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class TrialDraw:
    """One realization of every link gain: source->relay and relay->{U1,U2,E}."""

    g_sr: np.ndarray
    g_1: np.ndarray
    g_2: np.ndarray
    g_e: np.ndarray


def draw_trial(params: SystemParams, stream: np.random.Generator) -> TrialDraw:
    """Sample all 4K link gains of a single trial, in a fixed link order."""
    k = params.K
    return TrialDraw(
        g_sr=np.asarray(sample_gain(params.links.source_relay, stream, k)),
        g_1=np.asarray(sample_gain(params.links.relay_user1, stream, k)),
        g_2=np.asarray(sample_gain(params.links.relay_user2, stream, k)),
        g_e=np.asarray(sample_gain(params.links.relay_eaves, stream, k)),
    )


def decoding_set(params: SystemParams, draw: TrialDraw) -> np.ndarray:
    """Indices of relays whose source hop sustains both message rates."""
    return np.flatnonzero(np.asarray(draw.g_sr) >= params.eta)


def secrecy_capacities(alpha1: float, rho_signal, g1, g2, gE_eff):
    """Per-user secrecy capacities (nats) against the worst-case eavesdropper.

    gE_eff is the eavesdropper's effective gain: the plain relay->E gain, or
    gain/(1 + rho4*H_E) when a jamming relay is active. Negative values mean
    the tap is better than the legitimate link; callers compare to the rate
    targets without flooring.
    """
    alpha2 = 1.0 - alpha1
    gamma1 = alpha1 * rho_signal * np.asarray(g1)
    gamma2n = alpha2 * rho_signal * np.asarray(g2)
    gamma2 = gamma2n / (alpha1 * rho_signal * np.asarray(g2) + 1.0)
    ge1 = alpha1 * rho_signal * np.asarray(gE_eff)
    ge2 = alpha2 * rho_signal * np.asarray(gE_eff)
    cs1 = 0.5 * (np.log1p(gamma1) - np.log1p(ge1))
    cs2 = 0.5 * (np.log1p(gamma2) - np.log1p(ge2))
    return cs1, cs2


def _pair_checks(alpha1, alpha2, theta1, theta2, rho, g1, g2, ge):
    """Threshold booleans and margin ratios for one transmission.

    ok1/ok2 are the secrecy checks in cross-multiplied form. r1/r2 are the
    matching margins (>= 1 iff the check passes), monotone in each user's
    secrecy capacity, used only for ranking.
    """
    lhs1 = 1.0 + alpha1 * rho * g1
    rhs1 = theta1 * (1.0 + alpha1 * rho * ge)
    lhs2 = 1.0 + rho * g2
    rhs2 = theta2 * (1.0 + alpha2 * rho * ge) * (1.0 + alpha1 * rho * g2)
    return lhs1 >= rhs1, lhs2 >= rhs2, lhs1 / rhs1, lhs2 / rhs2


def _pick_one_codes(codes, live, dec, ok1, ok2, r1, r2):
    """Fill outcome codes for schemes that succeed iff any decoding relay secures.

    Outage rows are attributed to the users failed by the best-margin relay.
    """
    ok = dec & ok1 & ok2
    secure = live & ok.any(axis=1)
    codes[secure] = _SECURE
    out = live & ~secure
    if out.any():
        key = np.where(dec, np.minimum(r1, r2), -np.inf)
        m = np.argmax(key, axis=1)
        rows = np.flatnonzero(out)
        sel = m[rows]
        codes[rows] = (~ok1[rows, sel]) + 2 * (~ok2[rows, sel])


def _scheme_codes(
    params: SystemParams,
    policy: PowerPolicy,
    scheme: SchemeKind,
    g_sr: np.ndarray,
    g_1: np.ndarray,
    g_2: np.ndarray,
    g_e: np.ndarray,
) -> np.ndarray:
    """Outcome code per trial row for a batch of draws (trials x K arrays)."""
    scheme = SchemeKind(scheme)
    alpha1, alpha2 = policy.resolve(params.links)
    theta1, theta2 = params.theta1, params.theta2
    dec = g_sr >= params.eta
    n = dec.sum(axis=1)
    codes = np.full(n.shape, _NO_RELAY, dtype=np.int8)
    live = n > 0
    if not live.any():
        return codes

    if scheme is SchemeKind.TMRC:
        rho1 = params.rho2 / np.maximum(n, 1)
        s1 = np.where(dec, g_1, 0.0).sum(axis=1)
        s2 = np.where(dec, g_2, 0.0).sum(axis=1)
        se = np.where(dec, g_e, 0.0).sum(axis=1)
        ok1, ok2, _, _ = _pair_checks(alpha1, alpha2, theta1, theta2, rho1, s1, s2, se)
        codes[live] = ((~ok1) + 2 * (~ok2))[live].astype(np.int8)
        return codes

    if scheme is SchemeKind.ODRS:
        rho3 = (1.0 - policy.alphaJ) * params.rho2
        rho4 = policy.alphaJ * params.rho2
        idle_best = np.where(~dec, g_e, -np.inf).max(axis=1)
        h_e = np.where(n < params.K, idle_best, 0.0)
        rho = np.where(n == params.K, params.rho2, rho3)[:, None]
        ge_eff = g_e / (1.0 + rho4 * h_e)[:, None]
    else:
        rho = params.rho2
        ge_eff = g_e

    ok1, ok2, r1, r2 = _pair_checks(alpha1, alpha2, theta1, theta2, rho, g_1, g_2, ge_eff)

    if scheme is SchemeKind.TSRS:
        psi = dec & ok1
        has = psi.any(axis=1)
        j = np.argmax(np.where(psi, r2, -np.inf), axis=1)
        rows = np.arange(codes.size)
        secure = live & has & ok2[rows, j]
        codes[secure] = _SECURE
        miss2 = live & has & ~ok2[rows, j]
        codes[miss2] = _U2
        nopsi = live & ~has
        if nopsi.any():
            i = np.argmax(np.where(dec, r1, -np.inf), axis=1)
            idx = np.flatnonzero(nopsi)
            codes[idx] = _U1 + 2 * (~ok2[idx, i[idx]])
        return codes

    _pick_one_codes(codes, live, dec, ok1, ok2, r1, r2)
    return codes


def run_trial(params: SystemParams, policy: PowerPolicy, scheme: SchemeKind, draw: TrialDraw) -> str:
    """Outcome of a single trial: 'secure', 'u1', 'u2', 'both', or 'no_relay'."""
    code = _scheme_codes(
        params,
        policy,
        scheme,
        np.asarray(draw.g_sr)[None, :],
        np.asarray(draw.g_1)[None, :],
        np.asarray(draw.g_2)[None, :],
        np.asarray(draw.g_e)[None, :],
    )[0]
    return OUTCOME_LABELS[code]


def _chunk_sizes(config: TrialConfig):
    remaining = config.trials
    index = 0
    while remaining > 0:
        size = min(config.chunk, remaining)
        yield index, size
        remaining -= size
        index += 1


def _chunk_stream(config: TrialConfig, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=config.seed, spawn_key=(index,)))


def _draw_chunk(params: SystemParams, stream: np.random.Generator, size: int):
    shape = (size, params.K)
    g_sr = sample_gain(params.links.source_relay, stream, shape)
    g_1 = sample_gain(params.links.relay_user1, stream, shape)
    g_2 = sample_gain(params.links.relay_user2, stream, shape)
    g_e = sample_gain(params.links.relay_eaves, stream, shape)
    return g_sr, g_1, g_2, g_e


def _estimate_from_counts(counts: np.ndarray, trials: int) -> SopEstimate:
    outages = int(counts[1:].sum())
    p_hat = outages / trials
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    breakdown = {key: int(counts[i + 1]) for i, key in enumerate(_BREAKDOWN_KEYS)}
    return SopEstimate(p_hat=p_hat, stderr=stderr, trials=trials, breakdown=breakdown)


def estimate_many(
    params: SystemParams,
    policy: PowerPolicy,
    schemes,
    config: TrialConfig,
) -> dict[SchemeKind, SopEstimate]:
    """Estimate the SOP of several schemes on one shared stream of draws.

    Sharing draws makes cross-scheme comparisons paired: scheme differences
    are not blurred by independent sampling noise.
    """
    kinds = [SchemeKind(s) for s in schemes]
    counts = {s: np.zeros(5, dtype=np.int64) for s in kinds}
    for index, size in _chunk_sizes(config):
        stream = _chunk_stream(config, index)
        g_sr, g_1, g_2, g_e = _draw_chunk(params, stream, size)
        for s in kinds:
            codes = _scheme_codes(params, policy, s, g_sr, g_1, g_2, g_e)
            counts[s] += np.bincount(codes, minlength=5)
    return {s: _estimate_from_counts(c, config.trials) for s, c in counts.items()}


def estimate_sop(
    params: SystemParams,
    policy: PowerPolicy,
    scheme: SchemeKind,
    config: TrialConfig,
) -> SopEstimate:
    """Monte Carlo SOP estimate for one scheme."""
    return estimate_many(params, policy, [scheme], config)[SchemeKind(scheme)]


def paired_verdicts(
    params: SystemParams,
    policy: PowerPolicy,
    scheme_a: SchemeKind,
    scheme_b: SchemeKind,
    config: TrialConfig,
) -> tuple[int, int]:
    """Count draws where two schemes reach the same secure/outage verdict.

    Returns (matches, trials). Outage attribution may differ between schemes;
    only the binary verdict is compared.
    """
    matches = 0
    for index, size in _chunk_sizes(config):
        stream = _chunk_stream(config, index)
        g_sr, g_1, g_2, g_e = _draw_chunk(params, stream, size)
        code_a = _scheme_codes(params, policy, scheme_a, g_sr, g_1, g_2, g_e)
        code_b = _scheme_codes(params, policy, scheme_b, g_sr, g_1, g_2, g_e)
        matches += int(((code_a == _SECURE) == (code_b == _SECURE)).sum())
    return matches, config.trials
