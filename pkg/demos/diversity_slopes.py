"""Fixed versus dynamic power split at high channel gain.

Under a fixed split the outage flattens onto a floor (zero diversity);
a gain-adaptive split keeps decaying, and the fitted tail slope matches
the predicted secrecy diversity order.
"""
import math

import numpy as np

from noma_relay_secrecy import (
    AsymptoticScaling, LinkSet, NakagamiParams, PowerPolicy, SchemeKind,
    SdoInputs, SystemParams, TrialConfig, estimate_sop, quadrature,
    scaled_params, sdo, sop_asym_total, sop_floor_total, sop_total,
)

QUAD = quadrature(300)
K, M = 3, 2


def db(x):
    return 10.0 ** (x / 10.0)


links = LinkSet(
    source_relay=NakagamiParams(M, 2.0),
    relay_user1=NakagamiParams(M, 1.5),
    relay_user2=NakagamiParams(M, 1.0),
    relay_eaves=NakagamiParams(M, db(-5.0)),
)
base = SystemParams(K=K, links=links, P_S=db(10.0), P_R=db(10.0), sigma2=1.0,
                    R1_th=0.2, R2_th=0.1, R1_s=0.1, R2_s=0.2)

fixed = PowerPolicy.fixed(0.2, alphaJ=0.5)
dynamic = PowerPolicy.dynamic(mu=5.0, varpi=0.1, alphaJ=0.5)

# the dynamic-split column is the polynomial part that sets the diversity
# order; at moderate gains the true SOP also carries a faster-decaying
# eavesdropper-ceiling term, cross-checked against simulation below
sweep = np.arange(20.0, 60.1, 5.0)
print(f"K = {K}, m = {M}   high-gain OSRS asymptote vs user-2 mean gain")
print(f"{'omega2 [dB]':>12s} {'fixed split':>14s} {'dynamic split':>14s}")
vals_dyn = []
for d in sweep:
    scaling = AsymptoticScaling(1.5, 2.0, db(d))
    fx = sop_asym_total(base, fixed, SchemeKind.OSRS, scaling, QUAD)
    dy = sop_asym_total(base, dynamic, SchemeKind.OSRS, scaling, QUAD)
    vals_dyn.append(dy)
    print(f"{d:12.0f} {fx:14.3e} {dy:14.3e}")

floor = sop_floor_total(scaled_params(base, AsymptoticScaling(1.5, 2.0, db(60.0))),
                        fixed, SchemeKind.OSRS)
print(f"\nfixed-split floor: {floor:.3e} (zero diversity)")

tail = sweep >= 50.0
x = sweep[tail] / 10.0 * math.log(10.0)
slope = np.polyfit(x, np.log(np.array(vals_dyn)[tail]), 1)[0]
for scheme in (SchemeKind.TMRC, SchemeKind.OSRS, SchemeKind.ODRS):
    order = sdo(scheme, SdoInputs(K=K, m_r=M, m_u=M, varpi=0.1))
    print(f"predicted diversity order {scheme.value}: {order:g}")
print(f"fitted OSRS tail slope: {-slope:.2f}")

# exact engine vs simulation at a gain the simulator can still resolve
scaling = AsymptoticScaling(1.5, 2.0, db(20.0))
scaled = scaled_params(base, scaling)
exact = sop_total(scaled, dynamic, SchemeKind.OSRS, QUAD).value
est = estimate_sop(scaled, dynamic, SchemeKind.OSRS, TrialConfig(trials=500_000, seed=42))
print(f"20 dB cross-check: exact {exact:.3e} vs simulated {est.p_hat:.3e} +- {est.stderr:.0e}")
