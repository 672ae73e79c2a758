"""Where does spending relay power on jamming actually help?

Sweeps the jamming power fraction for the dual-selection scheme and prints
the single-selection value as the zero-jamming baseline. With a weak
eavesdropper the optimum sits near zero; push the eavesdropper gain up and
an interior optimum appears.
"""
import numpy as np

from noma_relay_secrecy import (
    LinkSet, NakagamiParams, PowerPolicy, SchemeKind, SystemParams,
    quadrature, sop_total,
)

QUAD = quadrature(300)


def db(x):
    return 10.0 ** (x / 10.0)


def scenario(omegaE_dB):
    links = LinkSet(
        source_relay=NakagamiParams(2, db(0.0)),
        relay_user1=NakagamiParams(2, db(12.0)),
        relay_user2=NakagamiParams(2, db(10.0)),
        relay_eaves=NakagamiParams(2, db(omegaE_dB)),
    )
    return SystemParams(K=3, links=links, P_S=db(10.0), P_R=db(10.0), sigma2=1.0,
                        R1_th=0.2, R2_th=0.1, R1_s=0.1, R2_s=0.2)


# a modest source-relay gain keeps partial decoding sets in play, so the
# jammer actually has idle relays to draw from
for omegaE_dB in (-5.0, 0.0, 5.0):
    params = scenario(omegaE_dB)
    osrs = sop_total(params, PowerPolicy.fixed(0.2), SchemeKind.OSRS, QUAD).value
    print(f"\nomega_E = {omegaE_dB:+.0f} dB    OSRS baseline = {osrs:.4e}")
    best = (None, np.inf)
    for alpha_j in np.arange(0.0, 0.65, 0.05):
        policy = PowerPolicy.fixed(0.2, alphaJ=float(alpha_j))
        odrs = sop_total(params, policy, SchemeKind.ODRS, QUAD).value
        if odrs < best[1]:
            best = (float(alpha_j), odrs)
        bar = "#" * int(60 * odrs / osrs) if osrs > 0 else ""
        print(f"  alphaJ = {alpha_j:4.2f}   ODRS = {odrs:.4e}  {bar}")
    print(f"  best split alphaJ = {best[0]:.2f} -> {best[1]:.4e}")
