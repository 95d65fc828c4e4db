"""One probe qudit, one user: how much can be learned for a given disturbance?"""
import math

import numpy as np

from qudit_tradeoff import (
    ProbeConfig,
    average_fidelity_analytic,
    bound_check,
    build_model,
    build_model_from_gate,
    gamma,
    probe_state,
)

d = 3

# the probe angle interpolates between a projective measurement (theta=0)
# and leaving the signal untouched (theta=pi/2)
for theta in (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2):
    cfg = ProbeConfig(d, theta)
    print(f"theta={theta:.3f}  gamma={gamma(cfg):.6f}  probe={np.round(probe_state(cfg).amplitudes.real, 4)}")

# Kraus operators are diagonal: L on the matching entry, J elsewhere
m = build_model(ProbeConfig(d, 0.6))
print("L, J =", m.L, m.J)
print("A_0 =\n", m.kraus[0].real)

# the same operators come out of the explicit gate circuit
g = build_model_from_gate(ProbeConfig(d, 0.6))
print("max |closed form - circuit| =", max(np.abs(a - b).max() for a, b in zip(m.kraus, g.kraus)))

# every probe angle lands exactly on the boundary of the allowed (G, F) region
for theta in np.linspace(0, math.pi / 2, 7):
    p = average_fidelity_analytic(build_model(ProbeConfig(d, theta)))
    r = bound_check(p, d)
    print(f"theta={theta:.3f}  G={p.G:.6f}  F={p.F:.6f}  slack={r.slack:+.1e}")
