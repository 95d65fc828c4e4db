"""Two users with different probes: the second one can trade F against G."""
import math

import numpy as np

from qudit_tradeoff import bound_check, two_user_closed_form, two_user_fidelities

# if the first user is a blind repeater the pair is optimal again
for tb in np.linspace(0, math.pi / 2, 5):
    p = two_user_fidelities(2, math.pi / 2, tb)
    print(f"theta_B={tb:.3f}  G={p.G:.5f}  F={p.F:.5f}  slack={bound_check(p, 2).slack:+.1e}")

# for qubits the transmission fidelity is (2 + sin^2 a sin^2 b)/3
for ta in (math.pi / 9, 2 * math.pi / 9, math.pi / 3, 4 * math.pi / 9):
    enum = two_user_fidelities(2, ta, 0.8).F
    print(f"theta_A={ta:.3f}: enumeration {enum:.12f}  closed form {two_user_closed_form(ta, 0.8):.12f}")
    print(f"   F range over theta_B: {2 / 3:.4f} .. {(5 - math.cos(2 * ta)) / 6:.4f}")
