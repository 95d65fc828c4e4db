"""N users in a row, each with the same probe angle."""
import math

from qudit_tradeoff import (
    ChainConfig,
    estimation_fidelity_collective,
    estimation_fidelity_single_measure_chain,
    simulate_chain_trajectories,
    transmission_fidelity_chain,
    transmission_fidelity_closed_form,
)

theta = 0.9

# transmission fidelity drops with every extra user ...
for d in (2, 3, 4):
    row = [transmission_fidelity_closed_form(d, theta, N) for N in (1, 2, 5, 10)]
    print(f"d={d}  F_N for N=1,2,5,10:", [round(x, 6) for x in row])

# ... and for qubits/qutrits it has a simple form in sin(theta)
s2 = math.sin(theta) ** 2
print("qubit N=3:", transmission_fidelity_chain(ChainConfig.homogeneous(2, theta, 3)), (2 + s2**3) / 3)
print("qutrit N=3:", transmission_fidelity_chain(ChainConfig.homogeneous(3, theta, 3)), (1 + s2**3) / 2)

# the last user's estimate is just as good as a single user's, and pooling
# all outcomes into a frequency estimate does not help
for N in (1, 2, 3, 4):
    cfg = ChainConfig.homogeneous(3, theta, N)
    print(
        f"N={N}  G(last outcome)={estimation_fidelity_single_measure_chain(cfg):.12f}"
        f"  G(collective)={estimation_fidelity_collective(3, theta, N):.12f}"
    )

# the stochastic line agrees with the exact values
stats = simulate_chain_trajectories(ChainConfig.homogeneous(2, 0.7, 2), 20000, rng_seed=0)
print(f"simulated F={stats.F:.4f}+-{stats.stderr_F:.4f}  exact {(2 + math.sin(0.7) ** 4) / 3:.4f}")
print("outcome counts per user:\n", stats.outcome_counts)
