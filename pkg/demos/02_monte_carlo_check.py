"""Average fidelities three ways: closed form, general Kraus formula, random signals."""
from qudit_tradeoff import (
    PureState,
    ProbeConfig,
    average_fidelity_analytic,
    average_fidelity_banaszek,
    average_fidelity_monte_carlo,
    build_model,
)

for d in (2, 3):
    for theta in (0.2, 0.7, 1.2):
        m = build_model(ProbeConfig(d, theta))
        exact = average_fidelity_analytic(m)
        kraus = average_fidelity_banaszek(m.kraus, [PureState.basis(d, k) for k in range(d)])
        mc = average_fidelity_monte_carlo(m, 200000, rng_seed=1)
        print(
            f"d={d} theta={theta}: F {exact.F:.5f} | {kraus.F:.5f} | {mc.F:.5f} +- {mc.stderr_F:.5f}   "
            f"G {exact.G:.5f} | {kraus.G:.5f} | {mc.G:.5f} +- {mc.stderr_G:.5f}"
        )
