"""Regenerate the data behind the N-user and two-user trade-off plots.

Writes one CSV per (d, N) curve and one CSV with the fixed-theta_A slices,
then plots them if matplotlib is available.

    python demos/figure_data.py [outdir]
"""
import sys
from pathlib import Path

import numpy as np

from qudit_tradeoff.cli import main
from qudit_tradeoff.sweeps import figure_commands

outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "figure_data")
outdir.mkdir(parents=True, exist_ok=True)

for name, argv in figure_commands():
    main(argv + ["--out", str(outdir / name)])
    print("wrote", outdir / name)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit(0)

# N-user curves: F_N against G, one panel per dimension
fig, axes = plt.subplots(1, 3, figsize=(12, 4))
for ax, d in zip(axes, (2, 3, 4)):
    for n, color in zip((1, 2, 5, 10), ("black", "red", "green", "blue")):
        data = np.genfromtxt(outdir / f"fig3_d{d}_N{n}.csv", delimiter=",", names=True)
        ax.plot(data["G"], data["F_N"], color=color, label=f"N={n}")
    ax.set_xlabel("G")
    ax.set_title(f"d={d}")
axes[0].set_ylabel("F")
axes[0].legend()
fig.savefig(outdir / "fig3.png", dpi=120)

# two users: dashed curves at fixed theta_A
data = np.genfromtxt(outdir / "fig4_two_user.csv", delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(5, 4))
for ta in np.unique(data["theta_a"])[::-1]:
    sel = data["theta_a"] == ta
    ax.plot(data["G"][sel], data["F"][sel], "k--", lw=1)
optimal = np.genfromtxt(outdir / "fig3_d2_N1.csv", delimiter=",", names=True)
same = np.genfromtxt(outdir / "fig3_d2_N2.csv", delimiter=",", names=True)
ax.plot(optimal["G"], optimal["F_N"], "k-", label="theta_A = pi/2")
ax.plot(same["G"], same["F_N"], "r-", label="theta_A = theta_B")
ax.set_xlabel("G")
ax.set_ylabel("F")
ax.legend()
fig.savefig(outdir / "fig4.png", dpi=120)
print("plots in", outdir)
