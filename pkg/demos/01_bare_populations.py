# Steady-state bare populations vs cavity detuning.
#
# Sweeping the cavity across the dressed resonances redistributes population
# among the bare levels; with a large excited-state splitting the sweep
# develops strong structure at delta = +-omega_R and +-2 omega_R, including a
# window where an excited level beats the ground state.

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from vcavity import SystemParams, default_delta_grid, dressed_scalars, sweep_populations

out_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")
os.makedirs(out_dir, exist_ok=True)

fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=True)

for ax, (w21, rabi) in zip(axes, [(10.0, 100.0), (200.0, 100.0)]):
    p = SystemParams(omega21=w21, rabi=rabi)
    w_r = dressed_scalars(p).omega_R
    grid = default_delta_grid(p)
    sweep = sweep_populations(p, grid)

    ax.plot(grid / w_r, sweep.rho00, label=r"$\rho_{00}$ (ground)")
    ax.plot(grid / w_r, sweep.rho11, label=r"$\rho_{11}$")
    ax.plot(grid / w_r, sweep.rho22, label=r"$\rho_{22}$")
    for k in (-2, -1, 1, 2):
        ax.axvline(k, color="0.85", lw=0.8, zorder=0)
    ax.set_title(rf"$\omega_{{21}}={w21:g}$, $\Omega={rabi:g}$")
    ax.set_xlabel(r"cavity detuning $\delta/\omega_R$")

    # report any population inversion on this sweep
    margin = np.maximum(sweep.rho11, sweep.rho22) - sweep.rho00
    i = int(np.nanargmax(margin))
    if margin[i] > 0:
        print(f"omega21={w21:g}: inversion, margin {margin[i]:.4f} "
              f"at delta = {grid[i]:.1f} ({grid[i] / w_r:+.2f} omega_R)")
        ax.axvline(grid[i] / w_r, color="crimson", lw=0.8, ls="--")
    else:
        print(f"omega21={w21:g}: no inversion (best margin {margin[i]:.4f})")

axes[0].set_ylabel("steady-state population")
axes[0].legend(loc="upper left", fontsize=9)
fig.tight_layout()
path = os.path.join(out_dir, "bare_populations.png")
fig.savefig(path, dpi=150)
print("wrote", path)
