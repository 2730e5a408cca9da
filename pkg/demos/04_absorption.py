# Weak-probe absorption across the dressed resonances.
#
# The probe response is the odd part of the emission spectrum.  With the
# cavity on resonance it cancels identically; detuned to a sideband it shows
# net absorption at one outer line and matching gain at the other, with the
# inner lines suppressed by the dressing-angle scale (omega21/2omega_R)^2.

import os
import warnings

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from vcavity import (
    SystemParams,
    absorption_spectrum,
    dressed_scalars,
    inner_line_suppression,
    line_weights,
)
from vcavity.errors import SecularValidityWarning

out_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "output")
os.makedirs(out_dir, exist_ok=True)

p0 = SystemParams(omega21=10.0, rabi=100.0)
w_r = dressed_scalars(p0).omega_R
freqs = np.linspace(-3.0 * w_r, 3.0 * w_r, 1601)

fig, axes = plt.subplots(3, 1, figsize=(7, 8), sharex=True)
for ax, factor in zip(axes, (0.0, 1.0, 2.0)):
    p = p0.with_delta(factor * w_r)
    spec = absorption_spectrum(p, freqs)
    ax.plot(freqs / w_r, spec.values)
    ax.axhline(0.0, color="0.8", lw=0.8)
    ax.set_ylabel(rf"$A(\nu)$, $\delta={factor:g}\omega_R$")
    print(f"delta = {factor:g} omega_R: max|A| = {np.max(np.abs(spec.values)):.3e}")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SecularValidityWarning)
        lw = line_weights(p)
    print(f"   line weights: w(-2)={lw.w_minus2:+.3e}  w(-1)={lw.w_minus1:+.3e}"
          f"  w(+1)={lw.w_plus1:+.3e}  w(+2)={lw.w_plus2:+.3e}")

axes[-1].set_xlabel(r"probe detuning $\nu/\omega_R$")
axes[0].set_title(r"$\omega_{21}=10$, $\Omega=100$: cancellation, then sideband gain")
fig.tight_layout()
path = os.path.join(out_dir, "absorption_vs_cavity_detuning.png")
fig.savefig(path, dpi=150)
print("wrote", path)

print(f"inner-line suppression scale (omega21/2omega_R)^2 = "
      f"{inner_line_suppression(p0):.3e}")
