"""Reading the generalizer mean off the power spectrum, and aliasing.

If the pmf ripples with period E[B], its discrete Fourier transform has
a peak near frequency nu = 1/E[B].  The spectrum here is the squared
magnitude of the DFT of the pmf, normalized so psi(0) = 1; because the
pmf lives on the integers it is 1-periodic and symmetric about nu = 1/2,
so every peak appears twice (nu and 1 - nu) and a peak at nu really
pins down E[B] only up to aliases 1/(nu + m).

Panel 1: three distributions with E[B] = 10 all peak near nu = 0.1.
Panel 2: data simulated from a model with E[B] = 1/1.26 < 1.  Now the
ripple frequency 1/E[B] = 1.26 lies outside the principal window, the
smooth model spectrum shows no interior peak at all, and the empirical
spectrum shows only small sampling bumps.  The fitting scan still works:
it reads each bump through every alias branch 1/(nu + m) and keeps the
branch whose fit is best - here a bump near nu = 0.18 interpreted as
nu + 1.

Run:  python demos/02_power_spectrum_aliasing.py
Writes demos/output/power_spectra.png
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from cpfit import (
    NeymanTypeA,
    PoissonBinomial,
    PoissonPascal,
    family_pmf,
    find_peaks,
    power_spectrum,
    ps_estimate,
    simulate,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

fig, (top, bottom) = plt.subplots(2, 1, figsize=(9, 7))

for spec, label in [
    (NeymanTypeA(0.4, 10.0), "Neyman Type A (0.4, 10)"),
    (PoissonBinomial(0.3, 20, 0.5), "Poisson-binomial (0.3, 20, 0.5)"),
    (PoissonPascal(0.5, 100, 0.1), "Poisson-Pascal (0.5, 100, 0.1)"),
]:
    ps = power_spectrum(family_pmf(spec).masses, 1024)
    top.plot(ps.nu, ps.psi, label=label, lw=1.0)
    interior = [c for c in find_peaks(ps) if c.source == "local-max"]
    tallest = max(interior, key=lambda c: ps.psi[round(c.nu_grid * 1024)])
    print(f"{label:34s} tallest interior peak at nu = {tallest.nu_grid:.4f}"
          f"  -> E[B] estimate {tallest.e_b:.2f}")

top.axvline(0.1, color="0.8", lw=0.8, zorder=0)
top.set_title("E[B] = 10 for all three: spectra peak at nu = 1/10")
top.set_xlabel("nu")
top.set_ylabel("psi")
top.legend(fontsize=8)

true = NeymanTypeA(6.5917, 1.0 / 1.26)  # E[B] < 1: sub-unit cluster mean
hist = simulate(true, 324, seed=5)
weights = hist.counts / hist.n_c
ps = power_spectrum(weights, 1024)
bottom.plot(ps.nu, ps.psi, color="#c4442a", lw=1.0,
            label="empirical spectrum (324 draws)")
model_ps = power_spectrum(family_pmf(true).masses, 1024)
bottom.plot(model_ps.nu, model_ps.psi, color="0.6", lw=1.0, ls="--",
            label="model spectrum (no interior peak)")
bottom.set_ylim(0, 0.05)
bottom.set_title(f"E[B] = {1 / 1.26:.3f}: only aliased bumps are visible")
bottom.set_xlabel("nu")
bottom.set_ylabel("psi")
bottom.legend(fontsize=8)

fit = ps_estimate(hist, NeymanTypeA, denominator_mode="n")
print(f"\ntrue cluster mean {true.cluster_mean:.4f}; the scan selected "
      f"nu = {fit.peak.nu_grid:.4f} with alias m = {fit.peak.alias_m}, "
      f"so E[B] read as 1/{fit.peak.nu_grid + fit.peak.alias_m:.4f} "
      f"= {fit.peak.e_b:.4f}")
print("interior candidates were offered with these alias readings:")
for cand in find_peaks(ps)[:5]:
    print(f"  nu = {cand.nu_grid:.4f}  source = {cand.source:13s} "
          f"E[B] readings: " + ", ".join(
              f"{1.0 / (cand.nu_grid + m):.3f}" for m in range(3)))

fig.tight_layout()
fig.savefig(OUT / "power_spectra.png", dpi=120)
print(f"\nwrote {OUT / 'power_spectra.png'}")
