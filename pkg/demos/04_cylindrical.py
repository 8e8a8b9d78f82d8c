"""
Cylindrically symmetric fields
==============================

A radial field bandlimited to the unit disk is a sum of J_{2n+1}(rho)/rho.
Its Hankel transform is a Zernike series. Fitting exp(10 rho)/sqrt(rho) on
[1/2, 3/2] produces a field that grows ten times faster than the band edge
allows, measured by the rates kappa and k of laplacian(h)/h.
"""
import numpy as np

from superosc import approx, cylindrical
from superosc.approx import TargetFunction
from superosc.cylindrical import RadialSpectrum

import _plotting

a = RadialSpectrum([0.6, -0.3, 0.2j])
nu = np.linspace(0.1, 0.9, 5)
print("Zernike values  ", np.round(cylindrical.zernike_spectrum_value(a, nu), 6))
print("Hankel transform", np.round(cylindrical.radial_hankel(a, nu), 6))
print("beyond the band ", np.round(np.abs(cylindrical.radial_hankel(a, np.array([1.5, 2.0]))), 6))

# Zernike normalization measured directly
print("int nu R_2n^2 =", np.round(np.diag(cylindrical.zernike_norms(4)), 6))

fits = {}
for name, target in [("exp", TargetFunction.radial_exponential(10)),
                     ("cos", TargetFunction.radial_cosine(10)),
                     ("step", TargetFunction.unit_step(1.0))]:
    fit = approx.approximate_radial(target, 0.5, 1.5, 10)
    fits[name] = fit
    print(f"radial {name:4s} residual {fit.residual_l2:.3e}  rank {fit.svd_rank}")

for name in ("exp", "cos"):
    r = cylindrical.generalized_rates_series(cylindrical.radial_spectrum_from_fit(fits[name]), 1.0)
    print(f"{name}: kappa {r.kappa:.4f}, k {r.k:.4f} at rho = 1")

plt = _plotting.pyplot()
if plt is not None:
    rho = np.linspace(0.5, 1.5, 301)
    fig, ax = plt.subplots(1, 2, figsize=(9, 3.5))
    ax[0].plot(rho, TargetFunction.radial_cosine(10)(rho).real, "k", lw=2)
    ax[0].plot(rho, approx.fit_values(fits["cos"], rho).real, "r--")
    ax[1].plot(rho, TargetFunction.unit_step(1.0)(rho).real, "k", lw=2)
    ax[1].plot(rho, approx.fit_values(fits["step"], rho).real, "r--")
    _plotting.save(fig, "radial_fits.png")
