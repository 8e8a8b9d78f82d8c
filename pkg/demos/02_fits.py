"""
Least-squares bandlimited fits
==============================

Ten spherical Bessel functions fitted to cos(10 t), exp(10 t) and a step on
[-1/2, 1/2], and ten periodic exponentials fitted to cos(10 t). Inside the
interval the fits track the targets; outside they blow up.
"""
import numpy as np

from superosc import approx, shift
from superosc.approx import TargetFunction

import _plotting

targets = {
    "cos 10t": TargetFunction.cosine(10),
    "exp 10t": TargetFunction.exponential(10),
    "step": TargetFunction.unit_step(0.0),
}
fits = {}
for name, target in targets.items():
    fit = approx.approximate_line(target, -0.5, 0.5, 10)
    fits[name] = fit
    print(f"{name:8s} residual {fit.residual_l2:.3e}  rank {fit.svd_rank}  "
          f"largest |gamma| {np.abs(fit.coefficients).max():.2e}")

rate = shift.local_rate_at(shift.BesselSeries(0.0, fits["exp 10t"].coefficients))
print("supergrowing fit, g'/g at 0:", rate)

periodic = approx.approximate_periodic(targets["cos 10t"], -0.5, 0.5, 9)
print(f"periodic  residual {periodic.residual_l2:.3e}  frequencies {np.round(periodic.frequencies, 3)}")

x = np.linspace(-3, 3, 7)
print("periodic fit outside the interval:", np.round(np.abs(approx.fit_values(periodic, x)), 1))

plt = _plotting.pyplot()
if plt is not None:
    t = np.linspace(-0.5, 0.5, 401)
    wide = np.linspace(-3, 3, 1201)
    fig, ax = plt.subplots(2, 3, figsize=(11, 5))
    for j, (name, fit) in enumerate(fits.items()):
        ax[0, j].plot(t, targets[name](t).real, "k", lw=2)
        ax[0, j].plot(t, approx.fit_values(fit, t).real, "r--")
        ax[0, j].set_title(name)
        ax[1, j].semilogy(wide, np.abs(approx.fit_values(fit, wide)))
    _plotting.save(fig, "line_fits.png")
