"""
Prescribing a local rate
========================

A function whose spectrum lives in [-1, 1] can still oscillate faster than
any of its frequencies near a chosen point. Two Legendre coefficients are
enough: the ratio c_1 / c_0 fixes g'(0) / g(0).
"""
import numpy as np

from superosc import energy, spectrum

import _plotting

# rate 10i: ten times faster than the band edge
s = spectrum.prescribe_rate(10j)
print("coefficients", s.coefficients)
print("local rate at 0:", spectrum.local_rate(s))

t = np.linspace(-0.3, 0.3, 7)
g = spectrum.evaluate(s, t)
# the phase advances by ~10 per unit time near the origin
print("phase of g:", np.round(np.unwrap(np.angle(g)), 3))

# the price is paid in energy: almost none of it sits near the origin
rep = energy.energy_report(s, -0.05, 0.05)
print(f"fraction of energy on [-0.05, 0.05]: {rep.fraction:.3e}  bound {rep.bound:.3e}")

# a real rate gives supergrowth instead
grow = spectrum.prescribe_rate(-8.0)
print("supergrowing rate:", spectrum.local_rate(grow))

# matching the Taylor series of exp(i s t) term by term
ev = spectrum.superoscillate_everywhere(2.0, 12)
for N in range(4):
    print(f"g^({N})(0) = {spectrum.evaluate_derivative(ev, N, 0.0):.6f}   target {(2j) ** N}")

plt = _plotting.pyplot()
if plt is not None:
    tt = np.linspace(-3, 3, 1201)
    fig, ax = plt.subplots(2, 1, figsize=(6, 5))
    ax[0].plot(tt, spectrum.evaluate(s, tt).real, label="Re g")
    ax[0].plot(tt, np.cos(10 * tt) * abs(spectrum.evaluate(s, 0.0)), "--", lw=0.8, label="cos 10t")
    ax[0].set_xlim(-0.6, 0.6)
    ax[0].legend()
    ax[1].semilogy(tt, np.abs(spectrum.evaluate(s, tt)))
    ax[1].set_xlabel("t")
    ax[1].set_ylabel("|g|")
    _plotting.save(fig, "prescribed_rate.png")
