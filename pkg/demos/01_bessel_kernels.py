#!/usr/bin/env python3
"""Walk through the two radial kernels the whole library is built on.

j_l is the spherical Bessel function of the first kind; u_l is the curl
kernel x^{-1} d/dx [x j_l(x)], the radial profile that appears when the
curl of a j_l-weighted transverse vector harmonic is expanded.  Both obey
three-term recurrences and strict parity rules, which is what the margin
certificates lean on.
"""

import numpy as np

from tunedsource import specfun

print("=== values at a few landmarks ===")
print(f"j_0(0)        = {specfun.bessel_j(0, 0.0):+.15f}   (limit of sin x / x)")
print(f"j_1(pi)       = {specfun.bessel_j(1, np.pi):+.15f}   (= 1/pi)")
print(f"u_0(pi)       = {specfun.bessel_u(0, np.pi):+.15f}   (= cos pi / pi = -1/pi)")
print(f"u_1(0)        = {specfun.bessel_u(1, 0.0):+.15f}   (= 2/3, finite limit)")
print(f"u_5(0)        = {specfun.bessel_u(5, 0.0):+.15f}   (higher orders vanish at 0)")

print("\n=== three-term recurrence residuals ===")
print("l    x        |j_(l-1) + j_(l+1) - (2l+1) j_l / x|")
rng = np.random.default_rng(1)
for l in (1, 4, 9, 17):
    for x in (0.3, 2.0, 31.7):
        jm = specfun.bessel_j(l - 1, x)
        jp = specfun.bessel_j(l + 1, x)
        jl = specfun.bessel_j(l, x)
        res = abs(jm + jp - (2 * l + 1) * jl / x)
        print(f"{l:<4d} {x:<8.2f} {res:.3e}")

print("\n=== parity: j_l(-x) = (-1)^l j_l(x),  u_l(-x) = (-1)^(l+1) u_l(x) ===")
x = 7.3
for l in (1, 2, 3):
    jp, jm = specfun.bessel_j(l, x), specfun.bessel_j(l, -x)
    up, um = specfun.bessel_u(l, x), specfun.bessel_u(l, -x)
    print(f"l={l}: j({x})={jp:+.6e}  j({-x})={jm:+.6e}   u({x})={up:+.6e}  u({-x})={um:+.6e}")

print("\n=== u_l is the normalized derivative combination ===")
print("u_l = [(l+1) j_(l-1) - l j_(l+1)] / (2l+1); check against a numerical")
print("derivative of x j_l(x):")
for l, x in ((2, 1.5), (6, 11.0)):
    h = 1e-6
    numeric = ((x + h) * specfun.bessel_j(l, x + h) - (x - h) * specfun.bessel_j(l, x - h)) / (2 * h) / x
    exact = specfun.bessel_u(l, x)
    print(f"l={l}, x={x}: closed={exact:+.12e}  numeric={numeric:+.12e}")
