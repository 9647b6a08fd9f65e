"""Arbitrary-precision reference values frozen into the C++ unit tests.

Run with: python3 tests/oracles/golden_values.py
"""
from mpmath import mp, mpf, mpc, log, atan, pi, quad, conj, fabs, sqrt, atanh

mp.dps = 40


def green(z, w):
    z, w = mpc(z), mpc(w)
    d2 = abs(z - w) ** 2
    return d2 * log(abs(1 - z * conj(w)) ** 2 / d2) - (1 - abs(z) ** 2) * (1 - abs(w) ** 2)


def green_dz_fd(z, w, h=mpf("1e-20")):
    gx = (green(z + h, w) - green(z - h, w)) / (2 * h)
    gy = (green(z + 1j * h, w) - green(z - 1j * h, w)) / (2 * h)
    return (gx - 1j * gy) / 2


print("green(0, 0.5)            =", green(0, mpf("0.5")))
print("green(0.3+0.1i, -0.2+0.4i) =", green(mpc("0.3", "0.1"), mpc("-0.2", "0.4")))
print("G_z(0, 0.5)              =", green_dz_fd(0, mpf("0.5")))
print("G_z(0.3+0.1i,-0.2+0.4i)  =", green_dz_fd(mpc("0.3", "0.1"), mpc("-0.2", "0.4")))

# int_D (|G_z|+|G_zb|) dA at z = 0: radial closed form 4*pi*int r^2 (r^2-1-2log r) dr
i0 = 4 * pi * quad(lambda r: r ** 2 * (r ** 2 - 1 - 2 * log(r)), [0, 1])
print("I(0)                     =", i0, " 16pi/45 =", 16 * pi / 45)

# Schwarz-Pick bound arithmetic
def bound(q, n_phi, n_g):
    factor = 4 if q == 1 else 2 ** (q - 1) * q + 1
    return 1 / (2 / pi - factor * (n_phi + n_g / 64))

print("bound(q=1,0.01,0.1)      =", bound(1, mpf("0.01"), mpf("0.1")))
print("bound(q=2,0.1,1)         =", bound(2, mpf("0.1"), mpf(1)))
print("lemma_c(0)               =", 1 - 2 / pi)
print("lemma_c(0.5)             =", (2 / pi) * (mpf("0.5") - 1) + 1 - (4 / pi) * atan(mpf("0.5")))
print("dp margin F=e^{it}, z=0  =", 4 / pi - 1)
print("log 3                    =", log(3))

# counterexample Schwarz-Pick ratio (1-|z|^2)/(1-|f|^2) at |z| = 1 - 2^-k
for k in (3, 12):
    a = 1 - mpf(2) ** (-k)
    r = a * a
    print(f"thm1 ratio k={k:2d}           =", (1 - r) / ((1 - r * r) ** 2 * (1 + 2 * r * r - r ** 4)))

# conjugate term for F = e^{-it} at z = 0.5 by brute-force series truncation:
# z̄ζ/(1-z̄ζ)^2 = sum_k k z̄^k ζ^k, mean against ζ^{-1} keeps k = 1 only.
z = mpf("0.5")
print("conj term e^{-it}, z=.5  =", (1 - z * z) * sum(k * z ** k * (1 if k == 1 else 0) for k in range(1, 60)))

# sup of |e^{it} + 0.1 e^{2it}| by dense grid
print("sup |1+0.1e^{it}|        =", max(abs(1 + mpf("0.1") * mp.expj(2 * pi * j / 20000)) for j in range(20000)))

# hyperbolic distances
print("d_h(0.2, 0.5)            =", 2 * atanh(abs((mpf("0.2") - mpf("0.5")) / (1 - mpf("0.1")))))
