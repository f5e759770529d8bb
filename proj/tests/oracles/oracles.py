#!/usr/bin/env python3
"""High-precision reference values for the unit tests.

Every number printed here is computed with mpmath at 40 significant digits,
independently of the C++ code paths (no Clausen series, no cell splitting).
The printed values are frozen into tests/*.cpp.
"""
import mpmath as mp

mp.mp.dps = 40
E = mp.e


def neglogcos_integral(lo, hi, xi):
    """int_lo^hi -log|cos(theta - xi)| dtheta, split at singular points."""
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    pts = [lo]
    j = mp.ceil((lo - xi - mp.pi / 2) / mp.pi)
    while True:
        s = xi + mp.pi / 2 + j * mp.pi
        if s >= hi:
            break
        if s > lo:
            pts.append(s)
        j += 1
    pts.append(hi)
    return mp.quad(lambda t: -mp.log(abs(mp.cos(t - xi))), pts)


def show(name, v):
    print(f"{name:40s} {mp.nstr(v, 20)}")


# orlicz
show("power_log(1) phi(e^2-e)", (E**2 - E) * mp.log(E + E**2 - E))
show("power_log(1/2) phi(e^2-e)", (E**2 - E) * mp.sqrt(2))
show("psi power_log(1/2) at 144.77", mp.sqrt(mp.log(E + mp.mpf("144.77"))))
show("modular +-1 split, power_log(1)", 2 * mp.pi * mp.log(E + 1))
u = mp.findroot(lambda u: u * mp.log(E + u) - 1 / (2 * mp.pi), 0.15)
show("luxemburg u", u)
show("luxemburg +-1 split", 1 / u)
for N in [mp.mpf(10) ** 3, mp.mpf(10) ** 6, mp.mpf(10) ** 9]:
    t = N / mp.log(N)
    show(f"N/logN N={mp.nstr(N, 3)}", t)
    show(f"  psi power_log(1/2)", mp.sqrt(mp.log(E + t)))
    show(f"  psi log_quotient", mp.log(E + mp.log(E + t)))

# clausen
show("Cl2(pi/2)", mp.clsin(2, mp.pi / 2))
show("Cl2(1)", mp.clsin(2, 1))
show("Cl2(2.5)", mp.clsin(2, mp.mpf("2.5")))
show("Cl2(-0.3)", mp.clsin(2, mp.mpf("-0.3")))
show("Cl2(1e-6)", mp.clsin(2, mp.mpf("1e-6")))

# arc integrals
a = mp.mpf("0.005")
show("arc c=pi/2 len .01 xi=0", neglogcos_integral(mp.pi / 2 - a, mp.pi / 2 + a, 0))
show("arc c=0 len .01 xi=0", neglogcos_integral(-a, a, 0))
show("full circle", neglogcos_integral(0, 2 * mp.pi, mp.mpf("0.3")))
show("2 pi log 2", 2 * mp.pi * mp.log(2))
cases = [
    (mp.mpf("1.0"), mp.mpf("0.3"), mp.mpf("0.2")),
    (mp.mpf("2.0"), mp.mpf("0.05"), mp.mpf("0.4292")),
    (mp.mpf("0.7"), mp.mpf("1e-6"), mp.mpf("5.0")),
    (mp.mpf("3.0"), mp.mpf("0.25"), mp.mpf("1.5")),
]
for c, l, xi in cases:
    show(f"arc c={c} len={l} xi={xi}", neglogcos_integral(c - l / 2, c + l / 2, xi))

# atom normalisation at N = 100
I_sing = neglogcos_integral(mp.pi / 2 - a, mp.pi / 2 + a, 0)
I_reg = neglogcos_integral(-a, a, 0)
cN = 1 / (2 * I_sing + 2 * I_reg)
show("c(N=100)", cN)
show("khat(w,e) N=100", cN * (-2 * I_sing + 2 * I_reg))
# exact singular-centered integral for a tiny arc: 2(h - h log h) + h^3/9
for N in [mp.mpf(2) ** 32, mp.mpf(2) ** 64]:
    h = 1 / (2 * N)
    sing = 2 * (h - h * mp.log(h)) + h**3 / 9
    reg = 2 * h**3 / 6
    show(f"c(N=2^{int(mp.log(N, 2))})", 1 / (2 * sing + 2 * reg))

# trig norms
show("||1+e||_4", mp.mpf(6) ** 0.25)
n = 4096
show("||D_4096||_4", ((2 * mp.mpf(n) ** 3 + n) / 3) ** 0.25)


def rs(n):
    a = [1]
    for i in range(1, n):
        a.append(a[i // 2] if i % 2 == 0 else (-1) ** (i // 2) * a[i // 2])
    return a


print("RS(8)", rs(8))


def sup_dense(coeffs, M):
    best = 0
    for j in range(M):
        x = mp.mpf(j) / M
        v = abs(sum(c * mp.expj(2 * mp.pi * (k + 1) * x) for k, c in enumerate(coeffs)))
        best = max(best, v)
    return best


mp.mp.dps = 20
show("sup RS(4) dense grid 4096", sup_dense(rs(4), 4096))
