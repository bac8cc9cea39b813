"""High-precision reference values frozen into the C++ unit tests.

Run with `python3 reference_values.py`; every value here is computed with
mpmath at 40 significant digits, independently of the C++ code paths.
"""
import mpmath as mp

mp.mp.dps = 40
LOG2E = 1 / mp.log(2)
VBAR = LOG2E**2


def q(x):
    return mp.erfc(mp.mpf(x) / mp.sqrt(2)) / 2


def q_inv(p):
    # bisection on q, deliberately not using erfinv
    lo, hi = mp.mpf(-40), mp.mpf(40)
    for _ in range(400):
        mid = (lo + hi) / 2
        if q(mid) > p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def dispersion(rho):
    rho = mp.mpf(rho)
    return rho * (2 + rho) / (1 + rho) ** 2 * LOG2E**2


def erlang_cdf(L, z):
    f = lambda t: L**L * t ** (L - 1) * mp.e ** (-L * t) / mp.factorial(L - 1)
    return mp.quad(f, [0, z])


def corrected(L, z):
    c = L / mp.e * mp.factorial(L) ** (-mp.mpf(1) / L)
    return (c * z * mp.e ** (1 - c * z)) ** L


def tau(R, n, eps):
    return mp.power(2, R + mp.sqrt(VBAR / n) * q_inv(eps)) - 1


def show(name, v):
    print(f"{name:48s} {mp.nstr(v, 20)}")


show("Q(1.959964)", q("1.959964"))
show("Q^-1(0.025)", q_inv(mp.mpf("0.025")))
show("Q^-1(1e-3)", q_inv(mp.mpf("1e-3")))
show("Q^-1(1e-5)", q_inv(mp.mpf("1e-5")))
show("P(1,0.1)", 1 - mp.e ** mp.mpf("-0.1"))
show("P(2,0.2)", 1 - mp.e ** mp.mpf("-0.2") * mp.mpf("1.2"))
show("ln 4!", mp.log(24))
show("V(1)", dispersion(1))
show("Vbar", VBAR)
show("R*(1,4096,1e-3)", 1 + mp.mpf(12) / 8192 - mp.sqrt(dispersion(1) / 4096) * q_inv(mp.mpf("1e-3")))
show("Rlb(1,4096,1e-3)", 1 - mp.sqrt(VBAR / 4096) * q_inv(mp.mpf("1e-3")))
show("tau(0.5,4096,Q(1))", tau(mp.mpf("0.5"), 4096, q(1)))
show("tau(0.5,4096,1e-5)", tau(mp.mpf("0.5"), 4096, mp.mpf("1e-5")))
arg = mp.sqrt(4096 / dispersion(1)) * (1 + mp.mpf(12) / 8192 - mp.mpf("0.5"))
show("eps(rho=1,R=.5,n=4096) arg", arg)
show("eps(rho=1,R=.5,n=4096)", q(arg))
show("beta(4,1,3dB)", 4 * mp.power(10, mp.mpf("0.3")))
show("U_1(0.1)", mp.mpf("0.1") * mp.e ** mp.mpf("0.9"))
show("U_4(0.5)", (mp.mpf("0.5") * mp.e ** mp.mpf("0.5")) ** 4)
for L in (1, 2, 4):
    show(f"c_{L}", L / mp.e * mp.factorial(L) ** (-mp.mpf(1) / L))
show("B_1(0.1)", corrected(1, mp.mpf("0.1")))
show("B_4(0.064113)", corrected(4, mp.mpf("0.064113")))
show("exact_4(0.064113)", erlang_cdf(4, mp.mpf("0.064113")))
show("series_4(1e-3)", (4 * mp.mpf("1e-3")) ** 4 / 24)
beta = 4 * mp.power(10, mp.mpf("0.3"))
t5 = tau(mp.mpf("0.5"), 4096, mp.mpf("1e-5"))
show("obj(1e-5) fig2 anchor CorrectedB", mp.mpf("1e-5") + (1 - mp.mpf("1e-5")) * corrected(4, t5 / beta))
show("obj(0.5) L=1 beta=1 exact", mp.mpf("0.5") + mp.mpf("0.5") * (1 - mp.e ** (-(mp.sqrt(2) - 1))))
show("per_asym(R=.5,L=1,beta=1)", 1 - mp.e ** (-(mp.sqrt(2) - 1)))
show("per_asym fig2 anchor", mp.gammainc(4, 0, 4 * (mp.sqrt(2) - 1) / beta, regularized=True))


# Anchor bound by brute force: the corrected-bound objective on 10^6
# log-spaced eps points in double precision.
import numpy as np
from scipy.special import ndtri

eps = np.exp(np.linspace(np.log(1e-12), np.log(1 - 1e-6), 1_000_000))
t = np.expm1(np.log(2) * (0.5 + np.sqrt(float(VBAR) / 4096) * -ndtri(eps)))
c4 = float(4 / mp.e * mp.factorial(4) ** (-mp.mpf(1) / 4))
x = c4 * np.maximum(t, 0) / float(beta)
obj = np.where(x >= 1, 1.0, np.minimum(1.0, eps + (1 - eps) * (x * np.exp(1 - x)) ** 4))
i = int(np.argmin(obj))
print(f"{'anchor grid min (10^6 points)':48s} {obj[i]:.6g} at eps {eps[i]:.4g}")
