"""Reference values for tests/unit, computed with mpmath at 30 digits.

Run: python3 tests/reference/freeze_values.py
"""
import mpmath as mp

mp.mp.dps = 30


def sphere_measure(j):
    return 2 * mp.pi ** (mp.mpf(j + 1) / 2) / mp.gamma(mp.mpf(j + 1) / 2)


def legendre_d(d, k, t):
    if d == 2:
        return mp.chebyt(k, t)
    p = mp.mpf(d - 2) / 2
    return mp.gegenbauer(k, p, t) / mp.gegenbauer(k, p, 1)


def mu(F, d, k):
    w = lambda t: F(t) * legendre_d(d, k, t) * (1 - t * t) ** (mp.mpf(d - 3) / 2)
    return sphere_measure(d - 2) * mp.quad(w, [-1, 0, 1])


def hankel_fw(profile, d, u):
    """F_w(u) from the radial Fourier transform, evaluated with quadosc."""
    xi = mp.sqrt(2 * u)
    nu = mp.mpf(d) / 2 - 1
    g = lambda rho: profile(rho) * rho ** (mp.mpf(d) / 2) * mp.besselj(nu, rho * xi)
    integral = mp.quadosc(g, [0, mp.inf], omega=xi)
    return (2 * mp.pi) ** (mp.mpf(d) / 2) * xi ** (1 - mp.mpf(d) / 2) * integral


def lam(d, k, r, fw, psi2, dphi):
    return r ** (d - 1) * psi2(r) / dphi(r) * mu(lambda t: fw(r * r * (1 - t)), d, k)


def show(label, value):
    print(f"{label:48s} {mp.nstr(value, 17)}")


gauss_fw = {d: (lambda u, d=d: (2 * mp.pi) ** (mp.mpf(d) / 2) * mp.e ** (-u)) for d in (2, 3)}
schr = dict(psi2=lambda r: 1, dphi=lambda r: 2 * r)

for d in (2, 3):
    for r in (mp.mpf("0.5"), mp.mpf(2)):
        for k in (0, 1, 3):
            show(f"gaussian d={d} lambda_{k}({r})", lam(d, k, r, gauss_fw[d], **schr))

# Gaussian transform cross-check by quadosc.
show("gaussian d=3 F_w(1) via hankel", hankel_fw(lambda x: mp.e ** (-x * x / 2), 3, 1))

# (1+r^2)^{-1} in d=3: Hankel transform by oscillatory quadrature.
c_profile = lambda x: 1 / (1 + x * x)
for u in (mp.mpf("0.5"), mp.mpf(1), mp.mpf(2)):
    show(f"typeC s=2 d=3 F_w({u})", hankel_fw(c_profile, 3, u))
fw_c = lambda u: hankel_fw(c_profile, 3, u) if u > 0 else mp.inf
# closed form used for lambda below, checked against quadosc above
fw_c_closed = lambda u: 2 * mp.pi ** 2 * mp.e ** (-mp.sqrt(2 * u)) / mp.sqrt(2 * u)
for k in (0, 2):
    show(f"typeC s=2 d=3 lambda_{k}(1)", lam(3, k, mp.mpf(1), fw_c_closed,
                                              psi2=lambda r: r, dphi=lambda r: 2 * r))

# (1+r^2)^{-3/2} in d=3, psi = (1+r^2)^{1/4}.
a_profile = lambda x: (1 + x * x) ** mp.mpf(-1.5)
show("typeA s=3 d=3 F_w(1)", hankel_fw(a_profile, 3, 1))
fw_a = lambda u: 4 * mp.pi * mp.besselk(0, mp.sqrt(2 * u))
show("typeA s=3 d=3 lambda_1(2)", lam(3, 1, mp.mpf(2), fw_a,
                                      psi2=lambda r: mp.sqrt(1 + r * r), dphi=lambda r: 2 * r))

# Dirac curve, Gaussian weight, psi = 1, phi = (r^2 + 1)^{1/2}.
m = mp.mpf(1)
rel = dict(psi2=lambda r: 1, dphi=lambda r: r / mp.sqrt(r * r + m * m))
r = mp.mpf(1)
l0 = lam(3, 0, r, gauss_fw[3], **rel)
l1 = lam(3, 1, r, gauss_fw[3], **rel)
phi = mp.sqrt(r * r + m * m)
show("gaussian dirac d=3 m=1 lambda_0(1)", l0)
show("gaussian dirac d=3 m=1 lambda-tilde_0(1)", (l0 + l1) / 2 + m / (2 * phi) * abs(l0 - l1))
show("gaussian dirac d=3 m=1 lambda-rad(1)", (l0 + l1 + m * m / (r * r + m * m) * (l0 - l1)) / 2)
