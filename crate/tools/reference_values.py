"""Extended-precision reference values frozen into the Rust test suites.

Run with `python3 tools/reference_values.py`; requires mpmath.
Every value is computed independently of the Rust code paths it checks.
"""
import mpmath as mp

mp.mp.dps = 40


def show(label, z):
    z = mp.mpc(z)
    print(f"{label}: re={mp.nstr(z.real, 20)} im={mp.nstr(z.imag, 20)}")


def hankel_L(alpha, lam):
    """L(alpha, lam) integrated along the Hankel contour H1 (unit circle)."""
    alpha = mp.mpf(alpha)
    lam = mp.mpf(lam)
    la = mp.log(alpha)

    def integrand(w, logw):
        s = w - mp.pi / 2 + 1j * (logw - la)
        f = 1 / (mp.pi * w * (mp.pi / 2 - 1j * (logw - la)))
        return f * mp.exp(lam * s)

    cut = mp.mpf(1) + 120 / lam
    pts = [1, 1.25, 1.5, 2, 3, 4, 6, 9, 14, 25, cut + 30]
    # lower ray: w = rho e^{-i pi}, traversed from infinity to 1, dw = -drho
    lower = mp.quad(lambda r: integrand(-r, mp.log(r) - 1j * mp.pi), pts)
    # circle
    n = 96
    thetas = [-mp.pi + 2 * mp.pi * k / n for k in range(n + 1)]
    circ = mp.quad(lambda t: integrand(mp.expj(t), 1j * t) * 1j * mp.expj(t), thetas)
    # upper ray: w = rho e^{i pi}, from 1 to infinity, dw = -drho
    upper = mp.quad(lambda r: -integrand(-r, mp.log(r) + 1j * mp.pi), pts)
    return lower + circ + upper


def sum_lhs(x):
    return mp.nsum(lambda k: (-1j) ** k / (mp.factorial(k) * (k + 1j * x)), [0, mp.inf])


def bleistein_ray(z):
    d = mp.expj(-mp.pi / 4)
    return mp.quad(lambda t: mp.exp(-1j * (z + d * t) ** 2) * d, [0, 1, 2, 4, 8, mp.inf])


if __name__ == "__main__":
    for z in [1 + 1j, 0.3 - 0.2j, 2.5 + 1.5j, -1.7 + 3.1j, 4 - 0.5j, 0.1 + 6j, 6 + 0.01j]:
        show(f"erf({z})", mp.erf(z))
    show("gamma(0.5+1i)", mp.gamma(0.5 + 1j))
    for x in [1, -1, 10]:
        show(f"sum_lhs({x})", sum_lhs(x))
    show("B(1) ray", bleistein_ray(mp.mpf(1)))
    show("B(1) erf", 0.5 * mp.expj(3 * mp.pi / 4) * mp.sqrt(mp.pi) * (mp.erf(mp.expj(mp.pi / 4)) - 1))
    for alpha in [0.5, 2, 5, mp.e]:
        for lam in [20, 50, 100]:
            show(f"L({mp.nstr(alpha, 8)},{lam})", hankel_L(alpha, lam))


def lagrange_w_series(order):
    """Coefficients of w(r) about r = 0 by Lagrange inversion of r(v), v = w + i."""
    n_terms = order + 3
    # phi(v) = v + i log(1 + i v) = sum_{k>=2} phi_k v^k
    phi = [mp.mpc(0)] * (n_terms + 2)
    for k in range(2, n_terms + 2):
        phi[k] = mp.j * (-1) ** (k + 1) * mp.j ** k / k
    # r(v)^2 = -2 phi(v) = -i v^2 (1 + sum c_k v^k)
    inner = [(-2 * phi[k + 2]) / (-mp.j) for k in range(n_terms)]

    def mul(a, b):
        out = [mp.mpc(0)] * n_terms
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if i + j < n_terms:
                    out[i + j] += x * y
        return out

    def powser(a, p):
        # a[0] = 1, real power via binomial recurrence (J.C.P. Miller)
        out = [mp.mpc(0)] * n_terms
        out[0] = mp.mpc(1)
        for n in range(1, n_terms):
            acc = mp.mpc(0)
            for k in range(1, n + 1):
                acc += ((p + 1) * k - n) * a[k] * out[n - k]
            out[n] = acc / n
        return out

    # v / r(v) = e^{i pi/4} * inner^{-1/2}
    ratio_base = powser(inner, mp.mpf(-0.5))
    pref = mp.expj(mp.pi / 4)
    coeffs = [-mp.j]
    for n in range(1, order + 1):
        ratio_n = powser(inner, mp.mpf(-0.5) * n)
        coeffs.append(pref ** n * ratio_n[n - 1] / n)
    return coeffs


if __name__ == "__main__":
    for j, c in enumerate(lagrange_w_series(8)):
        show(f"w_series[{j}]", c)
