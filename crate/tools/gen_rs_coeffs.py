"""Taylor coefficients in u = p - 1/2 of the Riemann-Siegel correction terms C0..C4.

Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) is expanded about p = 1/2 by
power-series division at high precision, then differentiated term by term.
Prints Rust constant arrays.
"""
from mpmath import mp, mpf, pi, cos, sin, factorial

mp.dps = 200
M = 120  # expansion order in u

# numerator: cos(2 pi u^2 - 5 pi / 8), series in u
num = [mpf(0)] * (M + 1)
a, b = cos(-5 * pi / 8), sin(-5 * pi / 8)
# cos(x + c) = cos c cos x - sin c sin x, x = 2 pi u^2
for k in range(0, M // 2 + 1):
    x_pow = (2 * pi) ** k / factorial(k)
    if k % 2 == 0:
        term = a * x_pow * (-1) ** (k // 2)
    else:
        term = -b * x_pow * (-1) ** (k // 2)
    if 2 * k <= M:
        num[2 * k] += term
# denominator: cos(2 pi (u + 1/2)) = -cos(2 pi u)
den = [mpf(0)] * (M + 1)
for k in range(0, M // 2 + 1):
    den[2 * k] = -((-1) ** k) * (2 * pi) ** (2 * k) / factorial(2 * k)
psi = [mpf(0)] * (M + 1)
for k in range(M + 1):
    s = num[k] - sum(psi[j] * den[k - j] for j in range(k))
    psi[k] = s / den[0]

def deriv(c, m):
    out = list(c)
    for _ in range(m):
        out = [out[i + 1] * (i + 1) for i in range(len(out) - 1)]
    return out

def comb(terms):
    n = max(len(c) for _, c in terms)
    out = [mpf(0)] * n
    for w, c in terms:
        for i, v in enumerate(c):
            out[i] += w * v
    return out

p2, p4, p6, p8 = pi ** 2, pi ** 4, pi ** 6, pi ** 8
C = [
    psi,
    comb([(-1 / (96 * p2), deriv(psi, 3))]),
    comb([(1 / (64 * p2), deriv(psi, 2)), (1 / (18432 * p4), deriv(psi, 6))]),
    comb([(-1 / (64 * p2), deriv(psi, 1)), (-1 / (3840 * p4), deriv(psi, 5)),
          (-1 / (5308416 * p6), deriv(psi, 9))]),
    comb([(1 / (128 * p2), psi), (1 / (2048 * p4), deriv(psi, 4)),
          (1 / (2949120 * p6), deriv(psi, 8)), (1 / (2038431744 * p8), deriv(psi, 12))]),
]
for k, c in enumerate(C):
    n = len(c)
    while n > 1 and abs(c[n - 1]) * mpf(0.5) ** (n - 1) < mpf(10) ** -22:
        n -= 1
    print(f"const C{k}: [f64; {n}] = [")
    for v in c[:n]:
        print(f"    {mp.nstr(v, 20, min_fixed=-1, max_fixed=1, show_zero_exponent=False)},")
    print("];")
