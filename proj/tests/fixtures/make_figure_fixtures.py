# Golden radiation curves for q = 0.78, hbar = k = c = T = 1, evaluated in
# 40-digit arithmetic from <N> = (e^x - 1)[mu/(e^x - 1/q)^2 + (1-mu)/(e^x - q)^2].
# Grid matches `qtamm figures`: nu_i = nu_min + (nu_max - nu_min) i / N,
# i = 1..N, nu_min = ln(1/q).
import sys
from mpmath import mp, mpf, exp, log, pi

mp.dps = 40
q = mpf("0.78")
nu_max = mpf(10)
N = 200

for mu_s in ("0.1", "0.5", "0.9"):
    mu = mpf(mu_s)
    nu_min = log(1 / q)
    with open(f"figure_q0.78_mu{mu_s}.csv", "w") as f:
        f.write("nu,I_deformed,I_planck\n")
        for i in range(1, N + 1):
            nu = nu_min + (nu_max - nu_min) * i / N
            ex = exp(nu)
            occ = (ex - 1) * (mu / (ex - 1 / q) ** 2 + (1 - mu) / (ex - q) ** 2)
            pre = 8 * pi * nu ** 3
            f.write(f"{mp.nstr(nu, 20)},{mp.nstr(pre * occ, 20)},{mp.nstr(pre / (ex - 1), 20)}\n")
