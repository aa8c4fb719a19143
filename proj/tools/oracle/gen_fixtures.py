#!/usr/bin/env python3
"""Reference values for the test suite, computed in arbitrary precision.

Run once before building; the output is committed under tests/fixtures.
Nothing here calls into the C++ library.

    python3 tools/oracle/gen_fixtures.py [outdir]
"""

import random
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 60
I = mp.mpc(0, 1)
PI = mp.pi


def fmt(x):
    return repr(float(x))


# Special functions on a scattered grid.

def specfun_grid(n=100, seed=20240611):
    rng = random.Random(seed)
    pts = [mp.mpc(0.75, 5), mp.mpc(0.5, 0), mp.mpc(1, 0), mp.mpc(30, -40), mp.mpc(-3.5, 0.25)]
    while len(pts) < n:
        z = mp.mpc(rng.uniform(-4.5, 12.0), rng.uniform(-25.0, 25.0))
        if rng.random() < 0.3:
            z = mp.mpc(rng.uniform(-4.5, 3.0), rng.uniform(-3.0, 3.0))
        if z.real <= 0 and abs(z.imag) < 0.1:
            continue
        if abs(z) < 0.1:
            continue
        pts.append(z)
    rows = []
    for z in pts:
        lg = mp.loggamma(z)
        ps = mp.digamma(z)
        rows.append([fmt(z.real), fmt(z.imag), fmt(lg.real), fmt(lg.imag), fmt(ps.real), fmt(ps.imag)])
    return rows


# Parabolic cylinder functions. v(x) = D_nu(e^{-i pi/4} x), nu = i lambda - 1/2.

def dprime(nu, z):
    return z / 2 * mp.pcfd(nu, z) - mp.pcfd(nu + 1, z)


def v_pair(x, lam, star=False):
    if star:
        nu, rot = -I * lam - 0.5, mp.expjpi(0.25)
    else:
        nu, rot = I * lam - 0.5, mp.expjpi(-0.25)
    z = rot * x
    return mp.pcfd(nu, z), rot * dprime(nu, z)


# Matching condition. A = e^{-i pi/4} sqrt 2 Gamma(3/4 - i lambda/2) / Gamma(1/4 - i lambda/2).

def a_of(sigma, h, kappa):
    lam = -kappa / mp.mpf(h) - I * sigma
    return mp.expjpi(-0.25) * mp.sqrt(2) * mp.gamma(0.75 - I * lam / 2) / mp.gamma(0.25 - I * lam / 2)


def f_of(sigma, h_inv):
    w = I * mp.mpf(h_inv) / 2
    return -PI / 4 + (mp.loggamma(0.75 - sigma / 2 + w) - mp.loggamma(0.25 - sigma / 2 + w)).imag


def sigma_of(h):
    # Bisection in log sigma: the root spans hundreds of decades as h -> 0.
    h_inv = 1 / mp.mpf(h)
    lo, hi = mp.log(mp.mpf(10) ** -200), mp.mpf(0)
    for _ in range(300):
        mid = (lo + hi) / 2
        if f_of(mp.exp(mid), h_inv) < 0:
            lo = mid
        else:
            hi = mid
    return mp.exp((lo + hi) / 2)


def h_for_sigma(target, guess):
    # Secant iteration; sigma(h) is smooth and monotone near the root.
    h0, h1 = mp.mpf(guess), mp.mpf(guess) * (1 + mp.mpf(10) ** -4)
    r0, r1 = sigma_of(h0) - target, sigma_of(h1) - target
    for _ in range(50):
        if r1 == r0 or abs(h1 - h0) < mp.mpf(10) ** -45:
            break
        h0, h1 = h1, h1 - r1 * (h1 - h0) / (r1 - r0)
        r0, r1 = r1, sigma_of(h1) - target
    return h1


# g(alpha, 1/h) = int_0^inf t^{c-1} exp(b1 t + b2 t^2) dt, c = 1/2 - sigma + i/h,
# b1 = -1/h, b2 = -i/(8 alpha^2 h). Termwise integration of the Taylor series of
# the exponential on [0, R]; R is chosen so the discarded tail is below e^{-60}
# relative to the leading decay, and the working precision covers the largest term.

def g_series(alpha, h_inv, sigma):
    alpha, h_inv, sigma = mp.mpf(alpha), mp.mpf(h_inv), mp.mpf(sigma)
    c = mp.mpf(0.5) - sigma + I * h_inv
    b1 = -h_inv
    b2 = -I * h_inv / (8 * alpha**2)
    R = 60 / h_inv + 1
    peak = float(abs(b1) * R + abs(b2) * R**2)
    with mp.workdps(int(40 + peak / 2.3)):
        c, b1, b2, R = mp.mpc(c), mp.mpf(b1), mp.mpc(b2), mp.mpf(R)
        a_prev2, a_prev = mp.mpc(0), mp.mpc(1)
        total = R**c / c
        n = 1
        while True:
            a_n = (b1 * a_prev + 2 * b2 * a_prev2) / n
            term = a_n * R ** (n + c) / (n + c)
            total += term
            if n > 4 * peak + 50 and abs(term) < mp.mpf(10) ** (-60) * abs(total):
                break
            a_prev2, a_prev = a_prev, a_n
            n += 1
        return mp.mpc(total)


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[2] / "tests" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)

    grid = specfun_grid()
    with open(out / "specfun_grid.csv", "w", newline="\n") as fh:
        fh.write("re,im,lgamma_re,lgamma_im,digamma_re,digamma_im\n")
        for r in grid:
            fh.write(",".join(r) + "\n")

    named = []

    def put(name, value):
        value = mp.mpc(value)
        named.append((name, fmt(value.real), fmt(value.imag)))

    put("log_gamma(0.75+5i)", mp.loggamma(mp.mpc(0.75, 5)))
    put("gamma(0.75-1.5i)", mp.gamma(mp.mpc(0.75, -1.5)))
    put("digamma(0.25+2i)", mp.digamma(mp.mpc(0.25, 2)))
    z = mp.mpc(0.1, 0.1)
    put("digamma_half_gap(0.1+0.1i)", mp.digamma(z) - mp.digamma(z + 0.5))
    z = mp.mpc(5, 5)
    put("log_gamma_diff(5+5i,0.4)", mp.loggamma(z + 0.4) - mp.loggamma(z))

    put("d_nu(-0.3+0.7i,1-2i)", mp.pcfd(mp.mpc(-0.3, 0.7), mp.mpc(1, -2)))
    put("d_nu(0.5,1+i)", mp.pcfd(0.5, mp.mpc(1, 1)))
    put("d_nu(-0.4+0.9i,0.6+0.2i)", mp.pcfd(mp.mpc(-0.4, 0.9), mp.mpc(0.6, 0.2)))
    val, der = v_pair(3, mp.mpc(-2, -0.1))
    put("v(3,-2-0.1i)", val)
    put("v'(3,-2-0.1i)", der)
    val, der = v_pair(2, mp.mpc(-1, -0.2), star=True)
    put("v*(2,-1-0.2i)", val)
    put("v*'(2,-1-0.2i)", der)
    val, der = v_pair(40, mp.mpc(-2, -0.1))
    put("v(40,-2-0.1i)", val)
    val, der = v_pair(-40, mp.mpc(-2, -0.1))
    put("v(-40,-2-0.1i)", val)

    put("a_gamma(0.3,1,+1)", a_of(0.3, 1, 1))
    put("a_gamma(0.1,0.5,-1)", a_of(0.1, 0.5, -1))
    put("a_gamma(0.5,0.2,-1)", a_of(0.5, 0.2, -1))
    put("f_phase(0.25,2,+1)", f_of(mp.mpf(0.25), 2))

    for h in ("0.25", "0.5", "1", "2", "10", "100", "1000"):
        put("sigma(h=%s)" % h, sigma_of(mp.mpf(h)))
    h5 = h_for_sigma(mp.mpf(0.25), 2.7159)
    put("h_for_p(5)", h5)
    put("h_for_p(4)", h_for_sigma(mp.mpf(1) / 6, 1.7137))
    put("h_for_p(7)", h_for_sigma(mp.mpf(1) / 3, 4.6974))

    s5 = sigma_of(mp.mpf("0.2"))
    put("g(0.5,5)", g_series(0.5, 5, s5))
    put("g(1.5,5)", g_series(1.5, 5, s5))
    for h_inv in (10, 20, 40):
        s = sigma_of(1 / mp.mpf(h_inv))
        for alpha in (0.5, 1.5):
            put("g(%g,%d)" % (alpha, h_inv), g_series(alpha, h_inv, s))

    with open(out / "named_values.csv", "w", newline="\n") as fh:
        fh.write("name,re,im\n")
        for name, re, im in named:
            fh.write('"%s",%s,%s\n' % (name, re, im))


if __name__ == "__main__":
    main()
