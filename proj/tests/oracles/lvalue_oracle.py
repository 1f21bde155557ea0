"""Reference L(s, chi) values for the enclosure tests.

chi(g^k) = exp(2 pi i j k / (q-1)) with g the smallest primitive root mod q.
L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q), evaluated with mpmath at 50 digits.
Run from the repo root; writes tests/oracles/lvalue_reference.inc.
"""
import random
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50


def primitive_root(q):
    n = q - 1
    factors = {p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, int(p**0.5) + 1))}
    return next(g for g in range(2, q) if all(pow(g, n // p, q) != 1 for p in factors))


def l_value(q, j, sigma, t):
    g = primitive_root(q)
    s = mp.mpf(sigma) + 1j * mp.mpf(t)
    total = mp.mpc(0)
    x = 1
    for k in range(q - 1):
        chi = mp.expjpi(mp.mpf(2 * j * k) / (q - 1))
        total += chi * mp.zeta(s, mp.mpf(x) / q)
        x = x * g % q
    return total * mp.power(q, -s)


def main():
    rng = random.Random(20240611)
    primes = [p for p in range(3, 102) if all(p % d for d in range(2, int(p**0.5) + 1))]
    cases = []
    for _ in range(20):
        q = rng.choice(primes)
        j = rng.randrange(1, q - 1)
        sigma = round(rng.uniform(0.4, 1.0), 3)
        t = round(rng.uniform(-5.0, 5.0), 3)
        cases.append((q, j, sigma, t))
    lines = ["// q, j, sigma, t, Re L, Im L  (generated by lvalue_oracle.py)"]
    for q, j, sigma, t in cases:
        v = l_value(q, j, sigma, t)
        lines.append(f'{{{q}, {j}, {sigma!r}, {t!r}, "{mp.nstr(v.real, 30)}", "{mp.nstr(v.imag, 30)}"}},')
    closed = 2 / mp.sqrt(5) * mp.log((1 + mp.sqrt(5)) / 2)
    lines.append(f'// L(1, chi_5 real) = 2/sqrt(5) log((1+sqrt(5))/2) = {mp.nstr(closed, 40)}')
    Path("tests/oracles/lvalue_reference.inc").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
