"""Reference values of the oscillator and Coulomb bases (mpmath, 40 digits).

Values feed tests/oscillator.rs and tests/coulomb.rs.
"""
import mpmath as mp

mp.mp.dps = 40


def osc(lam, W, u):
    lam, W, u = mp.mpf(lam), mp.mpc(W), mp.mpf(u)
    k = lam ** mp.mpf(0.25) if lam >= 0 else mp.exp(-1j * mp.pi / 4) * abs(lam) ** mp.mpf(0.25)
    a = mp.mpf(1) / 4 - W / (4 * k * k)
    o1 = lambda t: t * mp.exp(-k * k * t * t / 2) * mp.hyp1f1(a + 0.5, 1.5, k * k * t * t)
    o2 = lambda t: mp.exp(-k * k * t * t / 2) * mp.hyp1f1(a, 0.5, k * k * t * t)
    o3 = lambda t: mp.gamma(a + 0.5) / mp.sqrt(mp.pi) * mp.exp(-k * k * t * t / 2) * mp.hyperu(a, 0.5, k * k * t * t)
    return [(f(u), mp.diff(f, u)) for f in (o1, o2, o3)]


def coul(g, k0, E, x):
    g, k0, E, x = mp.mpf(g), mp.mpf(k0), mp.mpc(E), mp.mpf(x)
    K = mp.sqrt(-E)
    a = mp.mpf(1) / 4 + g / (2 * K)
    c1 = lambda t: k0 ** -0.5 * t ** 0.75 * mp.exp(-K * t) * mp.hyp1f1(a + 0.5, 1.5, 2 * K * t)
    c2 = lambda t: t ** 0.25 * mp.exp(-K * t) * mp.hyp1f1(a, 0.5, 2 * K * t)
    c3 = lambda t: mp.gamma(a + 0.5) / mp.sqrt(mp.pi) * t ** 0.25 * mp.exp(-K * t) * mp.hyperu(a, 0.5, 2 * K * t)
    return [(f(x), mp.diff(f, x)) for f in (c1, c2, c3)]


for args in [(1, 1 + 1j, 0.7), (-1.5, 2 + 0.5j, 1.3), (0.3, -4 + 0.2j, 2.5)]:
    print("osc", args)
    for v, d in osc(*args):
        print(f"    ({mp.nstr(v.real, 30)}, {mp.nstr(v.imag, 30)}), ({mp.nstr(d.real, 30)}, {mp.nstr(d.imag, 30)})")
for args in [(-1, 1, 1 + 1j, 0.5), (0.7, 2.0, -3 + 0.4j, 1.1)]:
    print("coul", args)
    for v, d in coul(*args):
        print(f"    ({mp.nstr(v.real, 30)}, {mp.nstr(v.imag, 30)}), ({mp.nstr(d.real, 30)}, {mp.nstr(d.imag, 30)})")
