# Reference values for tests/specfun_oracle.rs, computed with mpmath at 30 digits.
from mpmath import mp, mpc, mpf, gamma, digamma, hyp1f1, hyperu, loggamma

mp.dps = 30

cases = [
    ("gamma", lambda: gamma(mpc(0.25, 0.5))),
    ("gamma", lambda: gamma(mpc(-2.5, 1))),
    ("gamma", lambda: gamma(mpc(10.3, -4))),
    ("gamma", lambda: gamma(mpc(0.25, 80))),
    ("gamma", lambda: gamma(mpc(-7.7, -0.3))),
    ("re loggamma", lambda: loggamma(mpc(0.25, 3000)).real),
    ("digamma", lambda: digamma(mpf(0.25))),
    ("digamma", lambda: digamma(mpc(-1.3, 0.7))),
    ("digamma", lambda: digamma(mpc(2.5, -30))),
    ("hyp1f1", lambda: hyp1f1(0.75, 1.5, 2.25)),
    ("hyp1f1", lambda: hyp1f1(mpc(0.25, -2), 0.5, mpc(0, -25))),
    ("hyp1f1", lambda: hyp1f1(-3.3, 1.5, 40)),
    ("hyp1f1", lambda: hyp1f1(mpc(1, 1), 0.5, 60)),
    ("hyp1f1", lambda: hyp1f1(-20.25, 0.5, 30)),
    ("hyp1f1", lambda: hyp1f1(mpc(0.25, -10), 1.5, mpc(0, -40))),
    ("hyp1f1", lambda: hyp1f1(2.75, 1.5, -35)),
    ("hyperu", lambda: hyperu(1, 1.5, 4)),
    ("hyperu", lambda: hyperu(0.25, 0.5, 10)),
    ("hyperu", lambda: hyperu(-3.3, 0.5, 12)),
    ("hyperu", lambda: hyperu(mpc(0.25, -1), 0.5, mpc(8, -3))),
    ("hyperu", lambda: hyperu(-10.25, 0.5, 20)),
    ("hyperu", lambda: hyperu(mpc(3.5, 2), 1.5, 0.7)),
    ("hyperu", lambda: hyperu(mpc(0.25, -6), 0.5, mpc(0, -30))),
]
for name, f in cases:
    print(name, f())
