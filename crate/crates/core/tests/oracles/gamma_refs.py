# Regenerates GAMMA_REFERENCE in src/selftest.rs (also read by the acceptance
# suite). Requires mpmath; runs at 50 significant digits.
import mpmath as mp

mp.mp.dps = 50

POINTS = [
    (1, 1), (0.5, 0), (2.5, 0), (-0.5, 2), (1, 0), (5, 0), (0.25, 0.75),
    (3.5, -2.25), (10, 5), (-2.5, 0.5), (-4.3, -1.1), (0.1, 0), (0.1, 10),
    (20, 0), (-0.75, 0), (7.2, 15.5), (1.5, -0.5), (-1.5, 3), (0.01, 0.01),
    (25, -3),
]

for re, im in POINTS:
    g = mp.gamma(mp.mpc(re, im))
    print(f"    (({re!r}, {im!r}), ({mp.nstr(g.real, 17)}, {mp.nstr(g.imag, 17)})),")
