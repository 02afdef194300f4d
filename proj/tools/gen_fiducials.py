#!/usr/bin/env python3
"""Regenerate the SIC fiducial data files under data/sic/.

d=4: Weyl-Heisenberg fiducial (displacements tau^{jk} X^j Z^k, tau = -exp(i pi/d)),
     located with a double-precision frame-potential search, then polished to
     50 digits with Gauss-Newton in mpmath.
d=8: Hoggar fiducial (-1+2i, 1, 1, 1, 1, 1, 1, 1)/sqrt(12), covariant under the
     three-qubit Pauli group; written out from its exact form.

Output format: header line `dim=<d>`, then one component per line as
`<re> <im>`, 40 significant digits.
"""
import itertools
import sys

import mpmath as mp
import numpy as np
import scipy.optimize as so

mp.mp.dps = 60
DIGITS = 40


def wh_ops(d):
    w = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(w ** np.arange(d))
    tau = -np.exp(1j * np.pi / d)
    return [(j, k, tau ** (j * k) * np.linalg.matrix_power(shift, j) @ np.linalg.matrix_power(clock, k))
            for j in range(d) for k in range(d)]


def find_double(d, seed=0):
    ops = [D for _, _, D in wh_ops(d)][1:]
    rng = np.random.default_rng(seed)
    target = (d * d - 1) / (d + 1) ** 2

    def frame_potential(x):
        v = x[:d] + 1j * x[d:]
        v = v / np.linalg.norm(v)
        return sum(abs(v.conj() @ D @ v) ** 4 for D in ops)

    while True:
        r = so.minimize(frame_potential, rng.normal(size=2 * d), method="BFGS", options=dict(gtol=1e-14))
        if abs(r.fun - target) < 1e-12:
            v = r.x[:d] + 1j * r.x[d:]
            v /= np.linalg.norm(v)
            return v * np.exp(-1j * np.angle(v[0]))


def mp_ops(d):
    w = mp.exp(2j * mp.pi / d)
    tau = -mp.exp(1j * mp.pi / d)
    out = []
    for j in range(d):
        for k in range(d):
            if j == 0 and k == 0:
                continue
            # (X^j Z^k)|c> = w^{k c}|c + j>
            out.append((j, k, tau ** (j * k)))
    return w, out


def residuals(d, x):
    # x: real parts (d), imag parts (d-1), with v[0] real
    v = [mp.mpc(x[0], 0)] + [mp.mpc(x[i], x[d + i - 1]) for i in range(1, d)]
    w, ops = mp_ops(d)
    res = []
    norm = mp.fsum(abs(c) ** 2 for c in v)
    res.append(norm - 1)
    for j, k, ph in ops:
        s = mp.mpc(0)
        for c in range(d):
            s += mp.conj(v[(c + j) % d]) * ph * w ** (k * c) * v[c]
        res.append(abs(s) ** 2 - mp.mpf(1) / (d + 1))
    return res


def polish(d, v0):
    x = [mp.mpf(float(v0[i].real)) for i in range(d)] + [mp.mpf(float(v0[i].imag)) for i in range(1, d)]
    for _ in range(30):
        r = residuals(d, x)
        h = mp.mpf(10) ** (-30)
        J = mp.matrix(len(r), len(x))
        for i in range(len(x)):
            xp = list(x)
            xp[i] += h
            rp = residuals(d, xp)
            for a in range(len(r)):
                J[a, i] = (rp[a] - r[a]) / h
        JT = J.T
        step = mp.lu_solve(JT * J, JT * mp.matrix(r))
        x = [x[i] - step[i] for i in range(len(x))]
        if max(abs(c) for c in residuals(d, x)) < mp.mpf(10) ** (-50):
            break
    v = [mp.mpc(x[0], 0)] + [mp.mpc(x[i], x[d + i - 1]) for i in range(1, d)]
    return v, max(abs(c) for c in residuals(d, x))


def write(path, d, v):
    with open(path, "w") as fh:
        fh.write(f"dim={d}\n")
        for c in v:
            fh.write(f"{mp.nstr(mp.re(c), DIGITS, min_fixed=-1, max_fixed=1)} "
                     f"{mp.nstr(mp.im(c), DIGITS, min_fixed=-1, max_fixed=1)}\n")


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else "data/sic"
    v4, err = polish(4, find_double(4))
    print("d=4 residual", mp.nstr(err, 5))
    write(f"{outdir}/fiducial_d4.txt", 4, v4)
    s = 1 / mp.sqrt(12)
    v8 = [mp.mpc(-1, 2) * s] + [mp.mpc(1, 0) * s] * 7
    write(f"{outdir}/fiducial_d8.txt", 8, v8)


if __name__ == "__main__":
    main()
