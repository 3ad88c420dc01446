#!/usr/bin/env python3
"""Regenerate the bundled point corpus in data/.

Spherical t-designs are found by Gauss-Newton on the residuals
sum_j Y_lk(x_j), l = 1..t, starting from equal-area points. The Jacobian
comes from complex-step differentiation of the polynomial form of the real
harmonics. Coulomb points come from projected gradient descent on the
inverse-distance energy.
"""

import argparse
import math
from pathlib import Path

import numpy as np


def equal_area(m):
    if m == 1:
        return np.array([[0.0, 0.0, 1.0]])
    area = 4 * math.pi / m
    cap = lambda a: 2 * math.asin(min(1.0, math.sqrt(a / (4 * math.pi))))
    if m == 2:
        return np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
    c = cap(area)
    ncol = max(1, int(math.floor((math.pi - 2 * c) / math.sqrt(area) + 0.5)))
    fit = (math.pi - 2 * c) / ncol
    ideal = [2 * math.pi * (math.cos(c + i * fit) - math.cos(c + (i + 1) * fit)) / area for i in range(ncol)]
    counts, disc = [], 0.0
    for x in ideal:
        r = math.floor(x + disc + 0.5)
        counts.append(int(r))
        disc += x - r
    pts = [[0.0, 0.0, 1.0]]
    top, total, offset = c, 1, 0.0
    for i, n in enumerate(counts):
        total += n
        bot = cap(total * area)
        mid = 0.5 * (top + bot)
        for k in range(n):
            az = ((k + 0.5) * 2 * math.pi / n + 2 * math.pi * offset) % (2 * math.pi)
            pts.append([math.sin(mid) * math.cos(az), math.sin(mid) * math.sin(az), math.cos(mid)])
        nxt = counts[i + 1] if i + 1 < len(counts) else 1
        offset += (1 / nxt - 1 / n) / 2 + math.gcd(n, nxt) / (2 * n * nxt)
        offset -= math.floor(offset)
        top = bot
    pts.append([0.0, 0.0, -1.0])
    return np.array(pts)


def harmonics(x, y, z, t):
    """Real orthonormal harmonics of degree 1..t as rows; polynomial in x, y, z."""
    rows = []
    q_diag = np.full_like(x, 1 / math.sqrt(4 * math.pi))
    c, s = np.ones_like(x), np.zeros_like(x)
    by_degree = {}
    for m in range(t + 1):
        if m > 0:
            q_diag = q_diag * math.sqrt((2 * m + 1) / (2 * m))
            c, s = x * c - y * s, x * s + y * c
        q_prev, q = None, q_diag
        for ell in range(m, t + 1):
            if ell == m + 1:
                q_prev, q = q, math.sqrt(2 * m + 3) * z * q
            elif ell > m + 1:
                a = math.sqrt((4 * ell * ell - 1) / (ell * ell - m * m))
                b = math.sqrt(((ell - 1) ** 2 - m * m) * (2 * ell + 1) / ((2 * ell - 3) * (ell * ell - m * m)))
                q_prev, q = q, a * z * q - b * q_prev
            if m == 0:
                by_degree.setdefault(ell, []).append(q)
            else:
                by_degree.setdefault(ell, []).extend([math.sqrt(2) * q * c, math.sqrt(2) * q * s])
    for ell in range(1, t + 1):
        rows.extend(by_degree[ell])
    return np.array(rows)


def residual(p, t):
    return harmonics(p[:, 0], p[:, 1], p[:, 2], t).sum(axis=1)


def jacobian(p, t):
    h = 1e-30
    cols = []
    for axis in range(3):
        q = p.astype(complex)
        q[:, axis] += 1j * h
        cols.append(harmonics(q[:, 0], q[:, 1], q[:, 2], t).imag / h)
    grad = np.stack(cols, axis=2)  # (rows, N, 3)
    # p = u/|u| at |u| = 1: project onto the tangent plane.
    grad = grad - np.einsum("rnk,nk->rn", grad, p)[:, :, None] * p[None, :, :]
    return grad.reshape(grad.shape[0], -1)


def tdesign(t, n_points, tol=1e-14, max_iter=200):
    p = equal_area(n_points)
    rng = np.random.default_rng(t)
    p = p + 1e-3 * rng.standard_normal(p.shape)
    p /= np.linalg.norm(p, axis=1, keepdims=True)
    r = residual(p, t)
    for _ in range(max_iter):
        if np.linalg.norm(r, np.inf) < tol:
            break
        step = np.linalg.lstsq(jacobian(p, t), -r, rcond=None)[0].reshape(p.shape)
        lam = 1.0
        while lam > 1e-6:
            trial = p + lam * step
            trial /= np.linalg.norm(trial, axis=1, keepdims=True)
            rt = residual(trial, t)
            if np.linalg.norm(rt) < np.linalg.norm(r):
                p, r = trial, rt
                break
            lam *= 0.5
        else:
            break
    return p, float(np.linalg.norm(r, np.inf))


def coulomb(m, iters=4000):
    p = equal_area(m)
    for it in range(iters):
        d = p[:, None, :] - p[None, :, :]
        r = np.linalg.norm(d, axis=2)
        np.fill_diagonal(r, np.inf)
        force = (d / r[:, :, None] ** 3).sum(axis=1)
        force -= (force * p).sum(axis=1, keepdims=True) * p
        p = p + 0.1 / m * force
        p /= np.linalg.norm(p, axis=1, keepdims=True)
    return p


def icosahedron():
    g = (1 + math.sqrt(5)) / 2
    v = []
    for a in (-1, 1):
        for b in (-g, g):
            v += [[0, a, b], [a, b, 0], [b, 0, a]]
    v = np.array(v, dtype=float)
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def write(path, pts, header):
    with open(path, "w") as f:
        for line in header:
            f.write(f"# {line}\n")
        for x, y, z in pts:
            f.write(f"{x:.17g} {y:.17g} {z:.17g}\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    write(out / "icosahedron_t5.txt", icosahedron(), ["icosahedron vertices, spherical 5-design, 12 points"])
    for t in (8, 12, 20):
        n = (t + 1) ** 2
        p, res = tdesign(t, n)
        print(f"t={t} N={n} residual={res:.3e}")
        if res > 1e-12:
            raise SystemExit(f"t-design t={t} did not converge")
        write(out / f"tdesign_t{t}.txt", p, [f"spherical {t}-design, {n} points", f"max |sum_j Y_lk(x_j)| = {res:.1e}"])
    write(out / "coulomb_m100.txt", coulomb(100), ["approximate Coulomb energy minimiser, 100 points"])


if __name__ == "__main__":
    main()
