"""Pure numpy implementations of the hot kernels.

Every function here has a twin in ``_kernels.pyx``. The per-vertex edge sums
match bit for bit: edges are visited in storage order, with separate
accumulators for the ``i`` and ``j`` endpoints. ``enumerate_cuts`` and
``median_stats`` reduce in a different order and agree exactly only when the
weights and iterates are integers (the p = 1 regime).
"""

import numpy as np


def order_sums(ei, ej, w, key, n):
    """u_i = sum_j w_ij * sign(key_i - key_j) for a strict order ``key``."""
    up = key[ei] > key[ej]
    sw = np.where(up, w, -w)
    return np.bincount(ei, weights=sw, minlength=n) - np.bincount(ej, weights=sw, minlength=n)


def tie_split(ei, ej, w, x, n):
    """Return (p, q) where q sums tied-neighbour weights and p the signed rest."""
    xi = x[ei]
    xj = x[ej]
    tied = xi == xj
    wt = np.where(tied, w, 0.0)
    sw = np.where(tied, 0.0, np.where(xi > xj, w, -w))
    p = np.bincount(ei, weights=sw, minlength=n) - np.bincount(ej, weights=sw, minlength=n)
    q = np.bincount(ei, weights=wt, minlength=n) + np.bincount(ej, weights=wt, minlength=n)
    return p, q


def flip_gain(ei, ej, w, x, n):
    """Change of sum w_ij|x_i - x_j| when the sign of x_i alone is flipped."""
    xi = x[ei]
    xj = x[ej]
    gi = w * (np.abs(-xi - xj) - np.abs(xi - xj))
    gj = w * (np.abs(xi + xj) - np.abs(xi - xj))
    return np.bincount(ei, weights=gi, minlength=n) + np.bincount(ej, weights=gj, minlength=n)


def adjacency_matvec(ei, ej, w, x, n):
    """(W x)_i for the symmetric weight matrix W."""
    return np.bincount(ei, weights=w * x[ej], minlength=n) + np.bincount(
        ej, weights=w * x[ei], minlength=n
    )


_CHUNK_BITS = 14


def enumerate_cuts(ei, ej, w, d, n, objective):
    """Exhaustive search over cuts with vertex 0 fixed in S.

    Returns ``(mask, cut, denominator)`` of the best ratio, ties going to the
    smallest mask. Bit ``k`` of ``mask`` puts vertex ``k + 1`` into S.
    ``objective`` is 0 for the anti-Cheeger ratio and 1 for maxcut.
    """
    total = 1 << (n - 1)
    vol = float(d.sum())
    best_mask = 0
    best_cut = 0.0
    best_den = 1.0
    shifts = np.arange(n - 1, dtype=np.int64)
    step = 1 << min(_CHUNK_BITS, n - 1)
    for start in range(0, total, step):
        masks = np.arange(start, min(start + step, total), dtype=np.int64)
        inside = np.ones((masks.size, n), dtype=bool)
        inside[:, 1:] = ((masks[:, None] >> shifts) & 1).astype(bool)
        crossing = inside[:, ei] != inside[:, ej]
        cut = crossing.astype(np.float64) @ w
        if objective == 0:
            vs = inside.astype(np.float64) @ d
            den = np.maximum(vs, vol - vs)
        else:
            den = np.full(masks.size, 0.5 * vol)
        # cross-multiplied comparison keeps integer-weight ties exact
        for k in np.flatnonzero(cut * best_den > best_cut * den):
            if cut[k] * best_den > best_cut * den[k]:
                best_mask, best_cut, best_den = int(masks[k]), float(cut[k]), float(den[k])
    return best_mask, best_cut, best_den


def median_stats(x, d):
    """(lo, hi, A, B, N) for the degree-weighted median interval [lo, hi]."""
    order = np.argsort(x, kind="stable")
    xs = x[order]
    change = np.empty(xs.size, dtype=bool)
    change[0] = True
    np.not_equal(xs[1:], xs[:-1], out=change[1:])
    starts = np.flatnonzero(change)
    mass = np.add.reduceat(d[order], starts)
    cum = np.cumsum(mass)
    vol = cum[-1]
    lo = float(xs[starts[int(np.argmax(2.0 * cum >= vol))]])
    hi = float(xs[starts[np.flatnonzero(2.0 * (cum - mass) <= vol)[-1]]])
    lt = x < lo
    gt = x > lo
    A = float(d[lt].sum() - d[gt].sum())
    B = float(d[~(lt | gt)].sum())
    N = float(np.dot(d, np.abs(x - lo)))
    return lo, hi, A, B, N


def boundary_indicator(x, p, q, d, m, alpha, A, B, r, joint):
    """(a, b): the median part a of v and the indicator b on the boundary.

    Off the median class a = d sign(x - alpha). On it a = (A / B) d, or with
    ``joint`` and at least two members, the interval endpoint favoured by
    the position of x_i. Then b = t -/+ q on S^+/S^- and t + sign(t) q
    elsewhere, with t = p + r a.
    """
    at = x == alpha
    joint = joint and np.count_nonzero(at) > 1
    if joint:
        aL = np.maximum(A - B + d, -d)
        aR = np.minimum(A + B - d, d)
        pick = np.where(np.abs(p + r * aL) > np.abs(p + r * aR), aL, aR)
        on = np.where(x == m, aL, np.where(x == -m, aR, pick))
    else:
        on = (A / B) * d if B != 0.0 else np.zeros_like(d)
    a = np.where(x > alpha, d, np.where(x < alpha, -d, on))
    t = p + r * a
    b = np.where(x == m, t - q, np.where(x == -m, t + q, np.where(t >= 0, t + q, t - q)))
    return a, b
