"""Hot numeric kernels, in two interchangeable lanes.

Every kernel exists as ``_<name>_loops`` (plain scalar loops, jitted by
numba when the lane is active) and ``_<name>_numpy`` (vectorized).  The
module-level names without underscore prefix are the dispatched
implementations.  Loop kernels use Kahan compensation where a long
summation feeds a tolerance check; the numpy lane relies on numpy's
pairwise summation, which meets the same tolerances.

Integer safety: all kernels assume the modulus is below 2^26, so every
intermediate product fits in int64.  Callers enforce the guards.
"""

import math

import numpy as np

from ._accel import NUMBA_ENABLED, njit

ACTIVE_LANE = "numba" if NUMBA_ENABLED else "numpy"


# -- unit inverse tables ------------------------------------------------------

def _inverse_table_loops(q, p):
    """inv[x] = x^-1 mod q for units x (q = p^n), 0 at multiples of p."""
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        if x % p == 0:
            continue
        r0, r1 = q, x
        t0, t1 = 0, 1
        while r1 != 0:
            k = r0 // r1
            r0, r1 = r1, r0 - k * r1
            t0, t1 = t1, t0 - k * t1
        inv[x] = t0 % q
    return inv


def _inverse_table_numpy(q, p):
    x = np.arange(q, dtype=np.int64)
    unit = (x % p) != 0
    unit[0] = False
    # Euler: x^(phi-1) = x^-1 for units; square-and-multiply on the array
    e = (q // p) * (p - 1) - 1
    result = np.ones(q, dtype=np.int64)
    base = x.copy()
    while e > 0:
        if e & 1:
            result = (result * base) % q
        base = (base * base) % q
        e >>= 1
    result[~unit] = 0
    return result


# -- exponential-sum rows -----------------------------------------------------

def _exp_sum_row_loops(q, units, scaled, cos_t, sin_t):
    """row[c] = sum over units x of e_q(A*inv(x) + c*x).

    ``scaled`` holds (A * inv(x)) % q aligned with ``units``; the caller
    fixes A.  Returns (real row, max |imaginary part| across entries).
    """
    row = np.empty(q, dtype=np.float64)
    max_im = 0.0
    m = units.shape[0]
    for c in range(q):
        s_re = 0.0
        comp_re = 0.0
        s_im = 0.0
        comp_im = 0.0
        for i in range(m):
            t = (scaled[i] + c * units[i]) % q
            y = cos_t[t] - comp_re
            tt = s_re + y
            comp_re = (tt - s_re) - y
            s_re = tt
            y = sin_t[t] - comp_im
            tt = s_im + y
            comp_im = (tt - s_im) - y
            s_im = tt
        row[c] = s_re
        a_im = abs(s_im)
        if a_im > max_im:
            max_im = a_im
    return row, max_im


def _exp_sum_row_numpy(q, units, scaled, cos_t, sin_t):
    row = np.empty(q, dtype=np.float64)
    max_im = 0.0
    m = max(int(units.shape[0]), 1)
    block = max(1, (1 << 22) // m)
    for start in range(0, q, block):
        cs = np.arange(start, min(start + block, q), dtype=np.int64)
        idx = (scaled[None, :] + cs[:, None] * units[None, :]) % q
        row[start:start + cs.size] = cos_t[idx].sum(axis=1)
        im_part = np.abs(sin_t[idx].sum(axis=1))
        if im_part.size:
            max_im = max(max_im, float(im_part.max()))
    return row, max_im


# -- single-point brute sum ---------------------------------------------------

def _kl_point_brute_loops(a, b, q, p):
    """Kahan-compensated sum of e_q(a*inv(x) + b*x) over units, ascending x."""
    s_re = 0.0
    comp_re = 0.0
    s_im = 0.0
    comp_im = 0.0
    tau = 2.0 * math.pi / q
    for x in range(1, q):
        if x % p == 0:
            continue
        r0, r1 = q, x
        t0, t1 = 0, 1
        while r1 != 0:
            k = r0 // r1
            r0, r1 = r1, r0 - k * r1
            t0, t1 = t1, t0 - k * t1
        xinv = t0 % q
        t = (a * xinv + b * x) % q
        ang = tau * t
        y = math.cos(ang) - comp_re
        tt = s_re + y
        comp_re = (tt - s_re) - y
        s_re = tt
        y = math.sin(ang) - comp_im
        tt = s_im + y
        comp_im = (tt - s_im) - y
        s_im = tt
    return s_re, s_im


def _kl_point_brute_numpy(a, b, q, p):
    re = 0.0
    im = 0.0
    e = (q // p) * (p - 1) - 1
    block = 1 << 20
    for start in range(1, q, block):
        x = np.arange(start, min(start + block, q), dtype=np.int64)
        x = x[(x % p) != 0]
        inv = np.ones_like(x)
        base = x.copy()
        ee = e
        while ee > 0:
            if ee & 1:
                inv = (inv * base) % q
            base = (base * base) % q
            ee >>= 1
        t = (a * inv + b * x) % q
        ang = (2.0 * np.pi / q) * t
        re += float(np.cos(ang).sum())
        im += float(np.sin(ang).sum())
    return re, im


# -- divisor-count sieve ------------------------------------------------------

def _tau_sieve_loops(limit):
    """Divisor counts tau(1..limit) by marking (d, n/d) pairs up to sqrt."""
    values = np.zeros(limit + 1, dtype=np.uint32)
    d = 1
    while d * d <= limit:
        values[d * d] += 1
        m = d * d + d
        while m <= limit:
            values[m] += 2
            m += d
        d += 1
    return values


def _tau_sieve_numpy(limit):
    values = np.zeros(limit + 1, dtype=np.uint32)
    d = 1
    while d * d <= limit:
        values[d * d] += 1
        values[d * d + d::d] += 2
        d += 1
    return values


# -- exhaustive pair deviation scan -------------------------------------------

def _pair_scan_loops(row_a, row_b, q, p):
    """max over unit a and all b of |row_a[(a*b)%q] - row_b[(a*b)%q]|."""
    worst = 0.0
    for a in range(1, q):
        if a % p == 0:
            continue
        for b in range(q):
            c = (a * b) % q
            d = abs(row_a[c] - row_b[c])
            if d > worst:
                worst = d
    return worst


def _pair_scan_numpy(row_a, row_b, q, p):
    diff = np.abs(row_a - row_b)
    bs = np.arange(q, dtype=np.int64)
    worst = 0.0
    for a in range(1, q):
        if a % p == 0:
            continue
        worst = max(worst, float(diff[(a * bs) % q].max()))
    return worst


# -- parity of subset-sum profiles ---------------------------------------------

def _parity_scan_loops(p, L, H):
    """Count tuples whose mod-p subset-sum profile is all-even yet no h_j is divisible by p."""
    side = 2 * H
    total = 1
    for _ in range(L):
        total *= side
    counts = np.zeros(p, dtype=np.int64)
    hs = np.zeros(L, dtype=np.int64)
    bad = 0
    for t in range(total):
        r = t
        divisible = False
        for j in range(L):
            d = r % side
            r //= side
            h = d - H
            if h >= 0:
                h += 1
            hs[j] = h
            if h % p == 0:
                divisible = True
        for i in range(p):
            counts[i] = 0
        for mask in range(1 << L):
            s = 0
            for j in range(L):
                if (mask >> j) & 1:
                    s += hs[j]
            counts[s % p] += 1
        all_even = True
        for i in range(p):
            if counts[i] & 1:
                all_even = False
                break
        if all_even and not divisible:
            bad += 1
    return bad


def _parity_scan_numpy(p, L, H):
    side = 2 * H
    total = side ** L
    subset = ((np.arange(1 << L)[:, None] >> np.arange(L)[None, :]) & 1).astype(np.int64)
    chunk = max(1, (1 << 21) // (1 << L))
    bad = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = np.empty((idx.size, L), dtype=np.int64)
        r = idx.copy()
        for j in range(L):
            digits[:, j] = r % side
            r //= side
        h = digits - H
        h[h >= 0] += 1
        sums = (h @ subset.T) % p
        all_even = np.ones(idx.size, dtype=bool)
        for res in range(p):
            all_even &= ((sums == res).sum(axis=1) & 1) == 0
        no_div = ((h % p) != 0).all(axis=1)
        bad += int((all_even & no_div).sum())
    return bad


# -- near-collision enumeration -------------------------------------------------

def _near_collision_loops(bounds, p, v_min, reverse):
    """Count tuples h (1 <= |h_j| <= bounds[j]) owning a pair of distinct
    subset sums whose difference has p-adic valuation >= v_min.

    ``reverse`` flips the enumeration order; both orders must agree.
    """
    L = bounds.shape[0]
    n_subsets = 1 << L
    sides = np.empty(L, dtype=np.int64)
    total = 1
    for j in range(L):
        sides[j] = 2 * bounds[j]
        total *= sides[j]
    sums = np.zeros(n_subsets, dtype=np.int64)
    hs = np.zeros(L, dtype=np.int64)
    cnt = 0
    for t in range(total):
        tt = total - 1 - t if reverse else t
        r = tt
        for j in range(L):
            d = r % sides[j]
            r //= sides[j]
            h = d - bounds[j]
            if h >= 0:
                h += 1
            hs[j] = h
        for mask in range(n_subsets):
            s = 0
            for j in range(L):
                if (mask >> j) & 1:
                    s += hs[j]
            sums[mask] = s
        hit = False
        for i in range(n_subsets):
            if hit:
                break
            for jj in range(i + 1, n_subsets):
                d = sums[i] - sums[jj]
                if d == 0:
                    continue
                if d < 0:
                    d = -d
                v = 0
                while d % p == 0:
                    d //= p
                    v += 1
                if v >= v_min:
                    hit = True
                    break
        if hit:
            cnt += 1
    return cnt


def _near_collision_numpy(bounds, p, v_min, reverse):
    L = int(bounds.shape[0])
    n_subsets = 1 << L
    sides = 2 * bounds
    total = int(np.prod(sides))
    subset = ((np.arange(n_subsets)[:, None] >> np.arange(L)[None, :]) & 1).astype(np.int64)
    chunk = max(1, (1 << 20) // n_subsets)
    cnt = 0
    order = np.arange(total, dtype=np.int64)
    if reverse:
        order = order[::-1]
    for start in range(0, total, chunk):
        idx = order[start:start + chunk]
        digits = np.empty((idx.size, L), dtype=np.int64)
        r = idx.copy()
        for j in range(L):
            digits[:, j] = r % sides[j]
            r //= sides[j]
        h = digits - bounds
        h[h >= 0] += 1
        sums = h @ subset.T
        hit = np.zeros(idx.size, dtype=bool)
        for i in range(n_subsets):
            for jj in range(i + 1, n_subsets):
                d = np.abs(sums[:, i] - sums[:, jj])
                v = np.zeros(idx.size, dtype=np.int64)
                live = d != 0
                dd = d.copy()
                while True:
                    div = live & (dd % p == 0)
                    if not div.any():
                        break
                    dd[div] //= p
                    v[div] += 1
                hit |= live & (v >= v_min)
        cnt += int(hit.sum())
    return cnt


# -- table builders (vectorized in both lanes) ---------------------------------

def legendre_table(p):
    """t[x] = quadratic character of x mod p as int8 (0 at x = 0)."""
    t = np.full(p, -1, dtype=np.int8)
    t[0] = 0
    x = np.arange(1, p, dtype=np.int64)
    t[(x * x) % p] = 1
    return t


def sqrt_table(q, p):
    """Canonical square roots of the unit squares mod q = p^n.

    tbl[r] is the root whose base-p residue is <= (p-1)/2, or 0 when r is
    not a unit square.  Requires q < 2^26 so squares stay in int64.
    """
    x = np.arange(q, dtype=np.int64)
    res = x % p
    canon = (res != 0) & (res <= (p - 1) // 2)
    xs = x[canon]
    tbl = np.zeros(q, dtype=np.int64)
    tbl[(xs * xs) % q] = xs
    return tbl


def circle_tables(q):
    """cos/sin of 2*pi*t/q for t = 0..q-1."""
    ang = (2.0 * np.pi / q) * np.arange(q, dtype=np.float64)
    return np.cos(ang), np.sin(ang)


# -- lane dispatch --------------------------------------------------------------

if NUMBA_ENABLED:
    _jit = njit(cache=True, nogil=True)
    inverse_table = _jit(_inverse_table_loops)
    exp_sum_row = _jit(_exp_sum_row_loops)
    kl_point_brute = _jit(_kl_point_brute_loops)
    tau_sieve_values = _jit(_tau_sieve_loops)
    pair_scan_max_dev = _jit(_pair_scan_loops)
    parity_scan = _jit(_parity_scan_loops)
    near_collision_scan = _jit(_near_collision_loops)
else:
    inverse_table = _inverse_table_numpy
    exp_sum_row = _exp_sum_row_numpy
    kl_point_brute = _kl_point_brute_numpy
    tau_sieve_values = _tau_sieve_numpy
    pair_scan_max_dev = _pair_scan_numpy
    parity_scan = _parity_scan_numpy
    near_collision_scan = _near_collision_numpy
