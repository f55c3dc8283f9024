"""Numeric hot loops with two interchangeable backends.

The default backend compiles the scalar loops with numba; setting the
environment variable APNSURF_BACKEND=numpy forces the vectorized numpy
fallback (APNSURF_BACKEND=numba insists on numba and fails loudly when it
is unavailable).  Both backends produce identical outputs; the benchmark
script under benchmarks/ times one against the other.

All kernels take the padded antilog/log tables produced by Field.tables(),
in which log[0] is a sentinel index whose antilog reads as zero.
"""

import os

import numpy as np

_choice = os.environ.get("APNSURF_BACKEND", "auto").lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"APNSURF_BACKEND must be auto, numba or numpy, not {_choice!r}")

_numba = None
if _choice in ("auto", "numba"):
    try:
        import numba as _numba
    except ImportError:
        if _choice == "numba":
            raise RuntimeError("APNSURF_BACKEND=numba but numba is not importable")
        _numba = None

BACKEND = "numba" if _numba is not None else "numpy"


def _parity_table(q):
    xs = np.arange(q, dtype=np.int64)
    p = np.zeros(q, dtype=np.uint8)
    while xs.max(initial=0) > 0:
        p ^= (xs & 1).astype(np.uint8)
        xs >>= 1
    return p


def power_table(field, e):
    """x^e for every field element x, as an int64 array."""
    q = field.q
    xs = np.arange(q, dtype=np.int64)
    if e == 0:
        return np.ones(q, dtype=np.int64)
    if q == 2:
        return xs
    ext, log, _ = field.tables()
    out = ext[(log[xs] * e) % (q - 1)].copy()
    out[0] = 0
    return out


def value_table(field, terms):
    """Evaluate sum of c*x^e over all x; terms is a list of (e, c)."""
    q = field.q
    acc = np.zeros(q, dtype=np.int64)
    for e, c in terms:
        if c == 0:
            continue
        pt = power_table(field, e)
        acc ^= field.mul_vec(np.full(q, c, dtype=np.int64), pt)
    return acc


# ------------------------------------------------------------- scalar loops
# Written once in plain Python; compiled with numba when that backend is on.

def _spectrum_hist_py(table, q):
    hist = np.zeros(q + 1, dtype=np.int64)
    counts = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        for b in range(q):
            counts[b] = 0
        for x in range(q):
            counts[table[x ^ a] ^ table[x]] += 1
        for b in range(q):
            hist[counts[b]] += 1
    return hist


def _is_apn_py(table, q):
    counts = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        for b in range(q):
            counts[b] = 0
        for x in range(q):
            bb = table[x ^ a] ^ table[x]
            c = counts[bb] + 1
            counts[bb] = c
            if c >= 4:
                return False
    return True


def _walsh_hist_py(pmf_perm, par, q):
    hist = np.zeros(2 * q + 1, dtype=np.int64)
    t = np.zeros(q, dtype=np.int64)
    for b in range(1, q):
        for u in range(q):
            t[u] = 1 - 2 * par[pmf_perm[u] & b]
        h = 1
        while h < q:
            for i in range(0, q, 2 * h):
                for j in range(i, i + h):
                    x = t[j]
                    y = t[j + h]
                    t[j] = x + y
                    t[j + h] = x - y
            h *= 2
        for u in range(q):
            hist[t[u] + q] += 1
    return hist


def _count_affine_py(cube, ext, log, q):
    d1 = cube.shape[0]
    total = 0
    on_locus = 0
    bmat = np.zeros((d1, d1), dtype=np.int64)
    avec = np.zeros(d1, dtype=np.int64)
    pw = np.zeros(d1, dtype=np.int64)
    for x0 in range(q):
        pw[0] = 1
        for i in range(1, d1):
            pw[i] = ext[log[pw[i - 1]] + log[x0]]
        for j in range(d1):
            for k in range(d1):
                acc = 0
                for i in range(d1):
                    v = cube[i, j, k]
                    if v:
                        acc ^= ext[log[v] + log[pw[i]]]
                bmat[j, k] = acc
        for x1 in range(q):
            pw[0] = 1
            for j in range(1, d1):
                pw[j] = ext[log[pw[j - 1]] + log[x1]]
            for k in range(d1):
                acc = 0
                for j in range(d1):
                    v = bmat[j, k]
                    if v:
                        acc ^= ext[log[v] + log[pw[j]]]
                avec[k] = acc
            for x2 in range(q):
                acc = 0
                for k in range(d1 - 1, -1, -1):
                    acc = ext[log[acc] + log[x2]] ^ avec[k]
                if acc == 0:
                    total += 1
                    if x0 == x1 or x1 == x2 or x0 == x2:
                        on_locus += 1
    return total, on_locus


def _scan_py(fixed_table, mono_tables, q, nfree, start, stop, ext, log,
             hits_out):
    cap = hits_out.shape[0]
    nh = 0
    table = np.zeros(q, dtype=np.int64)
    counts = np.zeros(q, dtype=np.int64)
    for cand in range(start, stop):
        t = cand
        for x in range(q):
            table[x] = fixed_table[x]
        for j in range(nfree):
            digit = t % q
            t //= q
            if digit:
                lg = log[digit]
                for x in range(q):
                    mv = mono_tables[j, x]
                    if mv:
                        table[x] ^= ext[lg + log[mv]]
        ok = True
        for a in range(1, q):
            for b in range(q):
                counts[b] = 0
            for x in range(q):
                bb = table[x ^ a] ^ table[x]
                c = counts[bb] + 1
                counts[bb] = c
                if c >= 4:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            if nh < cap:
                hits_out[nh] = cand
            nh += 1
    return nh


if BACKEND == "numba":
    _jit = _numba.njit(cache=True, nogil=True)
    _spectrum_hist_fast = _jit(_spectrum_hist_py)
    _is_apn_fast = _jit(_is_apn_py)
    _walsh_hist_fast = _jit(_walsh_hist_py)
    _count_affine_fast = _jit(_count_affine_py)
    _scan_fast = _jit(_scan_py)


# ------------------------------------------------------------ numpy variants

def _spectrum_hist_np(table, q):
    hist = np.zeros(q + 1, dtype=np.int64)
    xs = np.arange(q, dtype=np.int64)
    for a in range(1, q):
        diffs = table[xs ^ a] ^ table
        counts = np.bincount(diffs, minlength=q)
        hist += np.bincount(counts, minlength=q + 1)
    return hist


def _is_apn_np(table, q):
    xs = np.arange(q, dtype=np.int64)
    for a in range(1, q):
        diffs = table[xs ^ a] ^ table
        if np.bincount(diffs, minlength=q).max() >= 4:
            return False
    return True


def _walsh_hist_np(pmf_perm, par, q):
    hist = np.zeros(2 * q + 1, dtype=np.int64)
    chunk = max(1, (1 << 22) // q)
    bs = np.arange(1, q, dtype=np.int64)
    for lo in range(0, q - 1, chunk):
        blk = bs[lo:lo + chunk]
        t = 1 - 2 * par[pmf_perm[None, :] & blk[:, None]].astype(np.int64)
        h = 1
        while h < q:
            t = t.reshape(t.shape[0], -1, 2, h)
            a = t[:, :, 0, :].copy()
            b = t[:, :, 1, :].copy()
            t[:, :, 0, :] = a + b
            t[:, :, 1, :] = a - b
            t = t.reshape(blk.shape[0], q)
            h *= 2
        hist += np.bincount((t + q).ravel(), minlength=2 * q + 1)
    return hist


def _count_affine_np(cube, ext, log, q):
    d1 = cube.shape[0]
    total = 0
    on_locus = 0
    xs = np.arange(q, dtype=np.int64)
    # x^j power columns for every element, once
    powcols = np.zeros((q, d1), dtype=np.int64)
    powcols[:, 0] = 1
    for j in range(1, d1):
        powcols[:, j] = ext[log[powcols[:, j - 1]] + log[xs]]
    for x0 in range(q):
        pw0 = powcols[x0]
        bmat = np.zeros((d1, d1), dtype=np.int64)
        for i in range(d1):
            if pw0[i] or i == 0:
                row = ext[log[cube[i]] + log[pw0[i]]]
                bmat ^= row
        for x1 in range(q):
            pw1 = powcols[x1]
            avec = np.zeros(d1, dtype=np.int64)
            for j in range(d1):
                avec ^= ext[log[bmat[j]] + log[pw1[j]]]
            vals = np.zeros(q, dtype=np.int64)
            for k in range(d1):
                vals ^= ext[log[np.full(q, avec[k], dtype=np.int64)] +
                            log[powcols[:, k]]]
            zero = vals == 0
            total += int(zero.sum())
            if x0 == x1:
                on_locus += int(zero.sum())
            else:
                on_locus += int(zero[x0]) + int(zero[x1])
    return total, on_locus


def _scan_np(fixed_table, mono_tables, q, nfree, start, stop, ext, log,
             hits_out):
    cap = hits_out.shape[0]
    nh = 0
    xs = np.arange(q, dtype=np.int64)
    batch = max(1, (1 << 20) // q)
    for lo in range(start, stop, batch):
        hi = min(lo + batch, stop)
        cands = np.arange(lo, hi, dtype=np.int64)
        tables = np.broadcast_to(fixed_table, (hi - lo, q)).copy()
        t = cands.copy()
        for j in range(nfree):
            digits = t % q
            t //= q
            tables ^= ext[log[digits[:, None]] + log[mono_tables[j][None, :]]]
        alive = cands
        for a in range(1, q):
            if alive.shape[0] == 0:
                break
            diffs = tables[:, xs ^ a] ^ tables
            nrow = diffs.shape[0]
            offs = (np.arange(nrow, dtype=np.int64)[:, None] * q) + diffs
            counts = np.bincount(offs.ravel(), minlength=nrow * q)
            maxc = counts.reshape(nrow, q).max(axis=1)
            keep = maxc < 4
            alive = alive[keep]
            tables = tables[keep]
        for cand in alive:
            if nh < cap:
                hits_out[nh] = cand
            nh += 1
    return nh


# ---------------------------------------------------------------- dispatch

def spectrum_hist(table, q):
    """Histogram over solution counts: hist[c] = number of (a, b) pairs,
    a nonzero, whose derivative equation has exactly c solutions."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    if BACKEND == "numba":
        return _spectrum_hist_fast(table, q)
    return _spectrum_hist_np(table, q)


def is_apn_table(table, q):
    table = np.ascontiguousarray(table, dtype=np.int64)
    if BACKEND == "numba":
        return bool(_is_apn_fast(table, q))
    return bool(_is_apn_np(table, q))


def walsh_hist(pmf_perm, q):
    """Histogram of Walsh transform values over all (a, b != 0); index
    v + q holds the multiplicity of value v."""
    pmf_perm = np.ascontiguousarray(pmf_perm, dtype=np.int64)
    par = _parity_table(q).astype(np.int64)
    if BACKEND == "numba":
        return _walsh_hist_fast(pmf_perm, par, q)
    return _walsh_hist_np(pmf_perm, par, q)


def count_affine(cube, field):
    """Affine zero count of a trivariate polynomial given as a dense
    coefficient cube; returns (total, on_triple_locus)."""
    ext, log, _ = field.tables()
    cube = np.ascontiguousarray(cube, dtype=np.int64)
    if BACKEND == "numba":
        total, on_locus = _count_affine_fast(cube, ext, log, field.q)
    else:
        total, on_locus = _count_affine_np(cube, ext, log, field.q)
    return int(total), int(on_locus)


def scan_range(fixed_table, mono_tables, field, start, stop, cap=4096):
    """Scan candidate coefficient vectors in [start, stop); returns the
    array of surviving candidate indices (ascending) and the true count
    (which exceeds the array length if cap was too small)."""
    ext, log, _ = field.tables()
    fixed_table = np.ascontiguousarray(fixed_table, dtype=np.int64)
    mono_tables = np.ascontiguousarray(mono_tables, dtype=np.int64)
    hits = np.zeros(cap, dtype=np.int64)
    nfree = mono_tables.shape[0]
    if BACKEND == "numba":
        nh = int(_scan_fast(fixed_table, mono_tables, field.q, nfree,
                            start, stop, ext, log, hits))
    else:
        nh = int(_scan_np(fixed_table, mono_tables, field.q, nfree,
                          start, stop, ext, log, hits))
    return hits[:min(nh, cap)].copy(), nh
