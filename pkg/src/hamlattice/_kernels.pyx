# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled box scans over the Picard lattice of X_k.

Same pruned depth-first search as ``_kernels_py.scan_box``; the explicit
stack replaces the recursion.
"""

DEF MAXK = 16


def scan_box(int k, int d_lo, int d_hi, int n_lo, int n_hi, long square, long chern):
    """Integer (d, n_1..n_k) in the box with d^2 - sum n^2 == square and
    3d - sum n == chern, sorted lexicographically."""
    cdef int n[MAXK]
    cdef long rem_s[MAXK + 1]
    cdef long rem_q[MAXK + 1]
    cdef int i, d, r
    cdef long big, s, q
    if k < 0 or k > MAXK:
        raise ValueError("k out of range")
    big = max(n_lo * n_lo, n_hi * n_hi)
    out = []
    for d in range(d_lo, d_hi + 1):
        rem_s[0] = 3 * <long>d - chern
        rem_q[0] = <long>d * d - square
        if k == 0:
            if rem_s[0] == 0 and rem_q[0] == 0:
                out.append((d,))
            continue
        i = 0
        n[0] = n_lo - 1
        while i >= 0:
            # advance position i to its next value, or backtrack
            n[i] += 1
            if n[i] > n_hi:
                i -= 1
                continue
            s = rem_s[i] - n[i]
            q = rem_q[i] - n[i] * n[i]
            r = k - i - 1
            if r == 0:
                if s == 0 and q == 0:
                    out.append((d,) + tuple([n[j] for j in range(k)]))
                continue
            if q < 0 or s < r * n_lo or s > r * n_hi or q > r * big or s * s > r * q:
                continue
            rem_s[i + 1] = s
            rem_q[i + 1] = q
            i += 1
            n[i] = n_lo - 1
    out.sort()
    return out
