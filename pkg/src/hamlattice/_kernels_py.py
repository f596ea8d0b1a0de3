"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``."""


def scan_box(k, d_lo, d_hi, n_lo, n_hi, square, chern):
    """All integer vectors (d, n_1..n_k) in the box with

        d*d - sum(n_i^2) == square  and  3*d - sum(n_i) == chern,

    i.e. classes d L - sum n_i E_i with prescribed self-intersection and c1.
    Results are sorted lexicographically.
    """
    out = []
    big = max(n_lo * n_lo, n_hi * n_hi)
    n = [0] * k

    def rec(i, rem_s, rem_q, d):
        r = k - i
        if r == 0:
            if rem_s == 0 and rem_q == 0:
                out.append((d, *n))
            return
        # prune: remaining sum and sum of squares must be reachable
        if rem_q < 0 or rem_s < r * n_lo or rem_s > r * n_hi or rem_q > r * big:
            return
        if rem_s * rem_s > r * rem_q:
            return
        for v in range(n_lo, n_hi + 1):
            n[i] = v
            rec(i + 1, rem_s - v, rem_q - v * v, d)

    for d in range(d_lo, d_hi + 1):
        rec(0, 3 * d - chern, d * d - square, d)
    out.sort()
    return out
