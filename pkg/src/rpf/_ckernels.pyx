# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled fixed-point kernels.

Same contracts and integer semantics as ``_kernels_py``; only loop counters
and small parameter products are C-typed.  Big values stay Python ints.
"""

BACKEND = "cython"


def hyper_series(object z, Py_ssize_t prec, upper, lower, object tol,
                 Py_ssize_t max_terms, bint keep_terms=False):
    cdef Py_ssize_t nu = len(upper), nl = len(lower), i, n = 0
    cdef list up_p = [p for p, _ in upper]
    cdef list up_q = [q for _, q in upper]
    cdef list lo_p = [p for p, _ in lower]
    cdef list lo_q = [q for _, q in lower]
    cdef object qnum = 1, qden = 1, num, den, at, prev = None
    cdef object t = (<object>1) << prec
    cdef object s0 = 0, s1 = 0, s2 = 0
    cdef list terms = [] if keep_terms else None
    for i in range(nl):
        qnum *= lo_q[i]
    for i in range(nu):
        qden *= up_q[i]
    while True:
        if n >= max_terms:
            return s0, s1, s2, -n, terms
        at = abs(t)
        # the first term below tol (once terms decrease) is dropped, not added
        if t == 0 or (at < tol and (prev is None or at <= prev)):
            return s0, s1, s2, n, terms
        s0 += t
        s1 += n * t
        s2 += n * n * t
        if keep_terms:
            terms.append(t)
        prev = at
        num = qnum
        for i in range(nu):
            num *= up_p[i] + n * up_q[i]
        den = qden * (n + 1)
        for i in range(nl):
            den *= lo_p[i] + n * lo_q[i]
        t = ((t * z) >> prec) * num
        if den < 0:
            t = -t
            den = -den
        t //= den
        n += 1


def theta_sums(object q, Py_ssize_t prec, object tol):
    cdef object one = (<object>1) << prec
    cdef object q2 = (q * q) >> prec
    cdef object a = q, step_a = (q2 * q) >> prec
    cdef object b = one, step_b = q2
    cdef object s3 = 0, s4 = 0, s2 = 0
    cdef Py_ssize_t n = 1, m = 0
    while a >= tol:
        s3 += a
        if n & 1:
            s4 -= a
        else:
            s4 += a
        a = (a * step_a) >> prec
        step_a = (step_a * q2) >> prec
        n += 1
    while b >= tol:
        s2 += b
        b = (b * step_b) >> prec
        step_b = (step_b * q2) >> prec
        m += 1
    return s3, s2, s4, max(n, m)


def lambert_sums(object q, Py_ssize_t prec, object tol):
    cdef object one = (<object>1) << prec
    cdef object qn = q, f, s1 = 0, s3 = 0, s5 = 0
    cdef object n = 1, n2
    while abs(qn) * n ** 5 >= tol:
        f = (qn << prec) // (one - qn)
        n2 = n * n
        s1 += n * f
        s3 += n2 * n * f
        s5 += n2 * n2 * n * f
        qn = (qn * q) >> prec
        n += 1
    return s1, s3, s5, n - 1


def euler_product(object q, Py_ssize_t prec, object tol):
    cdef object p = (<object>1) << prec
    cdef object qn = q
    cdef Py_ssize_t n = 0
    while abs(qn) >= tol:
        p -= (p * qn) >> prec
        qn = (qn * q) >> prec
        n += 1
    return p, n


cdef object _dot(list u, list v, Py_ssize_t dim):
    cdef object s = 0
    cdef Py_ssize_t i
    for i in range(dim):
        s += u[i] * v[i]
    return s


def lll_reduce(basis, object delta_num=99, object delta_den=100):
    cdef list b = [list(row) for row in basis]
    cdef Py_ssize_t n = len(b), dim, k, kmax, j, i, l
    if n <= 1:
        return b
    dim = len(b[0])
    cdef list d = [0] * (n + 1)
    cdef list lam = [[0] * (n + 1) for _ in range(n + 1)]
    cdef list bk, bl, lk, ll, tmp
    cdef object u, dl, lkl, qq, lkk, lm, bb, t
    d[0] = 1
    d[1] = _dot(b[0], b[0], dim)
    k = 2
    kmax = 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = _dot(b[k - 1], b[j - 1], dim)
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("lattice basis is linearly dependent")
                    d[k] = u
        # size-reduce b_k against b_{k-1}
        l = k - 1
        dl = d[l]
        lkl = lam[k][l]
        if 2 * abs(lkl) > dl:
            qq = (2 * lkl + dl) // (2 * dl)
            bk = b[k - 1]
            bl = b[l - 1]
            for i in range(dim):
                bk[i] -= qq * bl[i]
            lam[k][l] = lkl - qq * dl
            lk = lam[k]
            ll = lam[l]
            for i in range(1, l):
                lk[i] -= qq * ll[i]
        lkk = lam[k][k - 1]
        if delta_den * d[k] * d[k - 2] < delta_num * d[k - 1] * d[k - 1] - delta_den * lkk * lkk:
            tmp = b[k - 1]
            b[k - 1] = b[k - 2]
            b[k - 2] = tmp
            for j in range(1, k - 1):
                t = lam[k][j]
                lam[k][j] = lam[k - 1][j]
                lam[k - 1][j] = t
            lm = lkk
            bb = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
            for i in range(k + 1, kmax + 1):
                t = lam[i][k]
                lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
                lam[i][k - 1] = (bb * t + lm * lam[i][k]) // d[k]
            d[k - 1] = bb
            if k > 2:
                k -= 1
        else:
            for l in range(k - 2, 0, -1):
                dl = d[l]
                lkl = lam[k][l]
                if 2 * abs(lkl) > dl:
                    qq = (2 * lkl + dl) // (2 * dl)
                    bk = b[k - 1]
                    bl = b[l - 1]
                    for i in range(dim):
                        bk[i] -= qq * bl[i]
                    lam[k][l] = lkl - qq * dl
                    lk = lam[k]
                    ll = lam[l]
                    for i in range(1, l):
                        lk[i] -= qq * ll[i]
            k += 1
    return b
