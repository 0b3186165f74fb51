"""Pure-Python fixed-point kernels.

Every real argument is a Python int holding ``value * 2**prec``.  The
compiled twin in ``_ckernels.pyx`` implements the same functions with the
same integer semantics, so both backends return identical results.
"""

BACKEND = "python"


def hyper_series(z, prec, upper, lower, tol, max_terms, keep_terms=False):
    """Sum a hypergeometric-type series and its first two n-moments.

    The coefficient recurrence is ``c_{n+1}/c_n = prod(a_i + n) / (prod(b_j + n) * (n + 1))``
    with rational parameters given as ``(num, den)`` pairs.

    Returns ``(s0, s1, s2, nterms, terms)`` where ``s_k = sum n**k * c_n * z**n``
    and ``terms`` is the list of ``c_n z**n`` values when *keep_terms* is set.
    ``nterms`` is negative when *max_terms* was hit before convergence.
    """
    up_p = [p for p, _ in upper]
    up_q = [q for _, q in upper]
    lo_p = [p for p, _ in lower]
    lo_q = [q for _, q in lower]
    qnum = 1
    for q in lo_q:
        qnum *= q
    qden = 1
    for q in up_q:
        qden *= q
    t = 1 << prec
    s0 = s1 = s2 = 0
    terms = [] if keep_terms else None
    prev = None
    n = 0
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
        for i in range(len(up_p)):
            num *= up_p[i] + n * up_q[i]
        den = qden * (n + 1)
        for i in range(len(lo_p)):
            den *= lo_p[i] + n * lo_q[i]
        t = ((t * z) >> prec) * num
        if den < 0:
            t, den = -t, -den
        t //= den
        n += 1


def theta_sums(q, prec, tol):
    """Return ``(sum_{n>=1} q^{n^2}, sum_{n>=0} q^{n(n+1)}, sum_{n>=1} (-1)^n q^{n^2}, nterms)``."""
    one = 1 << prec
    q2 = (q * q) >> prec
    a = q  # q^{n^2} at n = 1
    step_a = (q2 * q) >> prec  # q^{2n+1} at n = 1
    b = one  # q^{n(n+1)} at n = 0
    step_b = q2  # q^{2n+2} at n = 0
    s3 = 0
    s4 = 0
    s2 = 0
    n = 1
    while a >= tol:
        s3 += a
        s4 += -a if n & 1 else a
        a = (a * step_a) >> prec
        step_a = (step_a * q2) >> prec
        n += 1
    m = 0
    while b >= tol:
        s2 += b
        b = (b * step_b) >> prec
        step_b = (step_b * q2) >> prec
        m += 1
    return s3, s2, s4, max(n, m)


def lambert_sums(q, prec, tol):
    """Return ``(sum n f_n, sum n^3 f_n, sum n^5 f_n, nterms)`` with ``f_n = q^n/(1-q^n)``.

    *q* may be negative; ``|q| < 1`` is the caller's responsibility.
    """
    one = 1 << prec
    qn = q
    s1 = s3 = s5 = 0
    n = 1
    while abs(qn) * n ** 5 >= tol:
        f = (qn << prec) // (one - qn)
        n2 = n * n
        s1 += n * f
        s3 += n2 * n * f
        s5 += n2 * n2 * n * f
        qn = (qn * q) >> prec
        n += 1
    return s1, s3, s5, n - 1


def euler_product(q, prec, tol):
    """Return ``(prod_{n>=1} (1 - q^n), nterms)`` truncated once ``q^n < tol``."""
    p = 1 << prec
    qn = q
    n = 0
    while abs(qn) >= tol:
        p -= (p * qn) >> prec
        qn = (qn * q) >> prec
        n += 1
    return p, n


def lll_reduce(basis, delta_num=99, delta_den=100):
    """Integral LLL reduction of the rows of *basis* (exact integer arithmetic).

    Returns a new list of reduced rows.  Rows must be linearly independent.
    """
    b = [list(row) for row in basis]
    n = len(b)
    if n <= 1:
        return b
    dim = len(b[0])

    def dot(u, v):
        s = 0
        for i in range(dim):
            s += u[i] * v[i]
        return s

    # 1-based bookkeeping: d[0] = 1, lam[k][j] for j < k
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * (n + 1) for _ in range(n + 1)]
    d[1] = dot(b[0], b[0])
    k = 2
    kmax = 1

    def red(k, l):
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

    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = dot(b[k - 1], b[j - 1])
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("lattice basis is linearly dependent")
                    d[k] = u
        red(k, k - 1)
        lkk = lam[k][k - 1]
        if delta_den * d[k] * d[k - 2] < delta_num * d[k - 1] * d[k - 1] - delta_den * lkk * lkk:
            # swap b_k and b_{k-1}
            b[k - 1], b[k - 2] = b[k - 2], b[k - 1]
            for j in range(1, k - 1):
                lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
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
                red(k, l)
            k += 1
    return b
