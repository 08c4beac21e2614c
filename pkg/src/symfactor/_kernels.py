"""Compiled inner loops for the dense eigensolvers.

All kernels work on float64 arrays and never allocate more than a copy of
their input. Callers in :mod:`symfactor.linalg` do validation and sorting.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def jacobi_eigh(a, tol, max_sweeps):
    """Cyclic Jacobi on a symmetric matrix.

    Returns ``(diag, V, sweeps, off)``. ``sweeps == -1`` signals that
    ``max_sweeps`` was exhausted; ``off`` is then the remaining
    off-diagonal Frobenius norm.
    """
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    norm = 0.0
    for i in range(n):
        for j in range(n):
            norm += a[i, j] * a[i, j]
    target = tol * math.sqrt(norm)

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        off = math.sqrt(off)
        if off <= target:
            d = np.empty(n)
            for i in range(n):
                d[i] = a[i, i]
            return d, v, sweep, off
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq

    d = np.empty(n)
    for i in range(n):
        d[i] = a[i, i]
    return d, v, -1, off


@njit(cache=True)
def balance(a):
    """Similarity scaling by powers of two (exact in floating point)."""
    n = a.shape[0]
    a = a.copy()
    radix = 2.0
    sqrdx = radix * radix
    done = False
    while not done:
        done = True
        for i in range(n):
            r = 0.0
            c = 0.0
            for j in range(n):
                if j != i:
                    c += abs(a[j, i])
                    r += abs(a[i, j])
            if c != 0.0 and r != 0.0:
                g = r / radix
                f = 1.0
                s = c + r
                while c < g:
                    f *= radix
                    c *= sqrdx
                g = r * radix
                while c > g:
                    f /= radix
                    c /= sqrdx
                if (c + r) / f < 0.95 * s:
                    done = False
                    g = 1.0 / f
                    for j in range(n):
                        a[i, j] *= g
                    for j in range(n):
                        a[j, i] *= f
    return a


@njit(cache=True)
def hessenberg(a):
    """Householder reduction to upper Hessenberg form.

    Columns that are already zero below the subdiagonal are left untouched,
    so triangular input passes through bit-for-bit.
    """
    n = a.shape[0]
    h = a.copy()
    for k in range(n - 2):
        tail = 0.0
        for i in range(k + 2, n):
            tail += h[i, k] * h[i, k]
        if tail == 0.0:
            continue
        x0 = h[k + 1, k]
        xnorm = math.sqrt(tail + x0 * x0)
        alpha = -xnorm if x0 >= 0.0 else xnorm
        m = n - k - 1
        v = np.empty(m)
        v[0] = x0 - alpha
        for i in range(1, m):
            v[i] = h[k + 1 + i, k]
        vnorm = math.sqrt(v[0] * v[0] + tail)
        for i in range(m):
            v[i] /= vnorm
        for j in range(k, n):
            dot = 0.0
            for i in range(m):
                dot += v[i] * h[k + 1 + i, j]
            for i in range(m):
                h[k + 1 + i, j] -= 2.0 * dot * v[i]
        for i in range(n):
            dot = 0.0
            for j in range(m):
                dot += h[i, k + 1 + j] * v[j]
            for j in range(m):
                h[i, k + 1 + j] -= 2.0 * dot * v[j]
        h[k + 1, k] = alpha
        for i in range(k + 2, n):
            h[i, k] = 0.0
    return h


@njit(cache=True)
def hqr(h, max_its):
    """Francis double-shift QR on an upper Hessenberg matrix.

    Returns ``(wr, wi, ok)``: real and imaginary parts of all eigenvalues and
    a convergence flag. Indices run from 1 internally.
    """
    n = h.shape[0]
    a = np.zeros((n + 1, n + 1))
    for i in range(n):
        for j in range(n):
            a[i + 1, j + 1] = h[i, j]
    wr = np.zeros(n + 1)
    wi = np.zeros(n + 1)

    anorm = 0.0
    for i in range(1, n + 1):
        for j in range(max(i - 1, 1), n + 1):
            anorm += abs(a[i, j])

    nn = n
    t = 0.0
    p = q = r = s = w = x = y = z = 0.0
    while nn >= 1:
        its = 0
        while True:
            l = 1
            for ll in range(nn, 1, -1):
                s = abs(a[ll - 1, ll - 1]) + abs(a[ll, ll])
                if s == 0.0:
                    s = anorm
                if abs(a[ll, ll - 1]) + s == s:
                    a[ll, ll - 1] = 0.0
                    l = ll
                    break
            x = a[nn, nn]
            if l == nn:
                wr[nn] = x + t
                wi[nn] = 0.0
                nn -= 1
            else:
                y = a[nn - 1, nn - 1]
                w = a[nn, nn - 1] * a[nn - 1, nn]
                if l == nn - 1:
                    p = 0.5 * (y - x)
                    q = p * p + w
                    z = math.sqrt(abs(q))
                    x += t
                    if q >= 0.0:
                        z = p + math.copysign(z, p)
                        wr[nn - 1] = x + z
                        wr[nn] = x + z
                        if z != 0.0:
                            wr[nn] = x - w / z
                        wi[nn - 1] = 0.0
                        wi[nn] = 0.0
                    else:
                        wr[nn - 1] = x + p
                        wr[nn] = x + p
                        wi[nn - 1] = -z
                        wi[nn] = z
                    nn -= 2
                else:
                    if its >= max_its:
                        return wr[1:], wi[1:], False
                    if its > 0 and its % 10 == 0:
                        t += x
                        for i in range(1, nn + 1):
                            a[i, i] -= x
                        s = abs(a[nn, nn - 1]) + abs(a[nn - 1, nn - 2])
                        x = 0.75 * s
                        y = x
                        w = -0.4375 * s * s
                    its += 1
                    m = nn - 2
                    while m >= l:
                        z = a[m, m]
                        r = x - z
                        s = y - z
                        p = (r * s - w) / a[m + 1, m] + a[m, m + 1]
                        q = a[m + 1, m + 1] - z - r - s
                        r = a[m + 2, m + 1]
                        s = abs(p) + abs(q) + abs(r)
                        p /= s
                        q /= s
                        r /= s
                        if m == l:
                            break
                        u = abs(a[m, m - 1]) * (abs(q) + abs(r))
                        v = abs(p) * (abs(a[m - 1, m - 1]) + abs(z) + abs(a[m + 1, m + 1]))
                        if u + v == v:
                            break
                        m -= 1
                    for i in range(m + 2, nn + 1):
                        a[i, i - 2] = 0.0
                        if i != m + 2:
                            a[i, i - 3] = 0.0
                    for k in range(m, nn):
                        if k != m:
                            p = a[k, k - 1]
                            q = a[k + 1, k - 1]
                            r = 0.0
                            if k != nn - 1:
                                r = a[k + 2, k - 1]
                            x = abs(p) + abs(q) + abs(r)
                            if x != 0.0:
                                p /= x
                                q /= x
                                r /= x
                        s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
                        if s != 0.0:
                            if k == m:
                                if l != m:
                                    a[k, k - 1] = -a[k, k - 1]
                            else:
                                a[k, k - 1] = -s * x
                            p += s
                            x = p / s
                            y = q / s
                            z = r / s
                            q /= p
                            r /= p
                            for j in range(k, nn + 1):
                                p = a[k, j] + q * a[k + 1, j]
                                if k != nn - 1:
                                    p += r * a[k + 2, j]
                                    a[k + 2, j] -= p * z
                                a[k + 1, j] -= p * y
                                a[k, j] -= p * x
                            mmin = nn if nn < k + 3 else k + 3
                            for i in range(l, mmin + 1):
                                p = x * a[i, k] + y * a[i, k + 1]
                                if k != nn - 1:
                                    p += z * a[i, k + 2]
                                    a[i, k + 2] -= p * r
                                a[i, k + 1] -= p * q
                                a[i, k] -= p
            if not l < nn - 1:
                break
    return wr[1:], wi[1:], True
