# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernel_py``; same data layout, same semantics.

Coefficients are ``(numerator, denominator)`` tuples of Python ints
(arbitrary precision), atoms are plain nested tuples; both compare and
hash without leaving C, so the loops below avoid interpreter frames
entirely.
"""

from math import gcd as _gcd

RAT_ONE = (1, 1)


cpdef tuple rat_make(object n, object d):
    """Reduced rational with positive denominator."""
    cdef object g
    if n == 0:
        return (0, 1)
    if d < 0:
        n = -n
        d = -d
    g = _gcd(n, d)
    if g > 1:
        n = n // g
        d = d // g
    return (n, d)


cpdef tuple rat_add(tuple a, tuple b):
    cdef object an = a[0], ad = a[1], bn = b[0], bd = b[1]
    if ad == 1 and bd == 1:
        return (an + bn, 1)
    return rat_make(an * bd + bn * ad, ad * bd)


cpdef tuple rat_sub(tuple a, tuple b):
    cdef object an = a[0], ad = a[1], bn = b[0], bd = b[1]
    if ad == 1 and bd == 1:
        return (an - bn, 1)
    return rat_make(an * bd - bn * ad, ad * bd)


cpdef tuple rat_neg(tuple a):
    return (-a[0], a[1])


cpdef tuple rat_mul(tuple a, tuple b):
    cdef object an = a[0], ad = a[1], bn = b[0], bd = b[1]
    if ad == 1 and bd == 1:
        return (an * bn, 1)
    return rat_make(an * bn, ad * bd)


cpdef tuple rat_inv(tuple a):
    cdef object n = a[0], d = a[1]
    if n < 0:
        return (-d, -n)
    return (d, n)


cpdef tuple monomial_mul(tuple m1, tuple m2):
    """Merge two sorted monomials, adding exponents of shared atoms."""
    cdef list out
    cdef Py_ssize_t i = 0, j = 0, n1, n2
    cdef tuple p1, p2
    cdef object a1, a2, e
    if not m1:
        return m2
    if not m2:
        return m1
    n1 = len(m1)
    n2 = len(m2)
    out = []
    while i < n1 and j < n2:
        p1 = <tuple>m1[i]
        p2 = <tuple>m2[j]
        a1 = p1[0]
        a2 = p2[0]
        if a1 == a2:
            e = p1[1] + p2[1]
            if e:
                out.append((a1, e))
            i += 1
            j += 1
        elif a1 < a2:
            out.append(p1)
            i += 1
        else:
            out.append(p2)
            j += 1
    while i < n1:
        out.append(m1[i])
        i += 1
    while j < n2:
        out.append(m2[j])
        j += 1
    return tuple(out)


cpdef dict poly_add(dict p, dict q):
    cdef dict r
    cdef object m
    cdef tuple c, v
    if not p:
        return dict(q)
    if not q:
        return dict(p)
    r = dict(p)
    for m, c in q.items():
        v = r.get(m)
        if v is None:
            r[m] = c
        else:
            v = rat_add(v, c)
            if v[0]:
                r[m] = v
            else:
                del r[m]
    return r


cpdef dict poly_neg(dict p):
    cdef dict r = {}
    cdef object m
    cdef tuple c
    for m, c in p.items():
        r[m] = (-c[0], c[1])
    return r


cpdef dict poly_sub(dict p, dict q):
    cdef dict r
    cdef object m
    cdef tuple c, v
    if not q:
        return dict(p)
    r = dict(p)
    for m, c in q.items():
        v = r.get(m)
        if v is None:
            r[m] = (-c[0], c[1])
        else:
            v = rat_sub(v, c)
            if v[0]:
                r[m] = v
            else:
                del r[m]
    return r


cpdef dict poly_scale(dict p, tuple c):
    cdef dict r = {}
    cdef object m
    cdef tuple v
    if not c[0]:
        return r
    if c == RAT_ONE:
        return dict(p)
    for m, v in p.items():
        r[m] = rat_mul(v, c)
    return r


cpdef dict poly_mul(dict p, dict q):
    cdef dict r = {}
    cdef list qitems
    cdef object m1, m2, m
    cdef tuple c1, c2, c, v, item
    cdef Py_ssize_t j, nq
    if not p or not q:
        return r
    if len(p) > len(q):
        p, q = q, p
    qitems = list(q.items())
    nq = len(qitems)
    for m1, c1 in p.items():
        for j in range(nq):
            item = <tuple>qitems[j]
            m2 = item[0]
            c2 = <tuple>item[1]
            m = monomial_mul(<tuple>m1, <tuple>m2)
            c = rat_mul(c1, c2)
            v = r.get(m)
            if v is None:
                r[m] = c
            else:
                v = rat_add(v, c)
                if v[0]:
                    r[m] = v
                else:
                    del r[m]
    return r
