# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-arithmetic kernel; same contract as ``_kernel_py``.

Coefficients stay exact Python Fractions; the speedup comes from C-level
loops over the term dicts and monomial tuples.
"""

IMPLEMENTATION = "cython"


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, la = len(a), lb = len(b)
    cdef tuple pa, pb
    if la == 0:
        return b
    if lb == 0:
        return a
    out = []
    while i < la and j < lb:
        pa = <tuple> a[i]
        pb = <tuple> b[j]
        if pa[0] == pb[0]:
            out.append((pa[0], pa[1] + pb[1]))
            i += 1
            j += 1
        elif pa[0] < pb[0]:
            out.append(pa)
            i += 1
        else:
            out.append(pb)
            j += 1
    while i < la:
        out.append(a[i])
        i += 1
    while j < lb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef dict terms_add(dict ta, dict tb):
    if not ta:
        return dict(tb)
    if not tb:
        return dict(ta)
    cdef dict out = dict(ta)
    for mono, coeff in tb.items():
        acc = out.get(mono)
        if acc is None:
            out[mono] = coeff
        else:
            acc = acc + coeff
            if acc:
                out[mono] = acc
            else:
                del out[mono]
    return out


cpdef dict terms_neg(dict ta):
    cdef dict out = {}
    for mono, coeff in ta.items():
        out[mono] = -coeff
    return out


cpdef dict terms_scale(dict ta, q):
    cdef dict out = {}
    if not q:
        return out
    for mono, coeff in ta.items():
        out[mono] = coeff * q
    return out


cpdef dict terms_mul(dict ta, dict tb):
    cdef dict out = {}
    cdef dict sa = ta, sb = tb
    if not ta or not tb:
        return out
    if len(ta) > len(tb):
        sa, sb = tb, ta
    for ma, ca in sa.items():
        for mb, cb in sb.items():
            mono = mono_mul(<tuple> ma, <tuple> mb)
            prod = ca * cb
            acc = out.get(mono)
            if acc is None:
                out[mono] = prod
            else:
                acc = acc + prod
                if acc:
                    out[mono] = acc
                else:
                    del out[mono]
    return out
